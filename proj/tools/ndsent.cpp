// ndsent: entropy estimators and theorem checks for nonautonomous PWL systems.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nds/config.hpp"
#include "nds/error.hpp"
#include "nds/metric_entropy.hpp"
#include "nds/misiurewicz.hpp"
#include "nds/suites.hpp"

namespace {

using namespace nds;

struct Flags {
    std::string config;
    std::optional<std::size_t> horizon;
    std::optional<std::size_t> window;
    std::optional<std::size_t> cap_cells;
    std::optional<std::size_t> k;
    std::optional<std::size_t> steps;
    std::optional<unsigned> threads;
    std::string eps;
    std::string grid;
    std::string log_base;
    std::string out;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "run configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--horizon", f.horizon, "largest n");
    cmd->add_option("--window", f.window, "trailing estimator window (0 = half the horizon)");
    cmd->add_option("--cap-cells", f.cap_cells, "join cell cap");
    cmd->add_option("--eps", f.eps, "epsilon list, comma separated rationals");
    cmd->add_option("--grid", f.grid, "orbit grid spacing (rational)");
    cmd->add_option("--log-base", f.log_base, "e or 2")->check(CLI::IsMember({"e", "2"}));
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
}

Rational flag_rational(const std::string& what, const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw ParseError(0, what + ": not a rational number: '" + text + "'");
    }
}

RunConfig resolve(const Flags& f) {
    RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
    if (f.horizon) c.horizon = *f.horizon;
    if (f.window) c.window = *f.window;
    if (f.cap_cells) c.cap_cells = *f.cap_cells;
    if (f.k) c.k = *f.k;
    if (f.steps) c.steps = *f.steps;
    if (f.threads) c.threads = *f.threads;
    if (!f.eps.empty()) {
        c.eps.clear();
        std::stringstream ss(f.eps);
        for (std::string item; std::getline(ss, item, ',');) c.eps.push_back(flag_rational("--eps", item));
    }
    if (!f.grid.empty()) c.grid = flag_rational("--grid", f.grid);
    if (!f.log_base.empty()) c.base = f.log_base == "2" ? LogBase::Two : LogBase::E;
    if (!f.out.empty()) c.out = f.out;
    if (c.horizon == 0) throw ArgumentError("horizon must be at least 1");
    return c;
}

// Writes to <out>/<name> when an output directory is set, else to stdout.
void emit(const RunConfig& c, const std::string& name, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(c.out);
    std::ofstream f(std::filesystem::path(c.out) / name, std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + name + " in " + c.out);
}

int cmd_metric(const RunConfig& c) {
    auto built = build_system(c, c.horizon);
    auto family = build_family(c, built.measures);
    if (c.axiom_check) {
        for (const auto& p : family) {
            // without a declared bound, #P_1 stands in for it
            std::optional<std::size_t> bound;
            if (!p.cardinality_bound()) bound = p.at(1).size();
            auto a = check_axiom_A(p, c.horizon, bound);
            if (!a.holds) {
                std::cout << "refused: axiom A violated at n=" << *a.first_violation << " (" << p.name() << ": "
                          << p.at(*a.first_violation).size() << " cells, bound " << a.bound << ")\n";
                return 1;
            }
        }
    }
    TraceOptions t;
    t.base = c.base;
    t.cap_cells = c.cap_cells;
    std::string csv = "member,n,H_n,H_n_over_n\n";
    std::string summary;
    double best = 0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
        auto trace = entropy_trace(built.measures, family[i], c.horizon, t);
        for (std::size_t n = 1; n <= trace.horizon(); ++n)
            csv += std::to_string(i) + "," + std::to_string(n) + "," + fmt_double(trace.at(n)) + "," +
                   fmt_double(trace.at(n) / static_cast<double>(n)) + "\n";
        auto e = estimate_limsup(trace, c.window);
        summary += "member " + std::to_string(i) + " (" + family[i].name() + "): estimate " + fmt_double(e.estimate) +
                   ", window n = " + std::to_string(e.first) + ".." + std::to_string(e.last) + "\n";
        if (i == 0 || e.estimate > best) {
            best = e.estimate;
            best_i = i;
        }
    }
    summary += "estimate = " + fmt_double(best) + " (member " + std::to_string(best_i) + ")\n";
    emit(c, "metric.csv", csv);
    std::cout << summary;
    if (!c.out.empty()) emit(c, "metric_summary.txt", summary);
    return 0;
}

TopologicalOptions topological_options(const RunConfig& c) {
    TopologicalOptions o;
    o.epsilons = c.eps;
    o.horizon = c.horizon;
    o.resolution = c.grid;
    o.window = c.window;
    o.threads = c.threads;
    o.base = c.base;
    return o;
}

int cmd_topological(const RunConfig& c) {
    auto built = build_system(c, 1);
    auto opts = topological_options(c);
    auto est = topological_entropy_estimate(built.system, opts);
    std::string summary;
    for (std::size_t i = 0; i < c.eps.size(); ++i)
        summary += "eps " + c.eps[i].str() + ": rate " + fmt_double(est.per_epsilon[i]) + ", resolved n <= " +
                   std::to_string(est.resolved_horizon[i]) + "\n";
    summary += "estimate = " + fmt_double(est.value) + "\n";
    emit(c, "topological.csv", est.csv());
    if (c.shift > 1) {
        auto shifted = topological_entropy_estimate(shift_system(built.system, c.shift), opts);
        summary += "shifted k = " + std::to_string(c.shift) + ": estimate = " + fmt_double(shifted.value) + "\n";
        if (!c.out.empty()) emit(c, "topological_shifted.csv", shifted.csv());
    }
    std::cout << summary;
    if (!c.out.empty()) emit(c, "topological_summary.txt", summary);
    return 0;
}

int cmd_verify(const std::string& suite, const RunConfig& c, bool k_given) {
    SuiteOptions o;
    if (k_given) o.k = c.k;
    o.threads = c.threads;
    auto reports = run_suite(suite, o);
    bool all = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::cout << reports[i].summary() << "\n";
        all = all && reports[i].pass();
        if (!c.out.empty()) {
            char name[96];
            std::snprintf(name, sizeof name, "%02zu-%s.json", i + 1, reports[i].theorem.c_str());
            emit(c, name, reports[i].json() + "\n");
        }
    }
    std::cout << (all ? "all " : "not all ") << reports.size() << " reports pass\n";
    return all ? 0 : 1;
}

int cmd_misiurewicz(const RunConfig& c, bool eps_given) {
    auto built = build_system(c, c.horizon);
    auto p = build_partition_sequence(c, built.measures);
    Rational eps = eps_given ? c.eps.front() : c.certificate_eps;
    auto r = misiurewicz_check(p, built.measures, eps, c.horizon);
    if (!r.ok()) {
        std::cout << "no certificate: n=" << r.failure->n << " cell=" << r.failure->cell << ": " << r.failure->reason
                  << "\n";
        return 1;
    }
    emit(c, "certificate.json", r.certificate->json() + "\n");
    std::cout << "certified: epsilon " << eps.str() << ", margin " << r.certificate->margin.str() << ", delta "
              << r.certificate->delta.str() << (r.certificate->exact ? ", all n" : ", n <= horizon") << "\n";
    return 0;
}

int cmd_pf(const RunConfig& c, bool eps_given) {
    if (!c.maps.prefix.empty() || c.maps.tail.size() != 1)
        throw ArgumentError("pf iterate needs a single constant map");
    auto f = build_map(c.space, c.maps.tail.front());
    Density phi = build_density(c);
    PfOptions o;
    o.steps = c.steps;
    if (eps_given) o.epsilon = c.eps.front();
    auto report = verify_pf_stabilization(f, phi, o);
    Density uniform = Density::uniform(c.space);
    std::string csv = "step,l1_to_uniform,circle_variation\n";
    for (std::size_t t = 0; t <= c.steps; ++t) {
        csv += std::to_string(t) + "," + phi.l1_distance(uniform).str() + "," + phi.circle_variation().str() + "\n";
        if (t < c.steps) phi = transfer_density(f, phi);
    }
    emit(c, "pf.csv", csv);
    if (!c.out.empty()) emit(c, "pf_report.json", report.json() + "\n");
    std::cout << report.summary() << "\n";
    return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy estimators and theorem checks for nonautonomous piecewise-linear systems"};
    app.require_subcommand(1);
    Flags f;

    auto* entropy = app.add_subcommand("entropy", "entropy estimates");
    entropy->require_subcommand(1);
    auto* metric = entropy->add_subcommand("metric", "metric entropy of the configured partition family");
    auto* topo = entropy->add_subcommand("topological", "topological entropy from separated sets");
    add_flags(metric, f);
    add_flags(topo, f);

    std::string suite;
    auto* verify = app.add_subcommand("verify", "theorem suites at their default operating points");
    verify->add_option("suite", suite, "suite name or all")->required();
    add_flags(verify, f);
    verify->add_option("--k", f.k, "power for the power-rule suites")->check(CLI::PositiveNumber);

    auto* mis = app.add_subcommand("misiurewicz", "Misiurewicz certificates");
    mis->require_subcommand(1);
    auto* check = mis->add_subcommand("check", "certify the configured partition sequence");
    add_flags(check, f);

    auto* pf = app.add_subcommand("pf", "transfer operator iteration");
    pf->require_subcommand(1);
    auto* iterate = pf->add_subcommand("iterate", "iterate the transfer operator on the configured density");
    add_flags(iterate, f);
    iterate->add_option("--steps", f.steps, "number of steps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig c = resolve(f);
        if (metric->parsed()) return cmd_metric(c);
        if (topo->parsed()) return cmd_topological(c);
        if (verify->parsed()) return cmd_verify(suite, c, f.k.has_value());
        if (check->parsed()) return cmd_misiurewicz(c, !f.eps.empty());
        if (iterate->parsed()) return cmd_pf(c, !f.eps.empty());
    } catch (const nds::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const nds::ArgumentError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
