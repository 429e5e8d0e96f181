#include <cmath>

#include "nds/misiurewicz.hpp"
#include "nds/verify.hpp"

namespace nds {

TheoremReport verify_variational_inequality(const MeasureSequence& mu, const std::vector<PartitionSequence>& family,
                                            const VariationalOptions& opts) {
    TheoremReport r;
    r.theorem = "variational-inequality";
    r.at("certificate_epsilon", opts.certificate_epsilon.str());
    r.at("metric_horizon", std::to_string(opts.metric_horizon));
    r.at("topological_horizon", std::to_string(opts.topological.horizon));
    r.at("grid", opts.topological.resolution.str());
    std::string eps;
    for (const auto& e : opts.topological.epsilons) eps += (eps.empty() ? "" : " ") + e.str();
    r.at("epsilons", eps);

    std::vector<PartitionSequence> certified;
    std::vector<Rational> deltas;
    for (std::size_t i = 0; i < family.size(); ++i) {
        auto c = misiurewicz_check(family[i], mu, opts.certificate_epsilon, opts.metric_horizon);
        if (!c.ok()) {
            r.notes.push_back("member " + std::to_string(i) + " (" + family[i].name() +
                              ") excluded: " + c.failure->reason);
            continue;
        }
        certified.push_back(family[i]);
        deltas.push_back(c.certificate->delta);
    }
    double metric = 0;
    std::vector<double> member_h;
    if (!certified.empty()) {
        auto fe = metric_entropy_estimate(mu, certified, opts.metric_horizon);
        metric = fe.value;
        for (const auto& m : fe.members) member_h.push_back(m.estimate);
    } else {
        r.notes.push_back("no member certified; metric side is 0");
    }
    OrbitGrid grid(mu.system(), opts.topological.resolution, opts.topological.horizon);
    double top = topological_entropy_estimate(grid, opts.topological).value;
    r.check_le("h_metric <= h_top", metric, top, opts.slack).detail = "slack " + fmt_double(opts.slack);
    r.artifact("h_metric", fmt_double(metric));
    r.artifact("h_top", fmt_double(top));

    // the proof's bound H_m ≤ log(2^m r_sep(m, δ/2)) as a cross-check column
    const std::size_t m = opts.topological.horizon;
    for (std::size_t i = 0; i < certified.size(); ++i) {
        std::string key = "member_" + std::to_string(i);
        Rational half = deltas[i] / 2;
        r.artifact(key + "_delta", deltas[i].str());
        r.artifact(key + "_h", fmt_double(member_h[i]));
        if (!(grid.resolution() * 4 < half)) {
            r.artifact(key + "_sep_bound", "grid too coarse for delta/2");
            continue;
        }
        auto sep = separated_count(grid, m, half);
        double bound = (static_cast<double>(m) * std::log(2.0) + std::log(static_cast<double>(sep.count))) /
                       static_cast<double>(m);
        r.artifact(key + "_rsep", std::to_string(sep.count));
        r.artifact(key + "_sep_bound_rate", fmt_double(bound));
    }
    return r;
}

TheoremReport verify_topological_power_rule(const SystemSequence& sys, std::size_t k, const TopologicalOptions& opts,
                                            double tolerance) {
    TheoremReport r;
    r.theorem = "topological-power-rule";
    r.at("k", std::to_string(k));
    r.at("horizon", std::to_string(opts.horizon));
    r.at("grid", opts.resolution.str());
    double base = topological_entropy_estimate(sys, opts).value;
    double pk = topological_entropy_estimate(power_system(sys, k), opts).value;
    r.check_eq("est(f^[k]) = k est(f)", pk, static_cast<double>(k) * base, tolerance);
    r.artifact("estimate_base", fmt_double(base));
    r.artifact("estimate_power", fmt_double(pk));
    return r;
}

}  // namespace nds
