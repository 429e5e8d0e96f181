#include "nds/prop32.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "nds/error.hpp"

namespace nds {

namespace {

std::string fmt(const char* pattern, double a, double b, std::size_t n) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, n, a, b);
    return buf;
}

// First n where lhs(n) > rhs(n) + tol, as a witness string; empty when none.
template <class L, class R>
std::string first_excess(std::size_t from, std::size_t to, L lhs, R rhs, double tol, const char* what) {
    for (std::size_t n = from; n <= to; ++n) {
        double a = lhs(n);
        double b = rhs(n);
        if (a > b + tol) return fmt(what, a, b, n);
    }
    return {};
}

Prop32Item make(std::string item, std::string fail, std::string ok) {
    Prop32Item out{std::move(item), fail.empty(), {}};
    out.witness = fail.empty() ? std::move(ok) : std::move(fail);
    return out;
}

}  // namespace

PartitionSequence join_sequences(const PartitionSequence& p, const PartitionSequence& q) {
    if (p.space() != q.space()) throw ArgumentError("joined sequences live on different spaces");
    std::optional<std::size_t> bound;
    if (p.cardinality_bound() && q.cardinality_bound()) bound = *p.cardinality_bound() * *q.cardinality_bound();
    PartitionSequence out = [&] {
        if (p.is_periodic() && q.is_periodic()) {
            std::size_t start = std::max(p.prefix_length(), q.prefix_length()) + 1;
            std::size_t period = std::lcm(p.period(), q.period());
            std::vector<Partition> prefix;
            std::vector<Partition> tail;
            for (std::size_t n = 1; n < start; ++n) prefix.push_back(join(p.at(n), q.at(n)));
            for (std::size_t n = start; n < start + period; ++n) tail.push_back(join(p.at(n), q.at(n)));
            return PartitionSequence::periodic(std::move(prefix), std::move(tail));
        }
        std::size_t lim = 0;
        if (p.defined_up_to() != 0 && q.defined_up_to() != 0) lim = std::min(p.defined_up_to(), q.defined_up_to());
        else lim = std::max(p.defined_up_to(), q.defined_up_to());
        return PartitionSequence::programmatic(
            p.space(), p.name() + " v " + q.name(), [p, q](std::size_t n) { return join(p.at(n), q.at(n)); }, lim);
    }();
    return bound ? out.with_bound(*bound) : out;
}

bool Prop32Report::all_pass() const {
    for (const auto& i : items)
        if (!i.pass) return false;
    return true;
}

const Prop32Item& Prop32Report::get(const std::string& item) const {
    for (const auto& i : items)
        if (i.item == item) return i;
    throw ArgumentError("no item " + item);
}

Prop32Report verify_prop32(const MeasureSequence& mu, const PartitionSequence& p, const PartitionSequence& q,
                           std::size_t horizon, const Prop32Options& opts) {
    if (horizon < 2) throw ArgumentError("property checks need horizon >= 2");
    const double tol = opts.tolerance;
    const LogBase base = opts.trace.base;
    const auto& sys = mu.system();
    TraceOptions exact = opts.trace;
    exact.keep_masses = true;
    EntropyTrace tp = entropy_trace(mu, p, horizon, exact);
    EntropyTrace tq = entropy_trace(mu, q, horizon, opts.trace);
    PartitionSequence pq = join_sequences(p, q);
    EntropyTrace tpq = entropy_trace(mu, pq, horizon, opts.trace);
    Prop32Report r;

    {
        double sum = 0;
        std::vector<double> bound;
        for (std::size_t n = 1; n <= horizon; ++n) {
            sum += log_in(base, static_cast<double>(p.at(n).size()));
            bound.push_back(sum);
        }
        std::string fail = first_excess(1, horizon, [&](std::size_t n) { return -tp.at(n); },
                                        [](std::size_t) { return 0.0; }, tol, "n=%zu: -H_n = %.12g > %.12g");
        if (fail.empty())
            fail = first_excess(1, horizon, [&](std::size_t n) { return tp.at(n); },
                                [&](std::size_t n) { return bound[n - 1]; }, tol,
                                "n=%zu: H_n = %.12g exceeds sum log #P_i = %.12g");
        r.items.push_back(make("i", fail, fmt("n=%zu: H_n = %.12g, sum log #P_i = %.12g", tp.at(horizon),
                                              bound.back(), horizon)));
    }
    {
        std::string fail = first_excess(
            1, horizon, [&](std::size_t n) { return tpq.at(n); }, [&](std::size_t n) { return tp.at(n) + tq.at(n); },
            tol, "n=%zu: H_n(P v Q) = %.12g > H_n(P) + H_n(Q) = %.12g");
        r.items.push_back(make("ii", fail, fmt("n=%zu: %.12g <= %.12g", tpq.at(horizon),
                                               tp.at(horizon) + tq.at(horizon), horizon)));
    }
    {
        bool finer = check_coarser(p, q, horizon).holds;
        const EntropyTrace& big = finer ? tp : tpq;
        const EntropyTrace& small = finer ? tq : tp;
        std::string fail = first_excess(
            1, horizon, [&](std::size_t n) { return small.at(n); }, [&](std::size_t n) { return big.at(n); }, tol,
            "n=%zu: coarser trace %.12g above finer trace %.12g");
        std::string ok = std::string(finer ? "P finer than Q; " : "P not finer than Q, checked P v Q against P; ") +
                         fmt("n=%zu: %.12g >= %.12g", big.at(horizon), small.at(horizon), horizon);
        r.items.push_back(make("iii", fail, ok));
    }
    {
        std::string fail = first_excess(2, horizon, [&](std::size_t n) { return tp.at(n - 1); },
                                        [&](std::size_t n) { return tp.at(n); }, tol,
                                        "n=%zu: H_{n-1} = %.12g > H_n = %.12g");
        const std::size_t k = opts.multiple;
        const std::size_t hk = horizon / k;
        double worst = 0;
        if (fail.empty() && hk >= 1) {
            auto refined = refine_sequence(p, sys, k, opts.trace.cap_cells).decimated(k);
            auto tk = entropy_trace(mu.power(k), refined, hk, opts.trace);
            for (std::size_t n = 1; n <= hk; ++n) {
                double d = std::abs(tk.at(n) - tp.at(n * k));
                if (d > worst) worst = d;
                if (d > tol && fail.empty())
                    fail = fmt("n=%zu: power-system trace %.12g differs from H_nk = %.12g", tk.at(n), tp.at(n * k), n);
            }
        }
        char ok[160];
        std::snprintf(ok, sizeof ok, "monotone; k=%zu, n<=%zu: max |H^k_n - H_nk| = %.3g", k, hk, worst);
        r.items.push_back(make("iv", fail, ok));
    }
    {
        const std::size_t m = opts.refine;
        std::string fail;
        std::size_t checked = 0;
        if (horizon >= m) {
            std::size_t h = horizon - m + 1;
            auto refined = refine_sequence(p, sys, m, opts.trace.cap_cells);
            auto tr = entropy_trace(mu, refined, h, exact);
            for (std::size_t n = 1; n <= h && fail.empty(); ++n, ++checked)
                if (tr.masses[n - 1] != tp.masses[n + m - 2])
                    fail = fmt("n=%zu: refined masses differ (H %.12g vs %.12g)", tr.at(n), tp.at(n + m - 1), n);
        }
        char ok[120];
        std::snprintf(ok, sizeof ok, "m=%zu: cell masses equal for n<=%zu", m, checked);
        r.items.push_back(make("v", fail, ok));
    }
    {
        std::vector<double> slack;
        double sum = 0;
        for (std::size_t n = 1; n <= horizon; ++n) {
            sum += conditional_entropy(mu.at(n), p.at(n), q.at(n), base);
            slack.push_back(sum);
        }
        std::string fail = first_excess(
            1, horizon, [&](std::size_t n) { return tp.at(n); },
            [&](std::size_t n) { return tq.at(n) + slack[n - 1]; }, tol,
            "n=%zu: H_n(P) = %.12g > H_n(Q) + sum H(P_i|Q_i) = %.12g");
        r.items.push_back(make("vi", fail, fmt("n=%zu: %.12g <= %.12g", tp.at(horizon),
                                               tq.at(horizon) + slack.back(), horizon)));
    }
    {
        const std::size_t k = opts.shift;
        auto tk = k == 1 ? tp : entropy_trace(mu.shifted(k), p.shifted(k), horizon, opts.trace);
        auto tk1 = entropy_trace(mu.shifted(k + 1), p.shifted(k + 1), horizon - 1, opts.trace);
        double hk = partition_entropy(mu.at(k), p.at(k), base);
        std::string fail = first_excess(2, horizon, [&](std::size_t n) { return tk1.at(n - 1); },
                                        [&](std::size_t n) { return tk.at(n); }, tol,
                                        "n=%zu: H^(k+1)_{n-1} = %.12g > H^(k)_n = %.12g");
        if (fail.empty())
            fail = first_excess(2, horizon, [&](std::size_t n) { return tk.at(n); },
                                [&](std::size_t n) { return hk + tk1.at(n - 1); }, tol,
                                "n=%zu: H^(k)_n = %.12g > H(P_k) + H^(k+1)_{n-1} = %.12g");
        r.items.push_back(make("vii", fail, fmt("n=%zu: %.12g <= %.12g", tk.at(horizon), hk + tk1.at(horizon - 1),
                                                horizon)));
    }
    return r;
}

}  // namespace nds
