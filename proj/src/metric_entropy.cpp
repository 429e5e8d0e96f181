#include "nds/metric_entropy.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "nds/error.hpp"

namespace nds {

namespace {

std::string g12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double ls_slope(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 2) return 0;
    double mx = 0;
    double my = 0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0;
    double sxx = 0;
    for (const auto& [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxy / sxx;
}

// Shared estimator over sampled points (t_j, H at t_j), j = 1..m, t_1 the base.
LimsupEstimate estimate_on(const std::vector<std::pair<std::size_t, double>>& samples, std::size_t window) {
    if (samples.empty()) throw ArgumentError("empty trace");
    std::size_t m = samples.size();
    if (window == 0) window = (m + 1) / 2;
    if (window > m) throw ArgumentError("window larger than the horizon");
    LimsupEstimate e;
    e.first = samples[m - window].first;
    e.last = samples.back().first;
    const auto& [t1, h1] = samples.front();
    std::vector<std::pair<double, double>> pts;
    bool any = false;
    e.estimate = 0;
    e.max_ratio = 0;
    for (std::size_t j = m - window; j < m; ++j) {
        const auto& [t, h] = samples[j];
        pts.emplace_back(static_cast<double>(t), h);
        e.max_ratio = std::max(e.max_ratio, h / static_cast<double>(t));
        if (t == t1) continue;
        double r = (h - h1) / static_cast<double>(t - t1);
        e.estimate = any ? std::max(e.estimate, r) : r;
        any = true;
    }
    if (!any) e.estimate = h1 / static_cast<double>(t1);
    e.slope = ls_slope(pts);
    return e;
}

}  // namespace

std::string EntropyTrace::csv() const {
    std::string out = "n,H_n,H_n/n\n";
    for (std::size_t n = 1; n <= h.size(); ++n)
        out += std::to_string(n) + "," + g12(h[n - 1]) + "," + g12(h[n - 1] / static_cast<double>(n)) + "\n";
    return out;
}

EntropyTrace entropy_trace(const MeasureSequence& mu, const PartitionSequence& p, std::size_t horizon,
                           const TraceOptions& opts) {
    if (horizon == 0) throw ArgumentError("trace horizon must be at least 1");
    EntropyTrace t;
    t.base = opts.base;
    const RationalMeasure& mu1 = mu.at(1);
    BowenRefiner r(mu.system(), p, 1, opts.cap_cells);
    for (std::size_t n = 1; n <= horizon; ++n) {
        if (n > 1) r.advance();
        auto m = r.masses(mu1);
        t.h.push_back(entropy_of_masses(m, opts.base));
        t.cells.push_back(r.cell_count());
        if (opts.keep_masses) {
            std::sort(m.begin(), m.end());
            t.masses.push_back(std::move(m));
        }
    }
    return t;
}

LimsupEstimate estimate_limsup(const EntropyTrace& trace, std::size_t window) {
    std::vector<std::pair<std::size_t, double>> s;
    for (std::size_t n = 1; n <= trace.horizon(); ++n) s.emplace_back(n, trace.at(n));
    return estimate_on(s, window);
}

LimsupEstimate estimate_limsup_multiples(const EntropyTrace& trace, std::size_t k, std::size_t window) {
    if (k == 0) throw ArgumentError("multiple must be positive");
    std::vector<std::pair<std::size_t, double>> s;
    for (std::size_t n = k; n <= trace.horizon(); n += k) s.emplace_back(n, trace.at(n));
    return estimate_on(s, window);
}

FamilyEstimate metric_entropy_estimate(const MeasureSequence& mu, const std::vector<PartitionSequence>& family,
                                       std::size_t horizon, std::size_t window, const TraceOptions& opts) {
    if (family.empty()) throw ArgumentError("empty partition family");
    FamilyEstimate out;
    for (std::size_t i = 0; i < family.size(); ++i) {
        auto e = estimate_limsup(entropy_trace(mu, family[i], horizon, opts), window);
        if (i == 0 || e.estimate > out.value) {
            out.value = e.estimate;
            out.argmax = i;
        }
        out.members.push_back(e);
    }
    return out;
}

PartitionSequence refine_sequence(const PartitionSequence& p, const SystemSequence& sys, std::size_t m,
                                  std::size_t cap_cells) {
    if (m == 0) throw ArgumentError("refinement depth must be at least 1");
    if (m == 1) return p;
    JoinOptions opts;
    opts.cap_cells = cap_cells;
    std::optional<std::size_t> bound;
    if (p.cardinality_bound()) {
        std::size_t b = 1;
        for (std::size_t i = 0; i < m; ++i) b *= *p.cardinality_bound();
        bound = b;
    }
    PartitionSequence out = [&] {
        if (p.is_periodic()) {
            // index n reads f_n..f_{n+m-2} and P_n..P_{n+m-1}
            std::size_t start = std::max(p.prefix_length(), sys.prefix_length()) + 1;
            std::size_t period = std::lcm(p.period(), sys.period());
            std::vector<Partition> prefix;
            std::vector<Partition> tail;
            for (std::size_t n = 1; n < start; ++n) prefix.push_back(bowen_join(sys, p, n, m, opts));
            for (std::size_t n = start; n < start + period; ++n) tail.push_back(bowen_join(sys, p, n, m, opts));
            return PartitionSequence::periodic(std::move(prefix), std::move(tail));
        }
        std::size_t lim = p.defined_up_to() == 0 ? 0 : (p.defined_up_to() >= m ? p.defined_up_to() - m + 1 : 0);
        if (p.defined_up_to() != 0 && lim == 0) throw ArgumentError("refinement past the materialized range");
        return PartitionSequence::programmatic(
            p.space(), p.name() + " refined " + std::to_string(m),
            [p, sys, m, opts](std::size_t n) { return bowen_join(sys, p, n, m, opts); }, lim);
    }();
    return bound ? out.with_bound(*bound) : out;
}

AxiomCheck check_axiom_A(const PartitionSequence& p, std::size_t horizon, std::optional<std::size_t> bound) {
    if (horizon == 0) throw ArgumentError("axiom check needs horizon >= 1");
    AxiomCheck out;
    if (!bound) bound = p.cardinality_bound();
    std::size_t seen = 0;
    for (std::size_t n = 1; n <= horizon; ++n) {
        std::size_t c = p.at(n).size();
        seen = std::max(seen, c);
        if (bound && c > *bound && out.holds) {
            out.holds = false;
            out.first_violation = n;
        }
    }
    out.bound = bound.value_or(seen);
    out.exact = p.is_periodic() && horizon >= p.prefix_length() + p.period();
    return out;
}

AxiomCheck check_coarser(const PartitionSequence& p, const PartitionSequence& q, std::size_t horizon) {
    if (horizon == 0) throw ArgumentError("coarser check needs horizon >= 1");
    AxiomCheck out;
    for (std::size_t n = 1; n <= horizon; ++n) {
        if (!is_finer(p.at(n), q.at(n))) {
            out.holds = false;
            out.first_violation = n;
            break;
        }
    }
    out.exact = p.is_periodic() && q.is_periodic() &&
                horizon >= std::max(p.prefix_length(), q.prefix_length()) + std::lcm(p.period(), q.period());
    return out;
}

}  // namespace nds
