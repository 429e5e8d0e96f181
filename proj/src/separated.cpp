#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "nds/error.hpp"
#include "nds/kernels.hpp"
#include "nds/topological.hpp"

namespace nds {

namespace {

GridCount greedy(const OrbitGrid& grid, std::size_t n, const Rational& epsilon, std::size_t limit) {
    if (n == 0 || n > grid.steps()) throw ArgumentError("n must be in 1..grid steps");
    if (epsilon.sign() <= 0) throw ArgumentError("epsilon must be positive");
    if (!(grid.resolution() * 4 < epsilon)) throw ArgumentError("grid resolution must be below epsilon/4");
    const std::int64_t D = grid.denominator();
    const std::int64_t eps = floor(epsilon * D).num();
    const bool circle = grid.space() == SpaceKind::Circle;
    const std::int64_t period = circle ? D : 0;
    const AnyWithinFn near = active_kernel().fn;

    std::vector<std::vector<std::int64_t>> rows(n);
    std::vector<const std::int64_t*> ptrs(n);
    std::vector<std::int64_t> cand(n);
    GridCount out;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const std::int64_t* c = grid.lattice(j);
        std::copy(c, c + n, cand.begin());
        for (std::size_t i = 0; i < n; ++i) ptrs[i] = rows[i].data();
        LatticeRows acc{ptrs.data(), n};
        const auto& first = rows[0];
        // step 0 is the point itself and members are sorted by it
        std::size_t lo = static_cast<std::size_t>(std::lower_bound(first.begin(), first.end(), c[0] - eps) - first.begin());
        bool hit = near(acc, lo, first.size(), cand.data(), eps, period);
        if (!hit && circle && c[0] + eps > D) {
            std::size_t hi = static_cast<std::size_t>(
                std::upper_bound(first.begin(), first.end(), c[0] + eps - D) - first.begin());
            hit = near(acc, 0, std::min(hi, lo), cand.data(), eps, period);
        }
        if (hit) continue;
        for (std::size_t i = 0; i < n; ++i) rows[i].push_back(c[i]);
        out.witness.push_back(j);
        if (limit != 0 && out.witness.size() > limit) {
            out.truncated = true;
            break;
        }
    }
    out.count = out.witness.size();
    return out;
}

struct Job {
    std::size_t e;
    std::size_t n;
};

}  // namespace

GridCount separated_count(const OrbitGrid& grid, std::size_t n, const Rational& epsilon, std::size_t limit) {
    return greedy(grid, n, epsilon, limit);
}

GridCount spanning_count(const OrbitGrid& grid, std::size_t n, const Rational& epsilon, std::size_t limit) {
    // an uncovered point is one with no center within ε: the separation test again
    return greedy(grid, n, epsilon, limit);
}

std::string TopologicalEstimate::csv() const {
    std::string out = "epsilon,n,count,log_count_over_n,resolved\n";
    char buf[64];
    for (const auto& c : table) {
        std::snprintf(buf, sizeof buf, "%.12g", c.log_count_per_n);
        out += c.epsilon.str() + "," + std::to_string(c.n) + "," + std::to_string(c.count) + "," + buf + "," +
               (c.resolved ? "1" : "0") + "\n";
    }
    return out;
}

TopologicalEstimate topological_entropy_estimate(const SystemSequence& sys, const TopologicalOptions& opts) {
    return topological_entropy_estimate(OrbitGrid(sys, opts.resolution, opts.horizon), opts);
}

TopologicalEstimate topological_entropy_estimate(const OrbitGrid& grid, const TopologicalOptions& opts) {
    if (opts.epsilons.empty()) throw ArgumentError("epsilon schedule is empty");
    for (std::size_t e = 1; e < opts.epsilons.size(); ++e)
        if (!(opts.epsilons[e] < opts.epsilons[e - 1])) throw ArgumentError("epsilon schedule must decrease");
    if (opts.horizon == 0 || opts.horizon > grid.steps()) throw ArgumentError("horizon must be in 1..grid steps");
    if (opts.resolve_factor == 0) throw ArgumentError("resolve factor must be positive");
    const std::size_t limit = grid.size() / opts.resolve_factor;
    const std::size_t E = opts.epsilons.size();
    const std::size_t N = opts.horizon;

    std::vector<Job> jobs;
    for (std::size_t e = 0; e < E; ++e)
        for (std::size_t n = 1; n <= N; ++n) jobs.push_back({e, n});
    std::vector<GridCount> counts(jobs.size());
    auto work = [&](std::size_t start, std::size_t stride) {
        for (std::size_t j = start; j < jobs.size(); j += stride)
            counts[j] = separated_count(grid, jobs[j].n, opts.epsilons[jobs[j].e], limit);
    };
    unsigned threads = std::max(1u, opts.threads);
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    }

    TopologicalEstimate out;
    for (std::size_t e = 0; e < E; ++e) {
        std::size_t resolved = 0;
        for (std::size_t n = 1; n <= N; ++n) {
            const GridCount& g = counts[e * N + n - 1];
            TopologicalCell cell;
            cell.epsilon = opts.epsilons[e];
            cell.n = n;
            cell.count = g.count;
            cell.log_count_per_n = log_in(opts.base, static_cast<double>(g.count)) / static_cast<double>(n);
            cell.resolved = !g.truncated && resolved == n - 1;
            if (cell.resolved) resolved = n;
            out.table.push_back(cell);
        }
        double rate = 0;
        if (resolved >= 2) {
            std::size_t w = opts.window == 0 ? (resolved + 1) / 2 : opts.window;
            std::size_t first = resolved >= w + 1 ? resolved - w + 1 : 2;
            first = std::max<std::size_t>(first, 2);
            double c1 = static_cast<double>(counts[e * N].count);
            rate = -1e300;
            for (std::size_t n = first; n <= resolved; ++n) {
                double cn = static_cast<double>(counts[e * N + n - 1].count);
                rate = std::max(rate, log_in(opts.base, cn / c1) / static_cast<double>(n - 1));
            }
        }
        out.per_epsilon.push_back(rate);
        out.resolved_horizon.push_back(resolved);
    }
    out.value = *std::max_element(out.per_epsilon.begin(), out.per_epsilon.end());
    return out;
}

GridStability grid_stability(const SystemSequence& sys, const TopologicalOptions& opts) {
    auto coarse = topological_entropy_estimate(sys, opts);
    TopologicalOptions fine_opts = opts;
    fine_opts.resolution = opts.resolution / 2;
    // same absolute resolution threshold on both grids
    fine_opts.resolve_factor = opts.resolve_factor * 2;
    auto fine = topological_entropy_estimate(sys, fine_opts);
    GridStability out;
    for (std::size_t j = 0; j < coarse.table.size(); ++j) {
        const auto& a = coarse.table[j];
        const auto& b = fine.table[j];
        if (!a.resolved || !b.resolved) continue;
        ++out.compared;
        double rel = std::abs(static_cast<double>(b.count) - static_cast<double>(a.count)) / static_cast<double>(a.count);
        out.max_relative_change = std::max(out.max_relative_change, rel);
    }
    return out;
}

}  // namespace nds
