#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nds/system.hpp"

namespace nds {

// ϱ_{k,n}(x, y) = max_{i<n} ϱ(f_k^i x, f_k^i y)
Rational bowen_distance(const SystemSequence& sys, const Rational& x, const Rational& y, std::size_t n,
                        std::size_t k = 1);

// Grid points {0, h, 2h, ...} (1 included on the interval) with their exact
// orbit prefixes under f_1^i, i < steps, and the same orbits on an integer
// lattice of common denominator `denominator()`.
class OrbitGrid {
public:
    OrbitGrid(const SystemSequence& sys, const Rational& resolution, std::size_t steps);

    [[nodiscard]] SpaceKind space() const { return space_; }
    [[nodiscard]] const Rational& resolution() const { return resolution_; }
    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] std::size_t steps() const { return steps_; }
    [[nodiscard]] const Rational& point(std::size_t j) const { return points_[j]; }
    // f_1^i of point j
    [[nodiscard]] const Rational& orbit(std::size_t j, std::size_t i) const { return orbits_[j * steps_ + i]; }
    [[nodiscard]] std::int64_t denominator() const { return den_; }
    // lattice coordinates of point j, steps() entries
    [[nodiscard]] const std::int64_t* lattice(std::size_t j) const { return lattice_.data() + j * steps_; }

private:
    SpaceKind space_;
    Rational resolution_;
    std::size_t steps_;
    std::vector<Rational> points_;
    std::vector<Rational> orbits_;
    std::int64_t den_ = 1;
    std::vector<std::int64_t> lattice_;
};

struct GridCount {
    std::size_t count = 0;
    std::vector<std::size_t> witness;  // grid indices, left to right
    // stopped once count exceeded the limit; count is then a lower bound
    bool truncated = false;
};

// Greedy maximal (n, ε)-separated subset of the grid in left-to-right order:
// a point joins iff its Bowen distance to every member exceeds ε. The count
// bounds r_sep(n, ε) from below. limit = 0 means no limit. Needs h < ε/4.
GridCount separated_count(const OrbitGrid& grid, std::size_t n, const Rational& epsilon, std::size_t limit = 0);
// Greedy (n, ε)-spanning subset of the grid: an uncovered point becomes a
// center. With the fixed order it selects the same points as separated_count.
GridCount spanning_count(const OrbitGrid& grid, std::size_t n, const Rational& epsilon, std::size_t limit = 0);

struct TopologicalOptions {
    std::vector<Rational> epsilons;  // decreasing
    std::size_t horizon = 10;
    Rational resolution = Rational(1, 1 << 14);
    std::size_t window = 0;           // trailing window over resolved n; 0 = half
    std::size_t resolve_factor = 16;  // n resolved while count · factor ≤ #grid
    unsigned threads = 1;
    LogBase base = LogBase::E;
};

struct TopologicalCell {
    Rational epsilon;
    std::size_t n = 0;
    std::size_t count = 0;
    double log_count_per_n = 0;
    bool resolved = false;
};

struct TopologicalEstimate {
    double value = 0;                 // max over ε
    std::vector<double> per_epsilon;  // rate per ε
    std::vector<std::size_t> resolved_horizon;  // largest resolved n per ε
    std::vector<TopologicalCell> table;         // ε-major, n = 1..horizon
    [[nodiscard]] std::string csv() const;      // epsilon,n,count,log_count_over_n,resolved
};

// For each ε the rate is the trailing-window max of log(c_n / c_1)/(n - 1)
// over resolved n; the estimate is the max over ε.
TopologicalEstimate topological_entropy_estimate(const SystemSequence& sys, const TopologicalOptions& opts);
TopologicalEstimate topological_entropy_estimate(const OrbitGrid& grid, const TopologicalOptions& opts);

struct GridStability {
    double max_relative_change = 0;
    std::size_t compared = 0;  // cells resolved on both grids
};

// Separated counts on the grid with step h against step h/2.
GridStability grid_stability(const SystemSequence& sys, const TopologicalOptions& opts);

}  // namespace nds
