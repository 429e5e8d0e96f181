#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nds/system.hpp"

namespace nds {

// (a, b) as a relatively open subset: clipped on the interval, wrapped on the
// circle; length ≥ 1 on the circle gives the whole space.
IntervalSet open_arc(SpaceKind space, const Rational& a, const Rational& b);

// Finite cover of the space by interval unions (base covers use single
// relatively open intervals or arcs; refined covers use unions).
class IntervalCover {
public:
    // Throws DomainError unless the members are nonempty and cover the space.
    IntervalCover(SpaceKind space, std::vector<IntervalSet> members);

    [[nodiscard]] SpaceKind space() const { return space_; }
    [[nodiscard]] std::span<const IntervalSet> members() const { return members_; }
    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] std::string str() const;
    friend bool operator==(const IntervalCover&, const IntervalCover&) = default;

private:
    SpaceKind space_;
    std::vector<IntervalSet> members_;
};

// min over x of max over members U of dist(x, space \ U): the largest ε such
// that every open ε-ball lies in a member. A cover containing the whole space
// has no finite maximum; the space diameter (1, or 1/2 on the circle) is
// returned instead.
Rational lebesgue_number(const IntervalCover& cover);

// n ↦ U_n as a prefix and a periodic tail, with a declared lower bound on the
// Lebesgue numbers that is checked against every stored cover.
class CoverSequence {
public:
    static CoverSequence constant(IntervalCover u, std::optional<Rational> bound = std::nullopt);
    // bound defaults to the smallest computed Lebesgue number; a declared
    // bound above it throws CertificateError.
    static CoverSequence periodic(std::vector<IntervalCover> prefix, std::vector<IntervalCover> tail,
                                  std::optional<Rational> bound = std::nullopt);

    [[nodiscard]] const IntervalCover& at(std::size_t n) const;
    [[nodiscard]] SpaceKind space() const { return tail_.front().space(); }
    [[nodiscard]] const Rational& lebesgue_bound() const { return bound_; }
    [[nodiscard]] std::size_t prefix_length() const { return prefix_.size(); }
    [[nodiscard]] std::size_t period() const { return tail_.size(); }
    // smallest exact Lebesgue number over the stored covers
    [[nodiscard]] const Rational& computed_minimum() const { return computed_; }

private:
    std::vector<IntervalCover> prefix_;
    std::vector<IntervalCover> tail_;
    Rational bound_;
    Rational computed_;
};

// Nonempty members of ⋁_{i<m} (f_k^i)^{-1} U_{k+i}, deduplicated.
IntervalCover bowen_join_cover(const SystemSequence& sys, const CoverSequence& u, std::size_t k, std::size_t m,
                               std::size_t cap_members = 100'000);

// V_n = ⋁_{i<m} (f_n^i)^{-1} U_{n+i} with declared bound ε / L^{m-1}, where ε
// is the input bound and L the system's Lipschitz bound. Needs continuous
// maps (UnsupportedError otherwise).
CoverSequence refine_cover_sequence(const SystemSequence& sys, const CoverSequence& u, std::size_t m,
                                    std::size_t cap_members = 100'000);

std::vector<Rational> grid_points(SpaceKind space, const Rational& resolution);

struct SubcoverCount {
    std::size_t lower = 0;
    std::size_t upper = 0;
    bool exact = false;  // lower == upper from branch and bound
};

// Fewest members covering the given points. Exact branch and bound up to
// exact_cap members; otherwise a greedy cover (upper) and a set of points
// with pairwise disjoint member sets (lower).
SubcoverCount minimal_subcover_count(const IntervalCover& cover, std::span<const Rational> points,
                                     std::size_t exact_cap = 24);

struct CoverEstimate {
    double value = 0;  // trailing-window max of log(N_n / N_1)/(n - 1), N_n the upper count
    std::vector<SubcoverCount> counts;  // n = 1..horizon
    std::vector<std::size_t> members;   // members of the n-fold join
    [[nodiscard]] std::string csv() const;  // n,members,lower,upper,exact,log_upper_over_n
};

CoverEstimate cover_entropy_estimate(const SystemSequence& sys, const CoverSequence& u, std::size_t horizon,
                                     const Rational& resolution, std::size_t window = 0, LogBase base = LogBase::E,
                                     std::size_t exact_cap = 24);

}  // namespace nds
