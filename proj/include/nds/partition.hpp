#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nds/interval_set.hpp"
#include "nds/measure.hpp"

namespace nds {

enum class LogBase : std::uint8_t { E, Two };

// Finite partition of the space into interval-union cells. Cells are stored
// in order of their leftmost point, so equal partitions compare equal.
class Partition {
public:
    // Validates: nonempty cells, pairwise disjoint, union is the whole space.
    Partition(SpaceKind space, std::vector<IntervalSet> cells);

    static Partition trivial(SpaceKind space);
    static Partition uniform(SpaceKind space, std::int64_t k);  // k equal intervals
    // Cells [0,c1), [c1,c2), ..., [c_m, 1] (closed at 1 on the interval).
    static Partition from_cuts(SpaceKind space, std::vector<Rational> cuts);

    [[nodiscard]] SpaceKind space() const { return space_; }
    [[nodiscard]] std::size_t size() const { return cells_.size(); }
    [[nodiscard]] std::span<const IntervalSet> cells() const { return cells_; }
    [[nodiscard]] const IntervalSet& cell(std::size_t i) const { return cells_[i]; }
    [[nodiscard]] std::size_t cell_of(const Rational& x) const;
    [[nodiscard]] std::string str() const;

    // Segments of all cells in left-to-right order with their cell index;
    // they tile the space exactly.
    struct Tile {
        Segment seg;
        std::uint32_t cell;
    };
    [[nodiscard]] std::span<const Tile> tiles() const { return tiles_; }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.space_ == b.space_ && a.cells_ == b.cells_;
    }

    struct Trusted {};
    // Skips validation; cells are only sorted. For results of exact operations.
    Partition(Trusted, SpaceKind space, std::vector<IntervalSet> cells);

private:
    void index();
    SpaceKind space_;
    std::vector<IntervalSet> cells_;
    std::vector<Tile> tiles_;
};

std::vector<Rational> cell_masses(const RationalMeasure& mu, const Partition& p);

// -Σ m log m over exact masses. Equal masses are grouped and summed in sorted
// order with compensation, so the result does not depend on input order.
double entropy_of_masses(std::span<const Rational> masses, LogBase base = LogBase::E);

double partition_entropy(const RationalMeasure& mu, const Partition& p, LogBase base = LogBase::E);
double conditional_entropy(const RationalMeasure& mu, const Partition& p, const Partition& q,
                           LogBase base = LogBase::E);

// Join through one merged sweep over both tilings.
Partition join(const Partition& p, const Partition& q);
// Join through all pairwise cell intersections.
Partition join_pairwise(const Partition& p, const Partition& q);
// Every cell of p lies inside a cell of q.
bool is_finer(const Partition& p, const Partition& q);
// Cells agree up to finitely many points.
bool equal_mod_null(const Partition& p, const Partition& q);

double log_in(LogBase base, double x);

// Finitely presented n ↦ P_n (n ≥ 1) with a shared, synchronized cache.
class PartitionSequence {
public:
    using Generator = std::function<Partition(std::size_t)>;

    static PartitionSequence constant(Partition p);
    static PartitionSequence periodic(std::vector<Partition> prefix, std::vector<Partition> tail);
    // defined_up_to = 0 means defined for every n.
    static PartitionSequence programmatic(SpaceKind space, std::string name, Generator gen,
                                          std::size_t defined_up_to = 0);

    [[nodiscard]] const Partition& at(std::size_t n) const;
    [[nodiscard]] SpaceKind space() const { return state_->space; }
    [[nodiscard]] const std::string& name() const { return state_->name; }
    [[nodiscard]] bool is_periodic() const { return !state_->tail.empty(); }
    [[nodiscard]] std::size_t prefix_length() const { return state_->prefix.size(); }
    [[nodiscard]] std::size_t period() const { return state_->tail.size(); }
    // Index into prefix+tail for periodic sequences; nullopt for programmatic ones.
    [[nodiscard]] std::optional<std::size_t> phase(std::size_t n) const;
    [[nodiscard]] std::size_t defined_up_to() const { return state_->limit; }

    [[nodiscard]] std::optional<std::size_t> cardinality_bound() const { return bound_; }
    [[nodiscard]] PartitionSequence with_bound(std::size_t n) const;

    // n ↦ P_{n+k-1}
    [[nodiscard]] PartitionSequence shifted(std::size_t k) const;
    // n ↦ P_{(n-1)k+1}
    [[nodiscard]] PartitionSequence decimated(std::size_t k) const;

private:
    struct State {
        SpaceKind space;
        std::string name;
        std::vector<Partition> prefix;
        std::vector<Partition> tail;
        Generator gen;
        std::size_t limit = 0;
        mutable std::mutex mu;
        mutable std::map<std::size_t, Partition> cache;
    };
    explicit PartitionSequence(std::shared_ptr<const State> s) : state_(std::move(s)) {}
    std::shared_ptr<const State> state_;
    std::optional<std::size_t> bound_;
};

struct RokhlinDistance {
    double value = 0;
    // true when the horizon provably covers a full period of (μ_n, P_n, Q_n)
    bool exact = false;
};

// sup_n H_{μ_n}(P_n|Q_n) + sup_n H_{μ_n}(Q_n|P_n) over n = 1..measures.size().
double rokhlin_distance(std::span<const RationalMeasure> measures, const PartitionSequence& p,
                        const PartitionSequence& q, LogBase base = LogBase::E);

}  // namespace nds
