#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "nds/partition.hpp"
#include "nds/pwl_map.hpp"

namespace nds {

// n ↦ f_n given as a finite prefix followed by a periodic tail.
class SystemSequence {
public:
    static SystemSequence constant(PiecewiseLinearMap f);
    // lipschitz_bound defaults to the largest Lipschitz constant present; a
    // declared bound below that throws ArgumentError.
    static SystemSequence periodic(std::vector<PiecewiseLinearMap> prefix, std::vector<PiecewiseLinearMap> tail,
                                   std::optional<Rational> lipschitz_bound = std::nullopt);

    [[nodiscard]] SpaceKind space() const { return state_->space; }
    [[nodiscard]] const PiecewiseLinearMap& map(std::size_t n) const;
    [[nodiscard]] std::size_t prefix_length() const { return state_->prefix.size(); }
    [[nodiscard]] std::size_t period() const { return state_->tail.size(); }
    // Index into prefix+tail.
    [[nodiscard]] std::size_t phase(std::size_t n) const;
    [[nodiscard]] Rational lipschitz_bound() const { return state_->lipschitz; }
    [[nodiscard]] bool continuous() const;
    [[nodiscard]] std::span<const PiecewiseLinearMap> prefix() const { return state_->prefix; }
    [[nodiscard]] std::span<const PiecewiseLinearMap> tail() const { return state_->tail; }

    // f_k^n = f_{k+n-1} ∘ ... ∘ f_k; the identity for n = 0. Cached.
    [[nodiscard]] const PiecewiseLinearMap& composition(std::size_t k, std::size_t n) const;

    // f_k^i x for i = 0..n-1.
    [[nodiscard]] std::vector<Rational> orbit(std::size_t k, const Rational& x, std::size_t n) const;

private:
    struct State {
        SpaceKind space;
        std::vector<PiecewiseLinearMap> prefix;
        std::vector<PiecewiseLinearMap> tail;
        Rational lipschitz;
        mutable std::mutex mu;
        mutable std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<PiecewiseLinearMap>> compositions;
    };
    explicit SystemSequence(std::shared_ptr<const State> s) : state_(std::move(s)) {}
    std::shared_ptr<const State> state_;
};

// n ↦ f_{(n-1)k+1}^k, Lipschitz bound L^k.
SystemSequence power_system(const SystemSequence& sys, std::size_t k);
// n ↦ f_{n+k-1}
SystemSequence shift_system(const SystemSequence& sys, std::size_t k);

// Lip(f_n^i) ≤ L^i for n ≤ horizon, i < depth.
bool check_equicontinuity(const SystemSequence& sys, std::size_t horizon, std::size_t depth);

// μ_1 and its exact pushforwards μ_{n+1} = f_n μ_n, filled on demand.
class MeasureSequence {
public:
    MeasureSequence(SystemSequence sys, RationalMeasure mu1);

    [[nodiscard]] const SystemSequence& system() const { return state_->sys; }
    [[nodiscard]] const RationalMeasure& at(std::size_t n) const;
    [[nodiscard]] std::vector<RationalMeasure> materialize(std::size_t horizon) const;

    // Measures of the shifted and power systems: μ_k, μ_{k+1}, ... and μ_1, μ_{k+1}, ...
    [[nodiscard]] MeasureSequence shifted(std::size_t k) const;
    [[nodiscard]] MeasureSequence power(std::size_t k) const;

    // Smallest n0 < n1 ≤ horizon with equal map phase and equal measure; from
    // n0 on the pair (f_n, μ_n) repeats with period n1 - n0.
    [[nodiscard]] std::optional<std::pair<std::size_t, std::size_t>> find_cycle(std::size_t horizon) const;

    // Recomputes f_n μ_n == μ_{n+1} for n < horizon; returns the first bad n.
    [[nodiscard]] std::optional<std::size_t> check_invariance(std::size_t horizon) const;

private:
    struct State {
        SystemSequence sys;
        mutable std::mutex mu;
        mutable std::deque<RationalMeasure> cache;
    };
    std::shared_ptr<const State> state_;
};

// True when (f_n phase, μ_n, phase of every listed sequence) repeats inside
// the horizon, so every later index repeats one already visited. Sequences
// that are not periodic make this false.
bool horizon_covers_cycle(const MeasureSequence& mu, std::span<const PartitionSequence* const> seqs,
                          std::size_t horizon);

// Rokhlin distance over n ≤ horizon, flagged exact when the horizon covers a
// full cycle of (f_n, μ_n, P_n, Q_n).
RokhlinDistance rokhlin_distance(const MeasureSequence& mu, const PartitionSequence& p,
                                 const PartitionSequence& q, std::size_t horizon, LogBase base = LogBase::E);

// n ↦ Y_n, prefix plus periodic tail.
class SetSequence {
public:
    static SetSequence constant(IntervalSet y) { return periodic({}, {std::move(y)}); }
    static SetSequence periodic(std::vector<IntervalSet> prefix, std::vector<IntervalSet> tail);
    [[nodiscard]] const IntervalSet& at(std::size_t n) const;
    [[nodiscard]] std::size_t prefix_length() const { return prefix_.size(); }
    [[nodiscard]] std::size_t period() const { return tail_.size(); }

private:
    std::vector<IntervalSet> prefix_;
    std::vector<IntervalSet> tail_;
};

struct RestrictedSystem {
    SystemSequence system;     // same maps; the dynamics of interest live on Y_n
    MeasureSequence measures;  // ν_n = μ_n|Y_n / c
    SetSequence y;
    Rational mass;             // c
    // {Y_n ∩ P, complement ∩ P}: the restricted partition extended to the
    // whole space, the extra cells being ν_n-null.
    [[nodiscard]] PartitionSequence restrict_partitions(const PartitionSequence& p) const;
};

// Verifies f_n(Y_n) ⊆ Y_{n+1} and μ_n(Y_n) = c for n ≤ horizon; throws
// CertificateError naming the first bad index.
RestrictedSystem restrict_system(const MeasureSequence& mu, SetSequence y, std::size_t horizon);

// π_{n+1} ∘ f_n = g_n ∘ π_n, checked exactly for n ≤ horizon at construction.
class SemiconjugacySpec {
public:
    SemiconjugacySpec(SystemSequence pi, SystemSequence f, SystemSequence g, std::size_t horizon);

    [[nodiscard]] const SystemSequence& pi() const { return pi_; }
    [[nodiscard]] const SystemSequence& source() const { return f_; }
    [[nodiscard]] const SystemSequence& target() const { return g_; }
    [[nodiscard]] std::size_t verified_horizon() const { return horizon_; }
    // true when the checked range covers a full joint period of π, f and g
    [[nodiscard]] bool verified_for_all_n() const { return complete_; }

private:
    SystemSequence pi_;
    SystemSequence f_;
    SystemSequence g_;
    std::size_t horizon_;
    bool complete_ = false;
};

// n ↦ π_n^{-1} Q_n
PartitionSequence pullback_by_semiconjugacy(const SemiconjugacySpec& pi, const PartitionSequence& q);

}  // namespace nds
