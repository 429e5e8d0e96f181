#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nds/bowen_join.hpp"

namespace nds {

struct TraceOptions {
    LogBase base = LogBase::E;
    std::size_t cap_cells = 1'000'000;
    bool keep_masses = false;
};

// H_n = H_{μ_1}(⋁_{i<n} f_1^{-i} P_{i+1}) for n = 1..horizon.
struct EntropyTrace {
    std::vector<double> h;        // h[n-1] = H_n
    std::vector<std::size_t> cells;  // #join at depth n
    std::vector<std::vector<Rational>> masses;  // filled when keep_masses
    LogBase base = LogBase::E;

    [[nodiscard]] std::size_t horizon() const { return h.size(); }
    [[nodiscard]] double at(std::size_t n) const { return h.at(n - 1); }
    [[nodiscard]] std::string csv() const;  // n,H_n,H_n/n
};

EntropyTrace entropy_trace(const MeasureSequence& mu, const PartitionSequence& p, std::size_t horizon,
                           const TraceOptions& opts = {});

struct LimsupEstimate {
    // max over the window of (H_n - H_1)/(n - 1); H_1 when the horizon is 1
    double estimate = 0;
    double max_ratio = 0;  // max over the window of H_n/n
    double slope = 0;      // least-squares slope of H_n over the window
    std::size_t first = 0;  // window is n = first..last
    std::size_t last = 0;
};

// window = 0 picks the trailing half, ceil(horizon/2).
LimsupEstimate estimate_limsup(const EntropyTrace& trace, std::size_t window = 0);
// The same estimator on the subsequence n = jk: (H_{jk} - H_k)/((j-1)k).
LimsupEstimate estimate_limsup_multiples(const EntropyTrace& trace, std::size_t k, std::size_t window = 0);

struct FamilyEstimate {
    double value = 0;
    std::size_t argmax = 0;
    std::vector<LimsupEstimate> members;
};

FamilyEstimate metric_entropy_estimate(const MeasureSequence& mu, const std::vector<PartitionSequence>& family,
                                       std::size_t horizon, std::size_t window = 0, const TraceOptions& opts = {});

// n ↦ ⋁_{i<m} f_n^{-i} P_{n+i}
PartitionSequence refine_sequence(const PartitionSequence& p, const SystemSequence& sys, std::size_t m,
                                  std::size_t cap_cells = 1'000'000);

struct AxiomCheck {
    bool holds = true;
    std::optional<std::size_t> first_violation;
    std::size_t bound = 0;  // cardinality bound used (Axiom A)
    // true when the horizon covers a full period of every periodic input, so the
    // verdict extends to all n; otherwise the check is advisory
    bool exact = false;
};

// #P_n ≤ bound for n ≤ horizon; bound defaults to the declared cardinality bound.
AxiomCheck check_axiom_A(const PartitionSequence& p, std::size_t horizon, std::optional<std::size_t> bound = {});
// P_n finer than Q_n for n ≤ horizon.
AxiomCheck check_coarser(const PartitionSequence& p, const PartitionSequence& q, std::size_t horizon);

}  // namespace nds
