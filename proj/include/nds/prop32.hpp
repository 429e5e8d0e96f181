#pragma once

#include <string>
#include <vector>

#include "nds/metric_entropy.hpp"

namespace nds {

// n ↦ P_n ∨ Q_n; periodic when both inputs are.
PartitionSequence join_sequences(const PartitionSequence& p, const PartitionSequence& q);

struct Prop32Item {
    std::string item;  // "i" .. "vii"
    bool pass = true;
    std::string witness;
};

struct Prop32Report {
    std::vector<Prop32Item> items;
    [[nodiscard]] bool all_pass() const;
    [[nodiscard]] const Prop32Item& get(const std::string& item) const;
};

struct Prop32Options {
    std::size_t multiple = 2;  // k in (iv)
    std::size_t refine = 2;    // m in (v)
    std::size_t shift = 1;     // k in (vii), compared with k + 1
    double tolerance = 1e-9;
    TraceOptions trace;
};

// Finite-horizon checks of the basic properties of the entropy of a system
// with respect to partition sequences P and Q:
//   i    0 ≤ H_n(P) ≤ Σ_{i≤n} log #P_i
//   ii   H_n(P ∨ Q) ≤ H_n(P) + H_n(Q)
//   iii  P ⪰ Q ⇒ H_n(P) ≥ H_n(Q) (checked on P ∨ Q ⪰ P when P is not finer)
//   iv   H_n is nondecreasing and the power system f^k with the decimated
//        k-refinement has trace H_{nk}
//   v    the m-refined trace at n equals the trace at n + m - 1, exactly
//   vi   H_n(P) ≤ H_n(Q) + Σ_{i≤n} H_{μ_i}(P_i | Q_i)
//   vii  H^{(k+1)}_{n-1} ≤ H^{(k)}_n ≤ H_{μ_k}(P_k) + H^{(k+1)}_{n-1}
Prop32Report verify_prop32(const MeasureSequence& mu, const PartitionSequence& p, const PartitionSequence& q,
                           std::size_t horizon, const Prop32Options& opts = {});

}  // namespace nds
