#pragma once

#include <vector>

#include "nds/density.hpp"
#include "nds/metric_entropy.hpp"
#include "nds/report.hpp"
#include "nds/topological.hpp"

namespace nds {

// H^{[k]}_n(Q) = H_{nk}(P) for Q_n = ⋁_{j<k} f^{-j} P on the power system,
// compared on exact cell masses, then est(f^{[k]}) against k · est(f).
TheoremReport verify_metric_power_rule(const MeasureSequence& mu, const PartitionSequence& p, std::size_t k,
                                       std::size_t horizon, double tolerance = 1e-9);

// Estimates of (f_{k,∞}, P_{k,∞}) for k = 1..k_max agree within `tolerance`;
// the sandwich H^{(k+1)}_{n-1} ≤ H^{(k)}_n ≤ H_{μ_k}(P_k) + H^{(k+1)}_{n-1}
// holds for every n.
TheoremReport verify_shift_invariance(const MeasureSequence& mu, const PartitionSequence& p, std::size_t k_max,
                                      std::size_t horizon, double tolerance = 0.02);

struct CommutativityOptions {
    std::size_t horizon = 10;
    std::size_t cap_cells = std::size_t{1} << 22;  // g∘f with 4 branches reaches 4^10 cells
    std::size_t dyadic_levels = 2;  // full entropies use Q ∨ D, D the 2^levels equal intervals
    double tolerance = 1e-9;
};

// fμ = ν and gν = μ (CertificateError otherwise). Runs the alternating
// system {f, g, f, g, ...} with partitions (P, Q, P, Q, ...), P = f^{-1} Q,
// and checks H^{alt}_{2n} = H_μ(⋁_{j<n} (g∘f)^{-j} P) together with its
// shifted counterpart for f∘g; compares the matched rates and the family
// estimates of h_μ(g∘f) and h_ν(f∘g).
TheoremReport verify_commutativity(const PiecewiseLinearMap& f, const PiecewiseLinearMap& g,
                                   const RationalMeasure& mu, const RationalMeasure& nu, const Partition& q,
                                   const CommutativityOptions& opts = {});

struct VariationalOptions {
    Rational certificate_epsilon = Rational(1, 100);
    std::size_t metric_horizon = 12;
    TopologicalOptions topological;
    double slack = 0.05;
};

// Metric estimate over the Misiurewicz-certified members of the family
// against the topological estimate.
TheoremReport verify_variational_inequality(const MeasureSequence& mu, const std::vector<PartitionSequence>& family,
                                            const VariationalOptions& opts);

// c · (restricted estimate) ≤ full estimate, with equality when c = 1.
TheoremReport verify_restriction(const MeasureSequence& mu, const SetSequence& y,
                                 const std::vector<PartitionSequence>& family, std::size_t horizon,
                                 double tolerance = 1e-9);

// Metric estimates of a certified family on the target and of its pullback
// on the source agree, and pulled-back certificates re-verify with the same δ
// (π_1 must carry source_mu1 to target_mu1; π is assumed isometric).
TheoremReport verify_equiconjugacy(const SemiconjugacySpec& pi, const RationalMeasure& source_mu1,
                                   const RationalMeasure& target_mu1,
                                   const std::vector<PartitionSequence>& family, const Rational& epsilon,
                                   std::size_t horizon, double tolerance = 1e-9);

struct PfOptions {
    std::size_t steps = 10;
    Partition partition = Partition::uniform(SpaceKind::Circle, 8);
    Rational epsilon = Rational(1, 1000);
    Rational epsilon_check = Rational(1, 4);
};

// Iterates the transfer operator of an expanding circle map with uniform
// invariant density: densities stay positive and bounded once positive, the
// L1 distance to uniform shrinks by at least 1/λ per step, and the constant
// partition is Misiurewicz-certified for the induced measures.
TheoremReport verify_pf_stabilization(const PiecewiseLinearMap& f, const Density& phi0, const PfOptions& opts = {});

// estimate(f^{[k]}) against k · estimate(f) at a fixed grid.
TheoremReport verify_topological_power_rule(const SystemSequence& sys, std::size_t k, const TopologicalOptions& opts,
                                            double tolerance = 0.15);

}  // namespace nds
