#include <algorithm>

#include "nds/error.hpp"
#include "nds/misiurewicz.hpp"
#include "nds/verify.hpp"

namespace nds {

TheoremReport verify_pf_stabilization(const PiecewiseLinearMap& f, const Density& phi0, const PfOptions& opts) {
    if (f.space() != SpaceKind::Circle || phi0.space() != SpaceKind::Circle)
        throw ArgumentError("transfer stabilization is checked on the circle");
    const Rational lambda = f.min_abs_slope();
    if (!(Rational(1) < lambda)) throw ArgumentError("map is not expanding: min |slope| = " + lambda.str());
    const Density uniform = Density::uniform(SpaceKind::Circle);
    if (!(transfer_density(f, uniform) == uniform))
        throw UnsupportedError("the map does not preserve Lebesgue measure, so the limit density is not uniform");

    TheoremReport r;
    r.theorem = "pf-stabilization";
    r.at("map", f.str());
    r.at("steps", std::to_string(opts.steps));
    r.at("epsilon", opts.epsilon.str());

    std::vector<Density> phis = {phi0};
    for (std::size_t t = 0; t < opts.steps; ++t) phis.push_back(transfer_density(f, phis.back()));

    // (a) once positive, min and max are monotone: each step is a convex combination
    std::optional<std::size_t> tau;
    bool bounded = true;
    std::vector<DensityDiagnostic> diag;
    for (const auto& p : phis) diag.push_back(density_ratio_diagnostic(p, opts.epsilon_check));
    for (std::size_t t = 0; t < diag.size(); ++t) {
        if (!tau && diag[t].positive) tau = t;
        if (tau && t > *tau)
            bounded = bounded && diag[t].positive && !(diag[t].min_value < diag[t - 1].min_value) &&
                      !(diag[t - 1].max_value < diag[t].max_value);
    }
    r.check_true("densities bounded away from 0 and infinity", tau.has_value() && bounded,
                 tau ? "positive from step " + std::to_string(*tau) + ", min " + diag.back().min_value.str() +
                           ", max " + diag.back().max_value.str()
                     : "never positive");

    // (b) exact contraction d_{t+1} · λ ≤ d_t
    bool contracts = true;
    double worst = 0;
    std::string dist;
    Rational prev = phis[0].l1_distance(uniform);
    dist += prev.str();
    for (std::size_t t = 1; t < phis.size(); ++t) {
        Rational d = phis[t].l1_distance(uniform);
        dist += " " + d.str();
        if (prev < d * lambda) contracts = false;
        if (prev.sign() > 0) worst = std::max(worst, (d / prev).to_double());
        prev = d;
    }
    Check& c = r.check_le("L1 contraction factor <= 1/lambda", worst, (Rational(1) / lambda).to_double(), 0, true);
    c.pass = contracts;
    c.detail = "exact: d_{t+1} * lambda <= d_t";
    r.artifact("l1_distances", dist);

    // (c) constant partition certified for μ_n = φ_{n-1} dx
    MeasureSequence mu(SystemSequence::constant(f), phi0.measure());
    auto cert = misiurewicz_check(PartitionSequence::constant(opts.partition), mu, opts.epsilon, opts.steps);
    r.check_true("constant partition is Misiurewicz-certified", cert.ok(),
                 cert.ok() ? "margin " + cert.certificate->margin.str() + ", delta " + cert.certificate->delta.str()
                           : cert.failure->reason);
    std::string ls;
    for (const auto& d : diag) ls += (ls.empty() ? "" : " ") + (d.positive ? d.ratio_lipschitz.str() : "-");
    r.artifact("ratio_lipschitz", ls);
    std::string var;
    for (const auto& p : phis) var += (var.empty() ? "" : " ") + p.circle_variation().str();
    r.artifact("circle_variation", var);
    return r;
}

}  // namespace nds
