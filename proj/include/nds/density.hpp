#pragma once

#include <vector>

#include "nds/measure.hpp"
#include "nds/pwl_map.hpp"

namespace nds {

// Piecewise-constant probability density on the space; canonical pieces as in
// RationalMeasure (zero stretches are left out).
class Density {
public:
    Density(SpaceKind space, std::vector<DensityPiece> pieces);  // must integrate to 1

    static Density uniform(SpaceKind space);
    // k equal steps with values proportional to 1, 2, ..., k (normalized).
    static Density staircase(SpaceKind space, std::int64_t k);

    [[nodiscard]] SpaceKind space() const { return space_; }
    [[nodiscard]] std::span<const DensityPiece> pieces() const { return pieces_; }
    // Full tiling of [0,1) including zero-valued stretches.
    [[nodiscard]] std::vector<DensityPiece> steps() const;
    [[nodiscard]] Rational value_at(const Rational& x) const;
    [[nodiscard]] RationalMeasure measure() const { return {space_, pieces_}; }
    [[nodiscard]] Rational l1_distance(const Density& o) const;
    // Total variation along the circle, the jump across 0 included.
    [[nodiscard]] Rational circle_variation() const;

    friend bool operator==(const Density&, const Density&) = default;

private:
    SpaceKind space_;
    std::vector<DensityPiece> pieces_;
};

// Perron-Frobenius operator of f on piecewise-constant densities.
Density transfer_density(const PiecewiseLinearMap& f, const Density& phi);

struct DensityDiagnostic {
    Rational min_value;
    Rational max_value;
    bool positive = false;
    // sup of |φ_i/φ_j - 1| / d over adjacent steps whose centres are closer
    // than ε_check; the ratio-Lipschitz constant of the interpolant through
    // the step centres.
    Rational ratio_lipschitz;
    // false when some jump sits between steps whose centres are ε_check or more
    // apart, so the constant above does not see it
    bool resolved = true;
    bool constant = false;
};

DensityDiagnostic density_ratio_diagnostic(const Density& phi, const Rational& epsilon_check);

}  // namespace nds
