#pragma once

#include <span>
#include <string>
#include <vector>

#include "nds/interval_set.hpp"
#include "nds/rational.hpp"

namespace nds {

struct DensityPiece {
    Rational a;  // [a, b)
    Rational b;
    Rational density;
    friend bool operator==(const DensityPiece&, const DensityPiece&) = default;
};

struct PointMass {
    Rational x;
    Rational mass;
    friend bool operator==(const PointMass&, const PointMass&) = default;
};

// Sweeps possibly overlapping pieces into sorted, disjoint pieces with positive
// density where adjacent equal densities are merged. Same input measure, same
// output, which is what makes exact measure equality meaningful.
std::vector<DensityPiece> canonical_pieces(std::vector<DensityPiece> pieces);
std::vector<PointMass> canonical_atoms(std::vector<PointMass> atoms);

// Probability measure: piecewise-constant density plus finitely many atoms.
class RationalMeasure {
public:
    // Throws DomainError unless the total mass is exactly 1 and everything lives
    // inside the space.
    RationalMeasure(SpaceKind space, std::vector<DensityPiece> pieces, std::vector<PointMass> atoms = {});

    static RationalMeasure lebesgue(SpaceKind space);
    static RationalMeasure dirac(SpaceKind space, const Rational& x);

    [[nodiscard]] SpaceKind space() const { return space_; }
    [[nodiscard]] std::span<const DensityPiece> pieces() const { return pieces_; }
    [[nodiscard]] std::span<const PointMass> atoms() const { return atoms_; }
    [[nodiscard]] bool atomless() const { return atoms_.empty(); }

    [[nodiscard]] Rational mass(const Segment& s) const;
    [[nodiscard]] Rational mass(const IntervalSet& s) const;
    [[nodiscard]] Rational density_mass(const Rational& a, const Rational& b) const;  // ∫_a^b density

    // μ restricted to s and rescaled by 1/μ(s).
    [[nodiscard]] RationalMeasure conditioned_on(const IntervalSet& s) const;

    [[nodiscard]] std::string str() const;

    friend bool operator==(const RationalMeasure&, const RationalMeasure&) = default;

private:
    SpaceKind space_;
    std::vector<DensityPiece> pieces_;
    std::vector<PointMass> atoms_;
};

}  // namespace nds
