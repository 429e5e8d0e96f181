#pragma once

#include <span>
#include <string>
#include <vector>

#include "nds/interval_set.hpp"
#include "nds/measure.hpp"
#include "nds/partition.hpp"

namespace nds {

struct AffinePiece {
    Segment dom;
    Rational slope;
    Rational intercept;

    [[nodiscard]] Rational apply(const Rational& x) const { return slope * x + intercept; }
    [[nodiscard]] Segment image(const Segment& s) const;     // of s ∩ dom, unreduced
    [[nodiscard]] Segment preimage(const Segment& s) const;  // affine inverse, not clipped to dom
    friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

// Piecewise-affine self-map of [0,1] or the circle. Pieces tile the space;
// every point, including breakpoints, has exactly one owning piece. The
// stored form is canonical, so two maps are equal as functions iff their
// representations are equal. Constructors place breakpoints in the piece on
// their right.
class PiecewiseLinearMap {
public:
    PiecewiseLinearMap(SpaceKind space, std::vector<AffinePiece> pieces);

    static PiecewiseLinearMap identity(SpaceKind space);
    static PiecewiseLinearMap constant(SpaceKind space, const Rational& c);
    static PiecewiseLinearMap tent(SpaceKind space = SpaceKind::Interval);
    static PiecewiseLinearMap doubling(SpaceKind space = SpaceKind::Circle);
    static PiecewiseLinearMap affine(SpaceKind space, const Rational& a, const Rational& b);
    // Polyline through (x_i, y_i) with x_0 = 0 < ... < x_m = 1.
    static PiecewiseLinearMap polyline(SpaceKind space, std::span<const std::pair<Rational, Rational>> pts);
    // Piece i covers [start_i, start_{i+1}) with x ↦ slope_i x + intercept_i; start_0 = 0.
    struct Branch {
        Rational start;
        Rational slope;
        Rational intercept;
    };
    static PiecewiseLinearMap branches(SpaceKind space, std::span<const Branch> bs);

    [[nodiscard]] SpaceKind space() const { return space_; }
    [[nodiscard]] std::span<const AffinePiece> pieces() const { return pieces_; }
    [[nodiscard]] const AffinePiece& piece_at(const Rational& x) const;
    [[nodiscard]] Rational operator()(const Rational& x) const;
    [[nodiscard]] Rational lipschitz() const { return lipschitz_; }
    [[nodiscard]] Rational min_abs_slope() const;
    [[nodiscard]] bool continuous() const { return continuous_; }
    [[nodiscard]] bool has_flat_piece() const;
    [[nodiscard]] std::string str() const;

    friend bool operator==(const PiecewiseLinearMap& a, const PiecewiseLinearMap& b) {
        return a.space_ == b.space_ && a.pieces_ == b.pieces_;
    }

private:
    void canonicalize(std::vector<AffinePiece> raw);
    SpaceKind space_;
    std::vector<AffinePiece> pieces_;
    Rational lipschitz_;
    bool continuous_ = true;
};

// f ∘ g
PiecewiseLinearMap compose(const PiecewiseLinearMap& f, const PiecewiseLinearMap& g);
IntervalSet preimage(const PiecewiseLinearMap& f, const IntervalSet& target);
IntervalSet image(const PiecewiseLinearMap& f, const IntervalSet& source);
Partition pullback_partition(const PiecewiseLinearMap& f, const Partition& p);
RationalMeasure pushforward_measure(const PiecewiseLinearMap& f, const RationalMeasure& mu);

}  // namespace nds
