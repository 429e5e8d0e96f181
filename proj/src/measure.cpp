#include "nds/measure.hpp"

#include <algorithm>
#include <map>

#include "nds/error.hpp"

namespace nds {

std::vector<DensityPiece> canonical_pieces(std::vector<DensityPiece> pieces) {
    std::map<Rational, Rational> delta;  // density change at each breakpoint
    for (const auto& p : pieces) {
        if (!(p.a < p.b) || p.density.is_zero()) continue;
        delta[p.a] += p.density;
        delta[p.b] -= p.density;
    }
    std::vector<DensityPiece> out;
    Rational level = 0;
    Rational prev = 0;
    bool started = false;
    for (const auto& [x, d] : delta) {
        if (started && !level.is_zero()) {
            if (!out.empty() && out.back().b == prev && out.back().density == level) {
                out.back().b = x;
            } else {
                out.push_back({prev, x, level});
            }
        }
        level += d;
        prev = x;
        started = true;
    }
    return out;
}

std::vector<PointMass> canonical_atoms(std::vector<PointMass> atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const PointMass& a, const PointMass& b) { return a.x < b.x; });
    std::vector<PointMass> out;
    for (const auto& a : atoms) {
        if (a.mass.is_zero()) continue;
        if (!out.empty() && out.back().x == a.x) {
            out.back().mass += a.mass;
        } else {
            out.push_back(a);
        }
    }
    return out;
}

RationalMeasure::RationalMeasure(SpaceKind space, std::vector<DensityPiece> pieces, std::vector<PointMass> atoms)
    : space_(space) {
    for (const auto& p : pieces) {
        if (p.density.sign() < 0) throw DomainError("negative density on [" + p.a.str() + "," + p.b.str() + ")");
        if (p.a < 0 || Rational(1) < p.b || p.b < p.a)
            throw DomainError("density piece [" + p.a.str() + "," + p.b.str() + ") outside [0,1]");
    }
    Segment whole = whole_segment(space);
    for (const auto& a : atoms) {
        if (a.mass.sign() < 0) throw DomainError("negative atom mass at " + a.x.str());
        if (!whole.contains(a.x)) throw DomainError("atom at " + a.x.str() + " outside the space");
    }
    pieces_ = canonical_pieces(std::move(pieces));
    atoms_ = canonical_atoms(std::move(atoms));
    Rational total = 0;
    for (const auto& p : pieces_) total += p.density * (p.b - p.a);
    for (const auto& a : atoms_) total += a.mass;
    if (total != Rational(1)) throw DomainError("not a probability measure: total mass " + total.str());
}

RationalMeasure RationalMeasure::lebesgue(SpaceKind space) { return {space, {{0, 1, 1}}, {}}; }

RationalMeasure RationalMeasure::dirac(SpaceKind space, const Rational& x) { return {space, {}, {{x, 1}}}; }

Rational RationalMeasure::density_mass(const Rational& a, const Rational& b) const {
    if (!(a < b)) return 0;
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), a,
                               [](const Rational& x, const DensityPiece& p) { return x < p.b; });
    Rational m = 0;
    for (; it != pieces_.end() && it->a < b; ++it) {
        Rational lo = max(a, it->a);
        Rational hi = min(b, it->b);
        if (lo < hi) m += it->density * (hi - lo);
    }
    return m;
}

Rational RationalMeasure::mass(const Segment& s) const {
    if (s.empty()) return 0;
    Rational m = density_mass(s.lo.at, s.hi.at);
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), s.lo.at,
                               [](const PointMass& p, const Rational& x) { return p.x < x; });
    for (; it != atoms_.end() && !(s.hi.at < it->x); ++it) {
        if (s.contains(it->x)) m += it->mass;
    }
    return m;
}

Rational RationalMeasure::mass(const IntervalSet& s) const {
    Rational m = 0;
    for (const auto& seg : s.segments()) m += mass(seg);
    return m;
}

RationalMeasure RationalMeasure::conditioned_on(const IntervalSet& s) const {
    Rational c = mass(s);
    if (c.is_zero()) throw DomainError("conditioning on a null set");
    std::vector<DensityPiece> pieces;
    for (const auto& seg : s.segments()) {
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), seg.lo.at,
                                   [](const Rational& x, const DensityPiece& p) { return x < p.b; });
        for (; it != pieces_.end() && it->a < seg.hi.at; ++it) {
            Rational lo = max(seg.lo.at, it->a);
            Rational hi = min(seg.hi.at, it->b);
            if (lo < hi) pieces.push_back({lo, hi, it->density / c});
        }
    }
    std::vector<PointMass> atoms;
    for (const auto& a : atoms_)
        if (s.contains(a.x)) atoms.push_back({a.x, a.mass / c});
    return {space_, std::move(pieces), std::move(atoms)};
}

std::string RationalMeasure::str() const {
    std::string out = "pc [";
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (i) out += ", ";
        out += "(" + pieces_[i].a.str() + "," + pieces_[i].b.str() + "," + pieces_[i].density.str() + ")";
    }
    out += "] atoms [";
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) out += ", ";
        out += "(" + atoms_[i].x.str() + "," + atoms_[i].mass.str() + ")";
    }
    return out + "]";
}

}  // namespace nds
