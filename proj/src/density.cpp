#include "nds/density.hpp"

#include <algorithm>

#include "nds/error.hpp"

namespace nds {

Density::Density(SpaceKind space, std::vector<DensityPiece> pieces) : space_(space) {
    RationalMeasure check(space, pieces);  // validates mass 1 and bounds
    pieces_.assign(check.pieces().begin(), check.pieces().end());
}

Density Density::uniform(SpaceKind space) { return {space, {{0, 1, 1}}}; }

Density Density::staircase(SpaceKind space, std::int64_t k) {
    if (k < 1) throw ArgumentError("staircase needs k >= 1");
    // Σ_{i=1..k} i / k = (k+1)/2, so value i on step i scales by 2/(k+1)
    std::vector<DensityPiece> p;
    for (std::int64_t i = 0; i < k; ++i) p.push_back({Rational(i, k), Rational(i + 1, k), Rational(2 * (i + 1), k + 1)});
    return {space, std::move(p)};
}

std::vector<DensityPiece> Density::steps() const {
    std::vector<DensityPiece> out;
    Rational at = 0;
    for (const auto& p : pieces_) {
        if (at < p.a) out.push_back({at, p.a, 0});
        out.push_back(p);
        at = p.b;
    }
    if (at < Rational(1)) out.push_back({at, 1, 0});
    return out;
}

Rational Density::value_at(const Rational& x) const {
    for (const auto& p : pieces_)
        if (!(x < p.a) && x < p.b) return p.density;
    return 0;
}

Rational Density::l1_distance(const Density& o) const {
    std::vector<Rational> bps = {0, 1};
    for (const auto& p : pieces_) {
        bps.push_back(p.a);
        bps.push_back(p.b);
    }
    for (const auto& p : o.pieces_) {
        bps.push_back(p.a);
        bps.push_back(p.b);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    Rational d = 0;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        Rational mid = (bps[i] + bps[i + 1]) / 2;
        d += abs(value_at(mid) - o.value_at(mid)) * (bps[i + 1] - bps[i]);
    }
    return d;
}

Rational Density::circle_variation() const {
    auto s = steps();
    Rational v = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) v += abs(s[i + 1].density - s[i].density);
    v += abs(s.front().density - s.back().density);
    return v;
}

Density transfer_density(const PiecewiseLinearMap& f, const Density& phi) {
    if (f.space() != phi.space()) throw DomainError("transfer across different spaces");
    if (f.has_flat_piece()) throw UnsupportedError("transfer operator needs a map without slope-0 pieces");
    RationalMeasure pushed = pushforward_measure(f, phi.measure());
    return {f.space(), {pushed.pieces().begin(), pushed.pieces().end()}};
}

DensityDiagnostic density_ratio_diagnostic(const Density& phi, const Rational& epsilon_check) {
    if (epsilon_check.sign() <= 0) throw ArgumentError("epsilon_check must be positive");
    auto s = phi.steps();
    DensityDiagnostic d;
    d.min_value = s.front().density;
    d.max_value = s.front().density;
    for (const auto& p : s) {
        d.min_value = min(d.min_value, p.density);
        d.max_value = max(d.max_value, p.density);
    }
    d.positive = d.min_value.sign() > 0;
    d.constant = d.min_value == d.max_value;
    d.ratio_lipschitz = 0;
    if (!d.positive) {
        d.resolved = false;
        return d;
    }
    auto pair = [&](const DensityPiece& a, const DensityPiece& b) {
        if (a.density == b.density) return;
        Rational gap = ((a.b - a.a) + (b.b - b.a)) / 2;
        if (!(gap < epsilon_check)) {
            d.resolved = false;
            return;
        }
        Rational r1 = abs(a.density / b.density - 1);
        Rational r2 = abs(b.density / a.density - 1);
        d.ratio_lipschitz = max(d.ratio_lipschitz, max(r1, r2) / gap);
    };
    for (std::size_t i = 0; i + 1 < s.size(); ++i) pair(s[i], s[i + 1]);
    if (phi.space() == SpaceKind::Circle && s.size() > 1) pair(s.back(), s.front());
    return d;
}

}  // namespace nds
