#include "nds/misiurewicz.hpp"

#include <algorithm>

#include "json.hpp"
#include "nds/error.hpp"

namespace nds {

namespace {

struct Shrink {
    bool left = false;
    bool right = false;
};

std::vector<Shrink> shrink_sides(const Partition& p) {
    auto tiles = p.tiles();
    std::vector<Shrink> out(tiles.size());
    const bool circle = p.space() == SpaceKind::Circle;
    for (std::size_t j = 0; j < tiles.size(); ++j) {
        if (j > 0) out[j].left = true;
        else if (circle) out[j].left = tiles.back().cell != tiles[j].cell;
        if (j + 1 < tiles.size()) out[j].right = true;
        else if (circle) out[j].right = tiles.front().cell != tiles[j].cell;
    }
    return out;
}

Segment core_of(const Segment& s, Shrink side, const Rational& m) {
    Cut lo = side.left ? Cut::before(s.lo.at + m) : s.lo;
    Cut hi = side.right ? Cut::after(s.hi.at - m) : s.hi;
    return {lo, hi};
}

// Per-cell defect μ(P_i) - μ(C_i) at margin m.
std::vector<Rational> defects(const Partition& p, const std::vector<Shrink>& sides, const RationalMeasure& mu,
                              const Rational& m) {
    std::vector<Rational> d(p.size(), Rational(0));
    auto tiles = p.tiles();
    for (std::size_t j = 0; j < tiles.size(); ++j) {
        Segment c = core_of(tiles[j].seg, sides[j], m);
        d[tiles[j].cell] += mu.mass(tiles[j].seg) - (c.empty() ? Rational(0) : mu.mass(c));
    }
    return d;
}

// Margins at which some defect changes slope or jumps.
void add_candidates(const Partition& p, const std::vector<Shrink>& sides, const RationalMeasure& mu,
                    std::vector<Rational>& out) {
    std::vector<Rational> marks;
    for (const auto& dp : mu.pieces()) {
        marks.push_back(dp.a);
        marks.push_back(dp.b);
    }
    for (const auto& a : mu.atoms()) marks.push_back(a.x);
    auto tiles = p.tiles();
    for (std::size_t j = 0; j < tiles.size(); ++j) {
        const Segment& s = tiles[j].seg;
        Shrink side = sides[j];
        if (!side.left && !side.right) continue;
        Rational len = s.length();
        out.push_back(side.left && side.right ? len / 2 : len);
        for (const auto& x : marks) {
            if (!(s.lo.at < x) || !(x < s.hi.at)) continue;
            if (side.left) out.push_back(x - s.lo.at);
            if (side.right) out.push_back(s.hi.at - x);
        }
    }
}

Rational max_of(const std::vector<Rational>& v) {
    Rational m = 0;
    for (const auto& x : v) m = max(m, x);
    return m;
}

MisiurewiczCertificate build(const PartitionSequence& p, const MeasureSequence& mu, const Rational& eps,
                             const Rational& margin, std::size_t horizon) {
    MisiurewiczCertificate c;
    c.epsilon = eps;
    c.margin = margin;
    c.delta = margin * 2;
    c.horizon = horizon;
    const PartitionSequence* seqs[] = {&p};
    c.exact = horizon_covers_cycle(mu, seqs, horizon);
    c.max_defect = 0;
    for (std::size_t n = 1; n <= horizon; ++n) {
        c.cores.push_back(shrink_cells(p.at(n), margin));
        c.max_defect = max(c.max_defect, max_of(defects(p.at(n), shrink_sides(p.at(n)), mu.at(n), margin)));
    }
    return c;
}

}  // namespace

std::vector<IntervalSet> shrink_cells(const Partition& p, const Rational& margin) {
    auto tiles = p.tiles();
    auto sides = shrink_sides(p);
    std::vector<std::vector<Segment>> segs(p.size());
    for (std::size_t j = 0; j < tiles.size(); ++j) {
        Segment c = core_of(tiles[j].seg, sides[j], margin);
        if (!c.empty()) segs[tiles[j].cell].push_back(c);
    }
    std::vector<IntervalSet> out;
    for (auto& s : segs) out.emplace_back(std::move(s));
    return out;
}

std::string MisiurewiczCertificate::json() const {
    nlohmann::ordered_json j;
    j["epsilon"] = epsilon.str();
    j["margin"] = margin.str();
    j["delta"] = delta.str();
    j["horizon"] = horizon;
    j["exact"] = exact;
    j["max_defect"] = max_defect.str();
    auto& cs = j["cores"] = nlohmann::ordered_json::array();
    for (const auto& row : cores) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& c : row) r.push_back(c.str());
        cs.push_back(std::move(r));
    }
    return j.dump(2);
}

MisiurewiczResult certify_with_margin(const PartitionSequence& p, const MeasureSequence& mu, const Rational& epsilon,
                                      const Rational& margin, std::size_t horizon) {
    if (horizon == 0) throw ArgumentError("certificate horizon must be at least 1");
    if (epsilon.sign() <= 0 || margin.sign() <= 0) throw ArgumentError("epsilon and margin must be positive");
    for (std::size_t n = 1; n <= horizon; ++n) {
        const Partition& pn = p.at(n);
        auto d = defects(pn, shrink_sides(pn), mu.at(n), margin);
        for (std::size_t i = 0; i < d.size(); ++i)
            if (epsilon < d[i])
                return {std::nullopt, MisiurewiczFailure{n, i, "mass outside the core is " + d[i].str() +
                                                                   " at margin " + margin.str()}};
    }
    return {build(p, mu, epsilon, margin, horizon), std::nullopt};
}

MisiurewiczResult misiurewicz_check(const PartitionSequence& p, const MeasureSequence& mu, const Rational& epsilon,
                                    std::size_t horizon) {
    if (horizon == 0) throw ArgumentError("certificate horizon must be at least 1");
    if (epsilon.sign() <= 0) throw ArgumentError("epsilon must be positive");
    std::vector<Rational> cand = {Rational(0)};
    std::vector<std::vector<Shrink>> sides;
    for (std::size_t n = 1; n <= horizon; ++n) {
        sides.push_back(shrink_sides(p.at(n)));
        add_candidates(p.at(n), sides.back(), mu.at(n), cand);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::erase_if(cand, [](const Rational& x) { return x.sign() < 0; });

    auto all_defects = [&](const Rational& m) {
        std::vector<std::vector<Rational>> out;
        for (std::size_t n = 1; n <= horizon; ++n) out.push_back(defects(p.at(n), sides[n - 1], mu.at(n), m));
        return out;
    };
    auto feasible = [&](const Rational& m) {
        for (const auto& row : all_defects(m))
            for (const auto& d : row)
                if (epsilon < d) return false;
        return true;
    };
    // Defects are nondecreasing and left-continuous in m: jumps happen just past
    // a candidate, and between candidates they are affine.
    std::size_t lo = 0;
    std::size_t hi = cand.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (feasible(cand[mid])) lo = mid;
        else hi = mid - 1;
    }
    // only single-tile partitions: nothing is ever shrunk
    if (cand.size() == 1) return {build(p, mu, epsilon, Rational(1, 2), horizon), std::nullopt};
    Rational best = cand[lo];
    std::optional<MisiurewiczFailure> blocker;
    if (lo + 1 < cand.size()) {
        const Rational& a = cand[lo];
        const Rational& b = cand[lo + 1];
        Rational w = b - a;
        Rational x1 = a + w / 3;
        Rational x2 = a + w * 2 / 3;
        auto d1 = all_defects(x1);
        auto d2 = all_defects(x2);
        Rational limit = b;
        for (std::size_t n = 0; n < d1.size() && !blocker; ++n) {
            for (std::size_t i = 0; i < d1[n].size(); ++i) {
                Rational slope = (d2[n][i] - d1[n][i]) / (x2 - x1);
                Rational at_a = d1[n][i] - slope * (x1 - a);  // right limit at a
                if (epsilon < at_a) {
                    blocker = MisiurewiczFailure{n + 1, i, "mass " + at_a.str() + " within every margin above " +
                                                               a.str() + " of the cell boundary"};
                    break;
                }
                if (slope.sign() > 0) limit = min(limit, a + (epsilon - at_a) / slope);
            }
        }
        if (!blocker) best = limit;
    }
    if (best.is_zero()) {
        if (blocker) {
            blocker->reason = "no positive uniform margin: " + blocker->reason;
            return {std::nullopt, blocker};
        }
        return {std::nullopt, MisiurewiczFailure{1, 0, "no positive uniform margin"}};
    }
    return {build(p, mu, epsilon, best, horizon), std::nullopt};
}

Rational set_distance(SpaceKind space, const IntervalSet& a, const IntervalSet& b) {
    if (a.intersects(b)) return 0;
    std::optional<Rational> best;
    for (const auto& x : a.segments()) {
        for (const auto& y : b.segments()) {
            Rational d = y.lo.at < x.lo.at ? x.lo.at - y.hi.at : y.lo.at - x.hi.at;
            if (space == SpaceKind::Circle) {
                Rational lo = min(x.lo.at, y.lo.at);
                Rational hi = max(x.hi.at, y.hi.at);
                d = min(d, lo + 1 - hi);
            }
            d = max(d, Rational(0));
            best = best ? min(*best, d) : d;
        }
    }
    return best.value_or(Rational(0));
}

CertificateAudit audit_certificate(const MisiurewiczCertificate& cert, const PartitionSequence& p,
                                   const MeasureSequence& mu) {
    CertificateAudit out;
    out.max_defect = 0;
    SpaceKind space = p.space();
    for (std::size_t n = 1; n <= cert.cores.size(); ++n) {
        const Partition& pn = p.at(n);
        std::vector<IntervalSet> by_cell(pn.size());
        std::vector<std::size_t> owner;
        std::vector<const IntervalSet*> cores;
        for (const auto& c : cert.cores[n - 1]) {
            if (c.empty()) continue;
            std::size_t i = 0;
            while (i < pn.size() && !c.subset_of(pn.cell(i))) ++i;
            if (i == pn.size()) {
                out.cores_inside = false;
                continue;
            }
            by_cell[i] = by_cell[i] | c;
            owner.push_back(i);
            cores.push_back(&c);
        }
        const RationalMeasure& m = mu.at(n);
        for (std::size_t i = 0; i < pn.size(); ++i) {
            Rational d = m.mass(pn.cell(i)) - m.mass(by_cell[i]);
            out.max_defect = max(out.max_defect, d);
            if (cert.epsilon < d) out.mass_ok = false;
        }
        for (std::size_t a = 0; a < cores.size(); ++a)
            for (std::size_t b = a + 1; b < cores.size(); ++b) {
                if (owner[a] == owner[b]) continue;
                Rational g = set_distance(space, *cores[a], *cores[b]);
                out.min_gap = out.min_gap ? min(*out.min_gap, g) : g;
                if (g < cert.delta) out.separation_ok = false;
            }
    }
    return out;
}

MisiurewiczCertificate pullback_certificate(const MisiurewiczCertificate& cert, const SystemSequence& pi) {
    MisiurewiczCertificate out = cert;
    for (std::size_t n = 1; n <= out.cores.size(); ++n)
        for (auto& c : out.cores[n - 1]) c = preimage(pi.map(n), c);
    return out;
}

}  // namespace nds
