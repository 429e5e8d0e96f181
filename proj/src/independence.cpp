#include "nds/independence.hpp"

#include "nds/error.hpp"

namespace nds {

namespace {

// x in [a, b] with ∫_a^x density = target, leftmost such x.
Rational quantile(const RationalMeasure& mu, const Rational& a, const Rational& b, Rational target) {
    Rational at = a;
    for (const auto& p : mu.pieces()) {
        if (!(at < b)) break;
        if (!(at < p.b)) continue;
        Rational lo = max(at, p.a);
        Rational hi = min(b, p.b);
        if (!(lo < hi)) continue;
        Rational m = p.density * (hi - lo);
        if (!(m < target)) return target.is_zero() ? lo : lo + target / p.density;
        target -= m;
        at = hi;
    }
    if (!target.is_zero()) throw ArgumentError("quantile beyond the available mass");
    return at;
}

}  // namespace

std::vector<IntervalSet> equal_mass_split(const RationalMeasure& mu, const IntervalSet& s, std::int64_t k) {
    if (k < 1) throw ArgumentError("split count must be positive");
    for (const auto& a : mu.atoms())
        if (s.contains(a.x)) throw UnsupportedError("equal-mass splitting needs an atomless measure");
    Rational total = mu.mass(s);
    std::vector<std::vector<Segment>> parts(static_cast<std::size_t>(k));
    if (total.is_zero()) {
        parts[0].assign(s.segments().begin(), s.segments().end());
    } else {
        Rational share = total / k;
        std::size_t part = 0;
        Rational filled = 0;  // mass already in the current part
        for (const auto& seg : s.segments()) {
            Cut from = seg.lo;
            while (true) {
                Rational left = mu.mass(Segment{from, seg.hi});
                if (part + 1 == parts.size() || left + filled < share || (left + filled == share)) {
                    parts[part].push_back({from, seg.hi});
                    filled += left;
                    if (filled == share && part + 1 < parts.size()) {
                        ++part;
                        filled = 0;
                    }
                    break;
                }
                Rational x = quantile(mu, from.at, seg.hi.at, share - filled);
                Cut cut = Cut::before(x);
                if (from < cut) parts[part].push_back({from, cut});
                ++part;
                filled = 0;
                from = cut;
            }
        }
    }
    std::vector<IntervalSet> out;
    for (auto& p : parts) out.emplace_back(std::move(p));
    return out;
}

bool is_injective(const PiecewiseLinearMap& f) {
    std::vector<Segment> imgs;
    Rational sum = 0;
    for (const auto& p : f.pieces()) {
        if (p.dom.is_point()) continue;
        if (p.slope.is_zero()) return false;
        imgs.push_back(p.image(p.dom));
        sum += imgs.back().length();
    }
    // images of nondegenerate pieces overlap iff the union is shorter than the sum
    if (IntervalSet(imgs).length() != sum) return false;
    IntervalSet all(imgs);
    for (const auto& p : f.pieces())
        if (p.dom.is_point() && all.contains(p.intercept + p.slope * p.dom.lo.at)) return false;
    return true;
}

PartitionSequence independent_refinement_sequence(const MeasureSequence& mu, std::int64_t k, std::size_t horizon) {
    if (k < 1) throw ArgumentError("cell count must be positive");
    if (horizon == 0) throw ArgumentError("construction horizon must be at least 1");
    const auto& sys = mu.system();
    SpaceKind space = sys.space();
    for (std::size_t n = 1; n < horizon; ++n) {
        if (!mu.at(n).atomless()) throw UnsupportedError("atomic measure at n = " + std::to_string(n));
        if (!is_injective(sys.map(n)))
            throw UnsupportedError("f_" + std::to_string(n) + " is not injective; the construction needs bijections");
    }
    if (!mu.at(horizon).atomless()) throw UnsupportedError("atomic measure at n = " + std::to_string(horizon));

    std::vector<Partition> ps;
    // images in X_n of the cells of the join built so far
    std::vector<IntervalSet> images = {IntervalSet::whole(space)};
    for (std::size_t n = 1; n <= horizon; ++n) {
        std::vector<std::vector<Segment>> cells(static_cast<std::size_t>(k));
        std::vector<IntervalSet> pieces_per_image;
        IntervalSet covered;
        std::vector<IntervalSet> next;
        for (const auto& r : images) {
            covered = covered | r;
            auto parts = equal_mass_split(mu.at(n), r, k);
            for (std::size_t j = 0; j < parts.size(); ++j) {
                for (const auto& s : parts[j].segments()) cells[j].push_back(s);
                if (n < horizon && !parts[j].empty()) next.push_back(image(sys.map(n), parts[j]));
            }
        }
        IntervalSet rest = IntervalSet::whole(space) - covered;
        for (const auto& s : rest.segments()) cells[0].push_back(s);
        std::vector<IntervalSet> cs;
        for (auto& c : cells)
            if (!c.empty()) cs.emplace_back(std::move(c));
        ps.emplace_back(space, std::move(cs));
        images = std::move(next);
    }
    auto gen = [ps](std::size_t n) { return ps[n - 1]; };
    return PartitionSequence::programmatic(space, "independent k=" + std::to_string(k), gen, horizon)
        .with_bound(static_cast<std::size_t>(k));
}

}  // namespace nds
