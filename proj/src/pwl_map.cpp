#include "nds/pwl_map.hpp"

#include <algorithm>

#include "nds/error.hpp"

namespace nds {

namespace {

Cut map_cut(const Cut& c, const Rational& s, const Rational& t) {
    if (t.is_zero() && s == Rational(1)) return c;
    return s.sign() > 0 ? Cut{s * c.at + t, c.side} : Cut{s * c.at + t, c.side}.flipped();
}

Segment intersect(const Segment& a, const Segment& b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

Rational frac(const Rational& x) { return x - floor(x); }

const AffinePiece& find_piece(std::span<const AffinePiece> pieces, const Rational& x) {
    auto it = std::upper_bound(pieces.begin(), pieces.end(), Cut::before(x),
                               [](const Cut& c, const AffinePiece& p) { return c < p.dom.lo; });
    if (it == pieces.begin() || !std::prev(it)->dom.contains(x))
        throw ArgumentError("point " + x.str() + " outside the space");
    return *std::prev(it);
}

std::vector<AffinePiece> check_tiling(SpaceKind space, std::vector<AffinePiece> pieces) {
    std::erase_if(pieces, [](const AffinePiece& p) { return p.dom.empty(); });
    std::sort(pieces.begin(), pieces.end(), [](const AffinePiece& a, const AffinePiece& b) { return a.dom.lo < b.dom.lo; });
    Segment whole = whole_segment(space);
    Cut expect = whole.lo;
    for (const auto& p : pieces) {
        if (p.dom.lo != expect) throw DomainError("map pieces do not tile the space near " + expect.at.str());
        expect = p.dom.hi;
    }
    if (expect != whole.hi) throw DomainError("map pieces do not tile the space near " + expect.at.str());
    return pieces;
}

// Interval: image must stay in [0,1]. Circle: split pieces so each image lands
// in one unit cell, then shift it into [0,1).
std::vector<AffinePiece> reduce_images(SpaceKind space, const std::vector<AffinePiece>& pieces) {
    std::vector<AffinePiece> out;
    Segment whole = whole_segment(space);
    for (const auto& p : pieces) {
        Segment img = p.image(p.dom);
        if (space == SpaceKind::Interval) {
            if (img.lo < whole.lo || whole.hi < img.hi)
                throw DomainError("map leaves [0,1] on " + p.dom.str());
            out.push_back(p);
            continue;
        }
        if (p.slope.is_zero()) {
            out.push_back({p.dom, 0, frac(p.intercept)});
            continue;
        }
        Rational k = floor(img.lo.at);
        Rational last = floor(img.hi.at);
        for (; !(last < k); k += 1) {
            Segment cellk = Segment::half_open(k, k + 1);
            Segment sub = intersect(img, cellk);
            if (sub.empty()) continue;
            Segment d = intersect(p.preimage(sub), p.dom);
            if (!d.empty()) out.push_back({d, p.slope, p.intercept - k});
        }
    }
    return out;
}

}  // namespace

Segment AffinePiece::image(const Segment& s) const {
    Segment d = intersect(s, dom);
    if (d.empty()) return {Cut::before(0), Cut::before(0)};
    if (slope.is_zero()) return Segment::point(intercept);
    if (slope.sign() > 0) return {map_cut(d.lo, slope, intercept), map_cut(d.hi, slope, intercept)};
    return {map_cut(d.hi, slope, intercept), map_cut(d.lo, slope, intercept)};
}

Segment AffinePiece::preimage(const Segment& s) const {
    Rational inv = Rational(1) / slope;
    Rational shift = -intercept / slope;
    if (slope.sign() > 0) return {map_cut(s.lo, inv, shift), map_cut(s.hi, inv, shift)};
    return {map_cut(s.hi, inv, shift), map_cut(s.lo, inv, shift)};
}

PiecewiseLinearMap::PiecewiseLinearMap(SpaceKind space, std::vector<AffinePiece> pieces) : space_(space) {
    auto tiled = check_tiling(space, std::move(pieces));
    canonicalize(reduce_images(space, tiled));
}

void PiecewiseLinearMap::canonicalize(std::vector<AffinePiece> raw) {
    raw = check_tiling(space_, std::move(raw));
    std::vector<Rational> bps;
    for (const auto& p : raw) {
        bps.push_back(p.dom.lo.at);
        bps.push_back(p.dom.hi.at);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    const bool circle = space_ == SpaceKind::Circle;

    struct Formula {
        Rational s, t;
        [[nodiscard]] Rational at(const Rational& x) const { return s * x + t; }
        bool operator==(const Formula&) const = default;
    };
    std::vector<Formula> open;  // formula on (b_j, b_{j+1})
    for (std::size_t j = 0; j + 1 < bps.size(); ++j) {
        const auto& p = find_piece(raw, (bps[j] + bps[j + 1]) / 2);
        open.push_back({p.slope, p.intercept});
    }
    auto value = [&](const Rational& b) {
        const auto& p = find_piece(raw, b);
        return p.apply(b);
    };

    pieces_.clear();
    continuous_ = true;
    auto same_point = [&](const Rational& a, const Rational& b) { return circle ? frac(a) == frac(b) : a == b; };
    auto emit = [&](Cut lo, Cut hi, const Formula& f) {
        if (lo < hi) pieces_.push_back({{lo, hi}, f.s, f.t});
    };
    auto point_piece = [&](const Rational& b, const Rational& y) {
        pieces_.push_back({Segment::point(b), 0, y});
    };

    Rational y0 = value(0);
    Cut start = Cut::before(0);
    if (open.front().at(0) != y0) {
        point_piece(0, y0);
        start = Cut::after(0);
    }
    if (!same_point(open.front().at(0), y0)) continuous_ = false;
    Formula cur = open.front();
    for (std::size_t j = 1; j + 1 < bps.size(); ++j) {
        const Rational& b = bps[j];
        Rational y = value(b);
        const Formula& next = open[j];
        if (!same_point(cur.at(b), y) || !same_point(next.at(b), y)) continuous_ = false;
        if (cur == next && next.at(b) == y) continue;
        if (next.at(b) == y) {
            emit(start, Cut::before(b), cur);
            start = Cut::before(b);
        } else if (cur.at(b) == y) {
            emit(start, Cut::after(b), cur);
            start = Cut::after(b);
        } else {
            emit(start, Cut::before(b), cur);
            point_piece(b, y);
            start = Cut::after(b);
        }
        cur = next;
    }
    if (circle) {
        emit(start, Cut::before(1), cur);
        if (!same_point(cur.at(1), y0)) continuous_ = false;
    } else {
        Rational y1 = value(1);
        if (cur.at(1) == y1) {
            emit(start, Cut::after(1), cur);
        } else {
            emit(start, Cut::before(1), cur);
            point_piece(1, y1);
            continuous_ = false;
        }
    }
    lipschitz_ = 0;
    for (const auto& p : pieces_)
        if (!p.dom.is_point()) lipschitz_ = max(lipschitz_, abs(p.slope));
}

PiecewiseLinearMap PiecewiseLinearMap::identity(SpaceKind space) { return affine(space, 1, 0); }

PiecewiseLinearMap PiecewiseLinearMap::constant(SpaceKind space, const Rational& c) {
    if (!whole_segment(space).contains(c)) throw DomainError("constant " + c.str() + " outside the space");
    return affine(space, 0, c);
}

PiecewiseLinearMap PiecewiseLinearMap::tent(SpaceKind space) {
    Branch bs[] = {{0, 2, 0}, {Rational(1, 2), -2, 2}};
    return branches(space, bs);
}

PiecewiseLinearMap PiecewiseLinearMap::doubling(SpaceKind space) {
    Branch bs[] = {{0, 2, 0}, {Rational(1, 2), 2, -1}};
    return branches(space, bs);
}

PiecewiseLinearMap PiecewiseLinearMap::affine(SpaceKind space, const Rational& a, const Rational& b) {
    return {space, {{whole_segment(space), a, b}}};
}

PiecewiseLinearMap PiecewiseLinearMap::polyline(SpaceKind space, std::span<const std::pair<Rational, Rational>> pts) {
    if (pts.size() < 2 || pts.front().first != 0 || pts.back().first != 1)
        throw ArgumentError("polyline needs points from x = 0 to x = 1");
    std::vector<Branch> bs;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto& [x0, y0] = pts[i];
        const auto& [x1, y1] = pts[i + 1];
        if (!(x0 < x1)) throw ArgumentError("polyline abscissae must increase strictly");
        Rational s = (y1 - y0) / (x1 - x0);
        bs.push_back({x0, s, y0 - s * x0});
    }
    return branches(space, bs);
}

PiecewiseLinearMap PiecewiseLinearMap::branches(SpaceKind space, std::span<const Branch> bs) {
    if (bs.empty() || bs.front().start != 0) throw ArgumentError("branches must start at 0");
    std::vector<AffinePiece> pieces;
    Segment whole = whole_segment(space);
    for (std::size_t i = 0; i < bs.size(); ++i) {
        Cut lo = Cut::before(bs[i].start);
        Cut hi = i + 1 < bs.size() ? Cut::before(bs[i + 1].start) : whole.hi;
        if (!(lo < hi)) throw ArgumentError("branch starts must increase strictly inside [0,1)");
        pieces.push_back({{lo, hi}, bs[i].slope, bs[i].intercept});
    }
    return {space, std::move(pieces)};
}

const AffinePiece& PiecewiseLinearMap::piece_at(const Rational& x) const {
    if (space_ == SpaceKind::Circle && x == Rational(1)) return pieces_.front();
    return find_piece(pieces_, x);
}

Rational PiecewiseLinearMap::operator()(const Rational& x) const {
    Rational y = space_ == SpaceKind::Circle && x == Rational(1) ? Rational(0) : x;
    return piece_at(y).apply(y);
}

Rational PiecewiseLinearMap::min_abs_slope() const {
    Rational m = lipschitz_;
    for (const auto& p : pieces_)
        if (!p.dom.is_point()) m = min(m, abs(p.slope));
    return m;
}

bool PiecewiseLinearMap::has_flat_piece() const {
    return std::any_of(pieces_.begin(), pieces_.end(),
                       [](const AffinePiece& p) { return !p.dom.is_point() && p.slope.is_zero(); });
}

std::string PiecewiseLinearMap::str() const {
    std::string out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (i) out += "; ";
        out += pieces_[i].dom.str() + " -> " + pieces_[i].slope.str() + "*x + " + pieces_[i].intercept.str();
    }
    return out;
}

PiecewiseLinearMap compose(const PiecewiseLinearMap& f, const PiecewiseLinearMap& g) {
    if (f.space() != g.space()) throw DomainError("composing maps on different spaces");
    std::vector<AffinePiece> out;
    auto fp = f.pieces();
    for (const auto& p : g.pieces()) {
        Segment img = p.image(p.dom);
        auto it = std::upper_bound(fp.begin(), fp.end(), img.lo,
                                   [](const Cut& c, const AffinePiece& q) { return c < q.dom.lo; });
        if (it != fp.begin()) --it;
        for (; it != fp.end() && it->dom.lo < img.hi; ++it) {
            Segment sub = intersect(img, it->dom);
            if (sub.empty()) continue;
            Segment d = p.slope.is_zero() ? p.dom : intersect(p.preimage(sub), p.dom);
            if (d.empty()) continue;
            out.push_back({d, it->slope * p.slope, it->slope * p.intercept + it->intercept});
        }
    }
    return {f.space(), std::move(out)};
}

IntervalSet preimage(const PiecewiseLinearMap& f, const IntervalSet& target) {
    std::vector<Segment> out;
    auto ts = target.segments();
    for (const auto& p : f.pieces()) {
        if (p.slope.is_zero()) {
            if (target.contains(p.intercept)) out.push_back(p.dom);
            continue;
        }
        Segment img = p.image(p.dom);
        auto it = std::upper_bound(ts.begin(), ts.end(), img.lo,
                                   [](const Cut& c, const Segment& s) { return c < s.lo; });
        if (it != ts.begin()) --it;
        for (; it != ts.end() && it->lo < img.hi; ++it) {
            Segment sub = intersect(img, *it);
            if (sub.empty()) continue;
            Segment d = intersect(p.preimage(sub), p.dom);
            if (!d.empty()) out.push_back(d);
        }
    }
    return IntervalSet(std::move(out));
}

IntervalSet image(const PiecewiseLinearMap& f, const IntervalSet& source) {
    std::vector<Segment> out;
    for (const auto& p : f.pieces())
        for (const auto& s : source.segments()) {
            Segment d = intersect(s, p.dom);
            if (!d.empty()) out.push_back(p.image(d));
        }
    return IntervalSet(std::move(out));
}

Partition pullback_partition(const PiecewiseLinearMap& f, const Partition& p) {
    if (f.space() != p.space()) throw DomainError("pullback across different spaces");
    std::vector<IntervalSet> cells;
    for (const auto& c : p.cells()) {
        IntervalSet pre = preimage(f, c);
        if (!pre.empty()) cells.push_back(std::move(pre));
    }
    return {Partition::Trusted{}, f.space(), std::move(cells)};
}

RationalMeasure pushforward_measure(const PiecewiseLinearMap& f, const RationalMeasure& mu) {
    if (f.space() != mu.space()) throw DomainError("pushforward across different spaces");
    std::vector<DensityPiece> pieces;
    std::vector<PointMass> atoms;
    auto dp = mu.pieces();
    for (const auto& p : f.pieces()) {
        if (p.dom.is_point()) continue;
        auto it = std::upper_bound(dp.begin(), dp.end(), p.dom.lo.at,
                                   [](const Rational& x, const DensityPiece& d) { return x < d.b; });
        for (; it != dp.end() && it->a < p.dom.hi.at; ++it) {
            Rational lo = max(it->a, p.dom.lo.at);
            Rational hi = min(it->b, p.dom.hi.at);
            if (!(lo < hi)) continue;
            if (p.slope.is_zero()) {
                atoms.push_back({p.intercept, it->density * (hi - lo)});
                continue;
            }
            Rational ya = p.apply(lo);
            Rational yb = p.apply(hi);
            pieces.push_back({min(ya, yb), max(ya, yb), it->density / abs(p.slope)});
        }
    }
    for (const auto& a : mu.atoms()) atoms.push_back({f(a.x), a.mass});
    return {f.space(), std::move(pieces), std::move(atoms)};
}

}  // namespace nds
