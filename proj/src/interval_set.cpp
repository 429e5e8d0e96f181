#include "nds/interval_set.hpp"

#include <algorithm>

#include "nds/error.hpp"

namespace nds {

std::string_view to_string(SpaceKind k) { return k == SpaceKind::Interval ? "interval" : "circle"; }

Rational space_distance(SpaceKind k, const Rational& x, const Rational& y) {
    Rational d = abs(x - y);
    if (k == SpaceKind::Circle) d = min(d, Rational(1) - d);
    return d;
}

Rational space_diameter(SpaceKind k) { return k == SpaceKind::Interval ? Rational(1) : Rational(1, 2); }

Segment whole_segment(SpaceKind k) {
    return k == SpaceKind::Interval ? Segment::closed(0, 1) : Segment::half_open(0, 1);
}

std::string Segment::str() const {
    if (is_point()) return "{" + lo.at.str() + "}";
    std::string s = lo.side == Side::Before ? "[" : "(";
    s += lo.at.str() + "," + hi.at.str();
    s += hi.side == Side::After ? "]" : ")";
    return s;
}

IntervalSet::IntervalSet(std::vector<Segment> segs) {
    std::erase_if(segs, [](const Segment& s) { return s.empty(); });
    auto by_lo = [](const Segment& a, const Segment& b) { return a.lo < b.lo; };
    if (!std::is_sorted(segs.begin(), segs.end(), by_lo)) std::sort(segs.begin(), segs.end(), by_lo);
    // merge in place
    std::size_t out = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (out > 0 && !(segs[out - 1].hi < segs[i].lo)) {
            if (segs[out - 1].hi < segs[i].hi) segs[out - 1].hi = segs[i].hi;
        } else {
            if (out != i) segs[out] = segs[i];
            ++out;
        }
    }
    segs.resize(out);
    segs_ = std::move(segs);
}

bool IntervalSet::contains(const Rational& x) const {
    auto it = std::upper_bound(segs_.begin(), segs_.end(), Cut::before(x),
                               [](const Cut& c, const Segment& s) { return c < s.lo; });
    if (it == segs_.begin()) return false;
    return std::prev(it)->contains(x);
}

bool IntervalSet::contains(const Segment& s) const {
    if (s.empty()) return true;
    auto it = std::upper_bound(segs_.begin(), segs_.end(), s.lo,
                               [](const Cut& c, const Segment& seg) { return c < seg.lo; });
    if (it == segs_.begin()) return false;
    --it;
    return it->lo <= s.lo && s.hi <= it->hi;
}

bool IntervalSet::subset_of(const IntervalSet& o) const {
    return std::all_of(segs_.begin(), segs_.end(), [&](const Segment& s) { return o.contains(s); });
}

bool IntervalSet::intersects(const IntervalSet& o) const {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < segs_.size() && j < o.segs_.size()) {
        const auto& a = segs_[i];
        const auto& b = o.segs_[j];
        if (std::max(a.lo, b.lo) < std::min(a.hi, b.hi)) return true;
        if (a.hi < b.hi) ++i; else ++j;
    }
    return false;
}

Rational IntervalSet::length() const {
    Rational s = 0;
    for (const auto& seg : segs_) s += seg.length();
    return s;
}

std::string IntervalSet::str() const {
    if (segs_.empty()) return "{}";
    std::string out;
    for (std::size_t i = 0; i < segs_.size(); ++i) {
        if (i) out += "+";
        out += segs_[i].str();
    }
    return out;
}

IntervalSet operator|(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Segment> all(a.segs_.begin(), a.segs_.end());
    all.insert(all.end(), b.segs_.begin(), b.segs_.end());
    return IntervalSet(std::move(all));
}

IntervalSet operator&(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Segment> out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.segs_.size() && j < b.segs_.size()) {
        const auto& x = a.segs_[i];
        const auto& y = b.segs_[j];
        Segment s{std::max(x.lo, y.lo), std::min(x.hi, y.hi)};
        if (!s.empty()) out.push_back(s);
        if (x.hi < y.hi) ++i; else ++j;
    }
    return IntervalSet(IntervalSet::Sorted{}, std::move(out));
}

IntervalSet operator-(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Segment> out;
    std::size_t j = 0;
    for (const auto& x : a.segs_) {
        Cut cur = x.lo;
        while (j < b.segs_.size() && !(x.lo < b.segs_[j].hi)) ++j;
        std::size_t k = j;
        while (k < b.segs_.size() && b.segs_[k].lo < x.hi) {
            Segment piece{cur, b.segs_[k].lo};
            if (!piece.empty()) out.push_back(piece);
            cur = std::max(cur, b.segs_[k].hi);
            ++k;
        }
        Segment tail{cur, x.hi};
        if (!tail.empty()) out.push_back(tail);
    }
    return IntervalSet(IntervalSet::Sorted{}, std::move(out));
}

IntervalSet parse_interval_set(std::string_view text) {
    std::vector<Segment> segs;
    auto trim = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return s;
    };
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t plus = text.find('+', pos);
        std::string_view piece = trim(text.substr(pos, plus == std::string_view::npos ? text.npos : plus - pos));
        if (piece.size() < 3) throw ArgumentError("bad interval '" + std::string(piece) + "'");
        char open = piece.front();
        char close = piece.back();
        std::string_view body = piece.substr(1, piece.size() - 2);
        if (open == '{' && close == '}') {
            segs.push_back(Segment::point(parse_rational(trim(body))));
        } else {
            auto comma = body.find(',');
            if (comma == std::string_view::npos || (open != '[' && open != '(') || (close != ']' && close != ')'))
                throw ArgumentError("bad interval '" + std::string(piece) + "'");
            Rational a = parse_rational(trim(body.substr(0, comma)));
            Rational b = parse_rational(trim(body.substr(comma + 1)));
            if (b < a) throw ArgumentError("reversed interval '" + std::string(piece) + "'");
            segs.push_back({open == '[' ? Cut::before(a) : Cut::after(a), close == ']' ? Cut::after(b) : Cut::before(b)});
        }
        if (plus == std::string_view::npos) break;
        pos = plus + 1;
    }
    return IntervalSet(std::move(segs));
}

}  // namespace nds
