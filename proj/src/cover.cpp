#include "nds/cover.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "nds/error.hpp"

namespace nds {

namespace {

Rational point_to_set(SpaceKind space, const Rational& x, const IntervalSet& s) {
    if (s.contains(x)) return 0;
    std::optional<Rational> best;
    for (const auto& seg : s.segments()) {
        Rational d = min(space_distance(space, x, seg.lo.at), space_distance(space, x, seg.hi.at));
        best = best ? min(*best, d) : d;
    }
    return *best;
}

Rational diameter(SpaceKind space) { return space == SpaceKind::Circle ? Rational(1, 2) : Rational(1); }

}  // namespace

IntervalCover::IntervalCover(SpaceKind space, std::vector<IntervalSet> members)
    : space_(space), members_(std::move(members)) {
    if (members_.empty()) throw DomainError("a cover needs at least one member");
    IntervalSet all;
    for (const auto& m : members_) {
        if (m.empty()) throw DomainError("cover member is empty");
        all = all | m;
    }
    IntervalSet missing = IntervalSet::whole(space) - all;
    if (!missing.empty()) throw DomainError("members do not cover " + missing.str());
}

std::string IntervalCover::str() const {
    std::string out;
    for (const auto& m : members_) {
        if (!out.empty()) out += " ; ";
        out += m.str();
    }
    return out;
}

Rational lebesgue_number(const IntervalCover& cover) {
    const SpaceKind space = cover.space();
    std::vector<IntervalSet> comp;
    for (const auto& m : cover.members()) {
        comp.push_back(m.complement(space));
        if (comp.back().empty()) return diameter(space);
    }
    std::vector<Rational> ends = {Rational(0)};
    if (space == SpaceKind::Interval) ends.push_back(1);
    for (const auto& c : comp)
        for (const auto& s : c.segments()) {
            ends.push_back(s.lo.at);
            ends.push_back(s.hi.at);
        }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    // x ↦ max_U dist(x, U^c) is piecewise linear with slopes in {-1, 0, 1};
    // its breaks sit at endpoints and at midpoints between two endpoints
    std::vector<Rational> cand = ends;
    for (std::size_t a = 0; a < ends.size(); ++a)
        for (std::size_t b = a + 1; b < ends.size(); ++b) {
            cand.push_back((ends[a] + ends[b]) / 2);
            if (space == SpaceKind::Circle) {
                Rational w = (ends[a] + ends[b] + 1) / 2;
                cand.push_back(w < Rational(1) ? w : w - 1);
            }
        }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::optional<Rational> best;
    for (const auto& x : cand) {
        if (space == SpaceKind::Circle && !(x < Rational(1))) continue;
        Rational g = 0;
        for (const auto& c : comp) g = max(g, point_to_set(space, x, c));
        best = best ? min(*best, g) : g;
    }
    return min(*best, diameter(space));
}

CoverSequence CoverSequence::constant(IntervalCover u, std::optional<Rational> bound) {
    return periodic({}, {std::move(u)}, std::move(bound));
}

CoverSequence CoverSequence::periodic(std::vector<IntervalCover> prefix, std::vector<IntervalCover> tail,
                                      std::optional<Rational> bound) {
    if (tail.empty()) throw ArgumentError("cover sequence needs a nonempty tail");
    CoverSequence s;
    SpaceKind space = tail.front().space();
    std::optional<Rational> lo;
    for (const auto* v : {&prefix, &tail})
        for (const auto& u : *v) {
            if (u.space() != space) throw DomainError("covers live on different spaces");
            Rational l = lebesgue_number(u);
            lo = lo ? min(*lo, l) : l;
        }
    s.computed_ = *lo;
    if (bound && (bound->sign() <= 0 || s.computed_ < *bound))
        throw CertificateError("declared Lebesgue bound " + bound->str() + " exceeds the computed " + s.computed_.str());
    s.bound_ = bound ? *bound : s.computed_;
    s.prefix_ = std::move(prefix);
    s.tail_ = std::move(tail);
    return s;
}

const IntervalCover& CoverSequence::at(std::size_t n) const {
    if (n == 0) throw ArgumentError("cover sequences start at n = 1");
    if (n <= prefix_.size()) return prefix_[n - 1];
    return tail_[(n - 1 - prefix_.size()) % tail_.size()];
}

IntervalCover bowen_join_cover(const SystemSequence& sys, const CoverSequence& u, std::size_t k, std::size_t m,
                               std::size_t cap_members) {
    if (m == 0 || k == 0) throw ArgumentError("cover join needs k >= 1 and m >= 1");
    const SpaceKind space = u.space();
    std::vector<IntervalSet> cur(u.at(k).members().begin(), u.at(k).members().end());
    for (std::size_t i = 1; i < m; ++i) {
        const auto& f = sys.composition(k, i);
        std::vector<IntervalSet> pulled;
        for (const auto& v : u.at(k + i).members()) pulled.push_back(preimage(f, v));
        std::vector<IntervalSet> next;
        for (const auto& a : cur)
            for (const auto& b : pulled) {
                IntervalSet c = a & b;
                if (c.empty()) continue;
                next.push_back(std::move(c));
                if (next.size() > cap_members) throw ResourceError("cover join exceeds the member cap");
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
    }
    return IntervalCover(space, std::move(cur));
}

CoverSequence refine_cover_sequence(const SystemSequence& sys, const CoverSequence& u, std::size_t m,
                                    std::size_t cap_members) {
    if (m == 0) throw ArgumentError("refinement depth must be at least 1");
    if (sys.space() != u.space()) throw DomainError("system and covers live on different spaces");
    if (m == 1) return u;
    if (!sys.continuous()) throw UnsupportedError("Lebesgue certificates for refined covers need continuous maps");
    Rational lip = sys.lipschitz_bound();
    Rational scale = 1;
    for (std::size_t i = 1; i < m; ++i) scale *= max(lip, Rational(1));
    std::size_t start = std::max(u.prefix_length(), sys.prefix_length()) + 1;
    std::size_t period = std::lcm(u.period(), sys.period());
    std::vector<IntervalCover> prefix;
    std::vector<IntervalCover> tail;
    for (std::size_t n = 1; n < start; ++n) prefix.push_back(bowen_join_cover(sys, u, n, m, cap_members));
    for (std::size_t n = start; n < start + period; ++n) tail.push_back(bowen_join_cover(sys, u, n, m, cap_members));
    return CoverSequence::periodic(std::move(prefix), std::move(tail), u.lebesgue_bound() / scale);
}

std::vector<Rational> grid_points(SpaceKind space, const Rational& resolution) {
    if (resolution.sign() <= 0 || Rational(1) < resolution) throw ArgumentError("grid resolution must be in (0, 1]");
    std::vector<Rational> out;
    for (Rational x = 0; x < Rational(1); x += resolution) out.push_back(x);
    if (space == SpaceKind::Interval) out.push_back(1);
    return out;
}

std::string CoverEstimate::csv() const {
    std::string out = "n,members,lower,upper,exact,log_upper_over_n\n";
    char buf[64];
    for (std::size_t n = 1; n <= counts.size(); ++n) {
        const auto& c = counts[n - 1];
        std::snprintf(buf, sizeof buf, "%.12g", std::log(static_cast<double>(c.upper)) / static_cast<double>(n));
        out += std::to_string(n) + "," + std::to_string(members[n - 1]) + "," + std::to_string(c.lower) + "," +
               std::to_string(c.upper) + "," + (c.exact ? "1" : "0") + "," + buf + "\n";
    }
    return out;
}

CoverEstimate cover_entropy_estimate(const SystemSequence& sys, const CoverSequence& u, std::size_t horizon,
                                     const Rational& resolution, std::size_t window, LogBase base,
                                     std::size_t exact_cap) {
    if (horizon == 0) throw ArgumentError("cover estimate needs horizon >= 1");
    if (!(Rational(0) < u.lebesgue_bound())) throw CertificateError("cover sequence has no positive Lebesgue bound");
    auto pts = grid_points(u.space(), resolution);
    CoverEstimate out;
    for (std::size_t n = 1; n <= horizon; ++n) {
        IntervalCover v = bowen_join_cover(sys, u, 1, n);
        out.members.push_back(v.size());
        out.counts.push_back(minimal_subcover_count(v, pts, exact_cap));
    }
    if (horizon == 1) {
        out.value = log_in(base, static_cast<double>(out.counts[0].upper));
        return out;
    }
    std::size_t w = window == 0 ? (horizon + 1) / 2 : window;
    std::size_t first = std::max<std::size_t>(2, horizon >= w + 1 ? horizon - w + 1 : 2);
    double c1 = static_cast<double>(out.counts[0].upper);
    out.value = -1e300;
    for (std::size_t n = first; n <= horizon; ++n)
        out.value = std::max(out.value, log_in(base, static_cast<double>(out.counts[n - 1].upper) / c1) /
                                            static_cast<double>(n - 1));
    return out;
}

IntervalSet open_arc(SpaceKind space, const Rational& a, const Rational& b) {
    if (!(a < b)) throw ArgumentError("open arc needs a < b");
    if (space == SpaceKind::Interval) {
        if (!(a < Rational(1)) || !(Rational(0) < b)) throw DomainError("open interval misses [0, 1]");
        Cut lo = a.sign() < 0 ? Cut::before(0) : Cut::after(a);
        Cut hi = Rational(1) < b ? Cut::after(1) : Cut::before(b);
        return IntervalSet({Segment{lo, hi}});
    }
    if (!(b - a < Rational(1))) return IntervalSet::whole(space);
    Rational shift = floor(a);
    Rational lo = a - shift;
    Rational hi = b - shift;
    if (Rational(1) < hi) return IntervalSet({Segment::half_open(0, hi - 1), Segment::open(lo, 1)});
    if (hi == Rational(1)) return IntervalSet({Segment::open(lo, 1)});
    return IntervalSet({Segment::open(lo, hi)});
}

}  // namespace nds
