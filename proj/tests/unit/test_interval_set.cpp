#include "doctest.h"
#include "nds/interval_set.hpp"
#include "support.hpp"

using namespace nds;
using nds::testing::q;

TEST_CASE("segments express open, closed and point sets") {
    CHECK(Segment::closed(q(1, 4), q(1, 2)).contains(q(1, 2)));
    CHECK_FALSE(Segment::half_open(q(1, 4), q(1, 2)).contains(q(1, 2)));
    CHECK_FALSE(Segment::open(q(1, 4), q(1, 2)).contains(q(1, 4)));
    CHECK(Segment::point(q(1, 3)).contains(q(1, 3)));
    CHECK(Segment::point(q(1, 3)).is_point());
    CHECK(Segment{Cut::after(q(1, 3)), Cut::before(q(1, 3))}.empty());
}

TEST_CASE("normalization merges adjacent pieces") {
    IntervalSet s{Segment::half_open(0, q(1, 2)), Segment::closed(q(1, 2), 1)};
    CHECK(s == IntervalSet::whole(SpaceKind::Interval));
    IntervalSet t{Segment::half_open(0, q(1, 2)), Segment::left_open(q(1, 2), 1)};
    CHECK(t.size() == 2);
    CHECK(t.complement(SpaceKind::Interval) == IntervalSet{Segment::point(q(1, 2))});
    CHECK((t | IntervalSet{Segment::point(q(1, 2))}) == IntervalSet::whole(SpaceKind::Interval));
}

TEST_CASE("set algebra on random unions obeys the usual laws") {
    testing::Gen g(7);
    auto rnd = [&] {
        std::vector<Segment> segs;
        for (int i = 0, n = static_cast<int>(g.integer(0, 4)); i < n; ++i) {
            Rational a(g.integer(0, 16), 16);
            Rational b(g.integer(0, 16), 16);
            if (b < a) std::swap(a, b);
            segs.push_back({g.coin() ? Cut::before(a) : Cut::after(a), g.coin() ? Cut::before(b) : Cut::after(b)});
        }
        return IntervalSet(segs) & IntervalSet::whole(SpaceKind::Interval);
    };
    for (int it = 0; it < 300; ++it) {
        IntervalSet a = rnd(), b = rnd(), c = rnd();
        CHECK((a | b) == (b | a));
        CHECK((a & (b | c)) == ((a & b) | (a & c)));
        CHECK(((a - b) | (a & b)) == a);
        CHECK((a - b).intersects(b) == false);
        CHECK((a & b).subset_of(a));
        CHECK(a.complement(SpaceKind::Interval).complement(SpaceKind::Interval) == a);
        for (int k = 0; k <= 32; ++k) {
            Rational x(k, 32);
            CHECK((a | b).contains(x) == (a.contains(x) || b.contains(x)));
            CHECK((a - b).contains(x) == (a.contains(x) && !b.contains(x)));
        }
    }
}

TEST_CASE("interval set text form round-trips") {
    IntervalSet s = parse_interval_set("[0,1/4)+(3/4,1]+{1/2}");
    CHECK(s.size() == 3);
    CHECK(parse_interval_set(s.str()) == s);
    CHECK(s.contains(q(1, 2)));
    CHECK_FALSE(s.contains(q(3, 4)));
}

TEST_CASE("circle distance wraps") {
    CHECK(space_distance(SpaceKind::Circle, q(1, 10), q(9, 10)) == q(1, 5));
    CHECK(space_distance(SpaceKind::Interval, q(1, 10), q(9, 10)) == q(4, 5));
}
