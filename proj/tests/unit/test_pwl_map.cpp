#include "doctest.h"
#include "nds/error.hpp"
#include "nds/pwl_map.hpp"
#include "support.hpp"

using namespace nds;
using nds::testing::q;

namespace {
const SpaceKind I = SpaceKind::Interval;
const SpaceKind C = SpaceKind::Circle;
using Map = PiecewiseLinearMap;
}  // namespace

TEST_CASE("evaluate examples") {
    auto t = Map::tent();
    CHECK(t(q(1, 3)) == q(2, 3));
    CHECK(t(q(3, 4)) == q(1, 2));
    CHECK(t(q(1, 2)) == 1);
    CHECK(Map::identity(I)(q(5, 7)) == q(5, 7));
    CHECK_THROWS_AS((void)t(q(3, 2)), ArgumentError);
    CHECK(t.continuous());
    CHECK(t.lipschitz() == 2);
    CHECK(Map::doubling(C)(q(3, 4)) == q(1, 2));
    CHECK(Map::doubling(C).continuous());
    CHECK_FALSE(Map::doubling(I).continuous());
    CHECK_THROWS_AS(Map::affine(I, 2, 0), DomainError);
}

TEST_CASE("compose examples") {
    auto t = Map::tent();
    CHECK(compose(Map::identity(I), t) == t);
    CHECK(compose(t, Map::identity(I)) == t);
    auto tt = compose(t, t);
    CHECK(tt.pieces().size() == 4);
    for (const auto& p : tt.pieces()) CHECK(abs(p.slope) == 4);
    // symbolic branch oracle: T(T(x)) on each quarter
    for (int k = 0; k <= 64; ++k) {
        Rational x(k, 64);
        Rational y = x < q(1, 2) ? 2 * x : 2 - 2 * x;
        Rational z = y < q(1, 2) ? 2 * y : 2 - 2 * y;
        CHECK(tt(x) == z);
    }
    auto d = Map::doubling(C);
    CHECK(compose(d, d) == Map::affine(C, 4, 0));
    CHECK(compose(d, d).lipschitz() == 4);
}

TEST_CASE("normal form does not depend on how the map was assembled") {
    // mirror then tent equals tent, breakpoint ownership included
    auto mirror = Map::affine(I, -1, 1);
    CHECK(compose(Map::tent(), mirror) == Map::tent());
    // a redundant breakpoint disappears
    Map::Branch bs[] = {{0, 1, 0}, {q(1, 3), 1, 0}};
    CHECK(Map::branches(I, bs) == Map::identity(I));
}

TEST_CASE("composition is associative in normal form") {
    testing::Gen g(3);
    std::vector<Map> pool = {Map::tent(), Map::doubling(I), Map::identity(I), Map::constant(I, q(1, 3)),
                             Map::affine(I, q(1, 2), q(1, 4)), Map::affine(I, -1, 1)};
    std::vector<std::pair<Rational, Rational>> pts = {{0, q(1, 3)}, {q(1, 4), 1}, {q(2, 3), 0}, {1, q(1, 2)}};
    pool.push_back(Map::polyline(I, pts));
    for (int it = 0; it < 60; ++it) {
        const auto& f = pool[static_cast<std::size_t>(g.integer(0, 6))];
        const auto& h = pool[static_cast<std::size_t>(g.integer(0, 6))];
        const auto& k = pool[static_cast<std::size_t>(g.integer(0, 6))];
        auto a = compose(compose(f, h), k);
        auto b = compose(f, compose(h, k));
        CHECK(a == b);
        for (int j = 0; j <= 48; ++j) CHECK(a(Rational(j, 48)) == f(h(k(Rational(j, 48)))));
    }
}

TEST_CASE("preimage examples") {
    auto t = Map::tent();
    CHECK(preimage(t, parse_interval_set("[0,1/2]")) == parse_interval_set("[0,1/4]+[3/4,1]"));
    IntervalSet s = parse_interval_set("(1/8,1/3]+{1/2}");
    CHECK(preimage(Map::identity(I), s) == s);
    auto c = Map::constant(I, q(1, 3));
    CHECK(preimage(c, s) == IntervalSet::whole(I));
    CHECK(preimage(c, parse_interval_set("[1/2,1]")).empty());
}

TEST_CASE("preimage respects unions and intersections") {
    testing::Gen g(5);
    auto rnd = [&] {
        std::vector<Segment> segs;
        for (int i = 0, n = static_cast<int>(g.integer(0, 3)); i < n; ++i) {
            Rational a(g.integer(0, 12), 12);
            Rational b(g.integer(0, 12), 12);
            if (b < a) std::swap(a, b);
            segs.push_back({g.coin() ? Cut::before(a) : Cut::after(a), g.coin() ? Cut::before(b) : Cut::after(b)});
        }
        return IntervalSet(segs) & IntervalSet::whole(I);
    };
    std::vector<Map> maps = {Map::tent(), compose(Map::tent(), Map::doubling(I)), Map::doubling(I),
                             Map::affine(I, q(-1, 2), q(3, 4))};
    for (int it = 0; it < 200; ++it) {
        const auto& f = maps[static_cast<std::size_t>(it % 4)];
        auto a = rnd();
        auto b = rnd();
        CHECK(preimage(f, a | b) == (preimage(f, a) | preimage(f, b)));
        CHECK(preimage(f, a & b) == (preimage(f, a) & preimage(f, b)));
        for (int j = 0; j <= 60; ++j) {
            Rational x(j, 60);
            CHECK(preimage(f, a).contains(x) == a.contains(f(x)));
        }
    }
}

TEST_CASE("pullback examples") {
    auto halves = Partition::uniform(I, 2);
    CHECK(pullback_partition(Map::identity(I), halves) == halves);
    auto pb = pullback_partition(Map::tent(), halves);
    // exact: 3/4 maps to 1/2, so it sits with the middle cell
    Partition exact(I, {parse_interval_set("[0,1/4)+(3/4,1]"), parse_interval_set("[1/4,3/4]")});
    CHECK(pb == exact);
    Partition loose(I, {parse_interval_set("[0,1/4)+[3/4,1]"), parse_interval_set("[1/4,3/4)")});
    CHECK(equal_mod_null(pb, loose));
    CHECK(pullback_partition(Map::constant(I, q(1, 5)), Partition::uniform(I, 5)).size() == 1);
}

TEST_CASE("pushforward examples") {
    auto leb = RationalMeasure::lebesgue(I);
    CHECK(pushforward_measure(Map::tent(), leb) == leb);
    CHECK(pushforward_measure(Map::constant(I, q(1, 2)), leb) == RationalMeasure::dirac(I, q(1, 2)));
    CHECK(pushforward_measure(Map::doubling(C), RationalMeasure::lebesgue(C)) == RationalMeasure::lebesgue(C));
    RationalMeasure mixed(I, {{0, q(1, 2), 1}}, {{q(3, 4), q(1, 2)}});
    auto pushed = pushforward_measure(Map::tent(), mixed);
    CHECK(pushed.mass(IntervalSet::whole(I)) == 1);
    CHECK(pushed.atoms().size() == 1);
    CHECK(pushed.atoms()[0].x == q(1, 2));
}

TEST_CASE("pushforward agrees with preimage masses") {
    testing::Gen g(9);
    std::vector<Map> maps = {Map::tent(), Map::doubling(I), compose(Map::tent(), Map::tent()),
                             Map::affine(I, q(1, 2), q(1, 3)), Map::constant(I, q(2, 7))};
    for (int it = 0; it < 100; ++it) {
        auto mu = g.measure(I, g.coin());
        const auto& f = maps[static_cast<std::size_t>(it % 5)];
        auto nu = pushforward_measure(f, mu);
        auto p = g.dyadic_partition(I, 3);
        for (const auto& c : p.cells()) CHECK(nu.mass(c) == mu.mass(preimage(f, c)));
    }
}
