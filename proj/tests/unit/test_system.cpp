#include <cmath>

#include "doctest.h"
#include "nds/bowen_join.hpp"
#include "nds/error.hpp"
#include "nds/system.hpp"
#include "support.hpp"

using namespace nds;
using nds::testing::q;

namespace {
const SpaceKind I = SpaceKind::Interval;
const SpaceKind C = SpaceKind::Circle;
using Map = PiecewiseLinearMap;

Map glued() {
    Map::Branch bs[] = {{0, 2, 0}, {q(1, 4), 2, q(-1, 2)}, {q(3, 4), -2, q(5, 2)}};
    return Map::branches(I, bs);
}

double trace_entropy(const MeasureSequence& mu, const PartitionSequence& p, std::size_t n) {
    return partition_entropy(mu.at(1), bowen_join(mu.system(), p, 1, n));
}
}  // namespace

TEST_CASE("measure sequences") {
    auto leb = RationalMeasure::lebesgue(I);
    MeasureSequence tent(SystemSequence::constant(Map::tent()), leb);
    for (std::size_t n = 1; n <= 6; ++n) CHECK(tent.at(n) == leb);

    MeasureSequence collapse(SystemSequence::periodic({Map::constant(I, q(1, 2))}, {Map::tent()}), leb);
    CHECK(collapse.at(2) == RationalMeasure::dirac(I, q(1, 2)));
    CHECK(collapse.at(3) == RationalMeasure::dirac(I, 1));
    CHECK(collapse.at(4) == RationalMeasure::dirac(I, 0));
    CHECK(collapse.at(7) == RationalMeasure::dirac(I, 0));
    CHECK(collapse.find_cycle(8) == std::make_pair(std::size_t{4}, std::size_t{5}));

    MeasureSequence mixed(SystemSequence::periodic({}, {Map::tent(), Map::doubling(I)}), leb);
    for (std::size_t n = 1; n <= 6; ++n) CHECK(mixed.at(n) == leb);

    CHECK_THROWS_AS(MeasureSequence(SystemSequence::constant(Map::doubling(C)), leb), DomainError);
}

TEST_CASE("invariance holds on random systems") {
    testing::Gen g(21);
    std::vector<Map> pool = {Map::tent(), Map::doubling(I), Map::identity(I), Map::constant(I, q(1, 3)), glued(),
                             Map::affine(I, q(1, 2), q(1, 4))};
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Map> prefix;
        std::vector<Map> tail;
        for (auto i = g.integer(0, 2); i > 0; --i) prefix.push_back(pool[static_cast<std::size_t>(g.integer(0, 5))]);
        for (auto i = g.integer(1, 3); i > 0; --i) tail.push_back(pool[static_cast<std::size_t>(g.integer(0, 5))]);
        MeasureSequence mu(SystemSequence::periodic(prefix, tail), g.measure(I, g.coin()));
        CHECK_FALSE(mu.check_invariance(8).has_value());
        for (std::size_t k : {2, 3}) {
            MeasureSequence pw = mu.power(k);
            CHECK_FALSE(pw.check_invariance(4).has_value());
            for (std::size_t n = 1; n <= 3; ++n) CHECK(pw.at(n) == mu.at((n - 1) * k + 1));
        }
        CHECK(check_equicontinuity(mu.system(), 4, 4));
    }
}

TEST_CASE("power system") {
    auto tent = SystemSequence::constant(Map::tent());
    CHECK(power_system(tent, 1).map(3) == Map::tent());
    auto t2 = power_system(tent, 2);
    CHECK(t2.period() == 1);
    CHECK(t2.map(1).pieces().size() == 4);
    for (const auto& p : t2.map(1).pieces()) CHECK(abs(p.slope) == 4);
    CHECK(t2.lipschitz_bound() == 4);

    auto f = Map::tent();
    auto g = Map::doubling(I);
    auto fg = SystemSequence::periodic({}, {f, g});
    auto p2 = power_system(fg, 2);
    CHECK(p2.period() == 1);
    CHECK(p2.map(1) == compose(g, f));
    CHECK(p2.map(5) == compose(g, f));

    // prefix straddling the block boundary
    auto pre = SystemSequence::periodic({Map::constant(I, q(1, 2)), f, g}, {f});
    auto p3 = power_system(pre, 2);
    CHECK(p3.map(1) == compose(f, Map::constant(I, q(1, 2))));
    CHECK(p3.map(2) == compose(f, g));
    CHECK(p3.map(3) == compose(f, f));
}

TEST_CASE("shift system") {
    auto tent = Map::tent();
    auto sys = SystemSequence::periodic({Map::constant(I, q(1, 2))}, {tent});
    CHECK(shift_system(sys, 1).map(1) == Map::constant(I, q(1, 2)));
    auto s2 = shift_system(sys, 2);
    CHECK(s2.prefix_length() == 0);
    CHECK(s2.map(1) == tent);
    CHECK(s2.map(9) == tent);

    auto per = SystemSequence::periodic({}, {tent, Map::doubling(I), Map::identity(I)});
    for (std::size_t k = 1; k <= 7; ++k)
        for (std::size_t n = 1; n <= 6; ++n) CHECK(shift_system(per, k).map(n) == per.map(n + k - 1));

    MeasureSequence mu(sys, RationalMeasure::lebesgue(I));
    for (std::size_t k = 1; k <= 4; ++k) CHECK(mu.shifted(k).at(1) == mu.at(k));
}

TEST_CASE("declared Lipschitz bound") {
    CHECK(SystemSequence::periodic({}, {Map::tent()}, Rational(3)).lipschitz_bound() == 3);
    CHECK_THROWS_AS(SystemSequence::periodic({}, {Map::tent()}, Rational(1)), ArgumentError);
}

TEST_CASE("restriction") {
    auto leb = RationalMeasure::lebesgue(I);
    MeasureSequence tent(SystemSequence::constant(Map::tent()), leb);
    auto whole = restrict_system(tent, SetSequence::constant(IntervalSet::whole(I)), 6);
    CHECK(whole.mass == 1);
    CHECK(whole.measures.at(3) == leb);

    MeasureSequence mu(SystemSequence::constant(glued()), leb);
    auto left = restrict_system(mu, SetSequence::constant({Segment::half_open(0, q(1, 2))}), 6);
    CHECK(left.mass == q(1, 2));
    CHECK(left.measures.at(1) == RationalMeasure(I, {{0, q(1, 2), 2}}));
    CHECK(left.measures.at(5) == RationalMeasure(I, {{0, q(1, 2), 2}}));

    MeasureSequence squeeze(SystemSequence::constant(Map::affine(I, q(1, 2), 0)), leb);
    try {
        (void)restrict_system(squeeze, SetSequence::constant({Segment::closed(0, q(1, 2))}), 4);
        FAIL("expected a certificate error");
    } catch (const CertificateError& e) {
        CHECK(std::string(e.what()).find("mu_2") != std::string::npos);
    }
    MeasureSequence ident(SystemSequence::constant(Map::identity(I)), leb);
    CHECK_THROWS_AS(
        restrict_system(ident, SetSequence::periodic({IntervalSet::whole(I)}, {{Segment::half_open(0, q(1, 2))}}), 3),
        CertificateError);
}

TEST_CASE("semiconjugacy pullbacks") {
    auto tent = SystemSequence::constant(Map::tent());
    auto id = SystemSequence::constant(Map::identity(I));
    auto halves = PartitionSequence::constant(Partition::uniform(I, 2));
    SemiconjugacySpec trivial(id, tent, tent, 5);
    CHECK(trivial.verified_for_all_n());
    CHECK(pullback_by_semiconjugacy(trivial, halves).at(4) == halves.at(4));

    // x ↦ 1-x carries the tent to its mirror image 1 - T
    auto mirror = SystemSequence::constant(Map::affine(I, -1, 1));
    auto flipped = SystemSequence::constant(compose(Map::affine(I, -1, 1), Map::tent()));
    CHECK_THROWS_AS(SemiconjugacySpec(mirror, tent, tent, 3), CertificateError);
    SemiconjugacySpec mir(mirror, tent, flipped, 5);
    auto leb = RationalMeasure::lebesgue(I);
    auto dyadic = PartitionSequence::constant(Partition::from_cuts(I, {q(1, 8), q(1, 2), q(5, 8)}));
    auto pulled = pullback_by_semiconjugacy(mir, dyadic);
    CHECK(equal_mod_null(pulled.at(1), Partition::from_cuts(I, {q(3, 8), q(1, 2), q(7, 8)})));
    MeasureSequence mu(tent, leb);
    MeasureSequence nu(flipped, pushforward_measure(Map::affine(I, -1, 1), leb));
    for (std::size_t n = 1; n <= 6; ++n) CHECK(trace_entropy(nu, dyadic, n) == doctest::Approx(trace_entropy(mu, pulled, n)).epsilon(1e-12));

    auto dbl = SystemSequence::constant(Map::doubling(C));
    SemiconjugacySpec self(dbl, dbl, dbl, 4);
    auto chalves = PartitionSequence::constant(Partition::uniform(C, 2));
    auto cp = pullback_by_semiconjugacy(self, chalves);
    CHECK(cp.at(1) == Partition(C, {IntervalSet{Segment::half_open(0, q(1, 4)), Segment::half_open(q(1, 2), q(3, 4))},
                                    IntervalSet{Segment::half_open(q(1, 4), q(1, 2)), Segment::half_open(q(3, 4), 1)}}));
    MeasureSequence cm(dbl, RationalMeasure::lebesgue(C));
    for (std::size_t n = 1; n <= 6; ++n)
        CHECK(trace_entropy(cm, chalves, n) == doctest::Approx(trace_entropy(cm, cp, n)).epsilon(1e-12));
}

TEST_CASE("rokhlin distance with exactness flag") {
    auto leb = RationalMeasure::lebesgue(I);
    MeasureSequence mu(SystemSequence::constant(Map::tent()), leb);
    auto halves = PartitionSequence::constant(Partition::uniform(I, 2));
    auto quarters = PartitionSequence::constant(Partition::uniform(I, 4));
    auto d = rokhlin_distance(mu, halves, quarters, 3);
    CHECK(d.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(d.exact);
    CHECK_FALSE(rokhlin_distance(mu, halves, quarters, 1).exact);
    CHECK(rokhlin_distance(mu, halves, halves, 3).value == 0);
    CHECK(rokhlin_distance(mu, halves, quarters, 3).value == rokhlin_distance(mu, quarters, halves, 3).value);
    CHECK_THROWS_AS(rokhlin_distance(mu, halves, quarters, 0), ArgumentError);
}
