#include <cmath>

#include "doctest.h"
#include "nds/error.hpp"
#include "nds/independence.hpp"
#include "nds/metric_entropy.hpp"
#include "nds/misiurewicz.hpp"
#include "support.hpp"

using namespace nds;
using nds::testing::q;

namespace {
const SpaceKind I = SpaceKind::Interval;
const SpaceKind C = SpaceKind::Circle;
using Map = PiecewiseLinearMap;

MeasureSequence lebesgue_under(const Map& f) {
    return MeasureSequence(SystemSequence::constant(f), RationalMeasure::lebesgue(f.space()));
}

// Independent oracle for (a): walks each cell's segments directly.
Rational worst_defect(const std::vector<IntervalSet>& cores, const Partition& p, const RationalMeasure& mu) {
    Rational worst = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        IntervalSet inside;
        for (const auto& c : cores)
            if (!c.empty() && c.subset_of(p.cell(i))) inside = inside | c;
        worst = max(worst, mu.mass(p.cell(i)) - mu.mass(inside));
    }
    return worst;
}
}  // namespace

TEST_CASE("dyadic cells under Lebesgue") {
    auto p = PartitionSequence::constant(Partition::uniform(I, 8));
    auto mu = lebesgue_under(Map::tent());

    auto r = misiurewicz_check(p, mu, q(1, 100), 4);
    REQUIRE(r.ok());
    // interior cells lose 2·margin, so the largest margin is ε/2
    CHECK(r.certificate->margin == q(1, 200));
    CHECK(r.certificate->delta == q(1, 100));
    CHECK(r.certificate->max_defect == q(1, 100));
    CHECK(r.certificate->exact);

    auto fixed = certify_with_margin(p, mu, q(1, 100), q(1, 400), 4);
    REQUIRE(fixed.ok());
    CHECK(fixed.certificate->delta == q(1, 200));
    CHECK(fixed.certificate->max_defect == q(1, 200));
    auto audit = audit_certificate(*fixed.certificate, p, mu);
    CHECK(audit.ok());
    CHECK(audit.min_gap == q(1, 200));

    CHECK_FALSE(certify_with_margin(p, mu, q(1, 100), q(1, 100), 4).ok());
}

TEST_CASE("atoms inside and on the boundary") {
    auto halves = PartitionSequence::constant(Partition::uniform(I, 2));
    RationalMeasure inner(I, {{0, 1, q(1, 2)}}, {{q(1, 4), q(1, 2)}});
    MeasureSequence mu(SystemSequence::constant(Map::identity(I)), inner);
    auto r = misiurewicz_check(halves, mu, q(1, 10), 3);
    REQUIRE(r.ok());
    CHECK(r.certificate->cores[0][0].contains(q(1, 4)));
    CHECK(r.certificate->margin == q(1, 5));
    CHECK(audit_certificate(*r.certificate, halves, mu).ok());

    RationalMeasure edge(I, {{0, 1, q(1, 2)}}, {{q(1, 2), q(1, 2)}});
    MeasureSequence bad(SystemSequence::constant(Map::identity(I)), edge);
    auto f = misiurewicz_check(halves, bad, q(1, 10), 3);
    CHECK_FALSE(f.ok());
    REQUIRE(f.failure.has_value());
    CHECK(f.failure->n == 1);
    CHECK(f.failure->cell == 1);
}

TEST_CASE("trivial partition needs no margin") {
    auto r = misiurewicz_check(PartitionSequence::constant(Partition::trivial(C)), lebesgue_under(Map::doubling(C)),
                               q(1, 100), 2);
    CHECK(r.ok());
}

TEST_CASE("certificates re-verify on random inputs") {
    testing::Gen g(77);
    int certified = 0;
    for (int trial = 0; trial < 60; ++trial) {
        SpaceKind space = g.coin() ? I : C;
        std::vector<Partition> tail;
        for (auto i = g.integer(1, 3); i > 0; --i) tail.push_back(g.dyadic_partition(space, 3));
        auto p = PartitionSequence::periodic({}, tail);
        MeasureSequence mu(SystemSequence::constant(Map::identity(space)), g.measure(space, g.coin()));
        Rational eps(g.integer(1, 20), 100);
        auto r = misiurewicz_check(p, mu, eps, 4);
        if (!r.ok()) continue;
        ++certified;
        const auto& cert = *r.certificate;
        auto audit = audit_certificate(cert, p, mu);
        CHECK(audit.ok());
        for (std::size_t n = 1; n <= 4; ++n) CHECK_FALSE(eps < worst_defect(cert.cores[n - 1], p.at(n), mu.at(n)));
        // the margin is maximal among uniform margins: a slightly larger one fails
        Rational bigger = cert.margin + cert.margin / 1000;
        auto over = certify_with_margin(p, mu, eps, bigger, 4);
        if (over.ok()) CHECK(shrink_cells(p.at(1), bigger) == shrink_cells(p.at(1), cert.margin));
    }
    CHECK(certified > 20);
}

TEST_CASE("certificates pull back along an isometry") {
    auto mirror = Map::affine(I, -1, 1);
    auto pi = SystemSequence::constant(mirror);
    Partition base = Partition::from_cuts(I, {q(1, 4), q(1, 2), q(5, 8)});
    auto p = PartitionSequence::constant(base);
    auto mu = lebesgue_under(Map::identity(I));
    auto r = misiurewicz_check(p, mu, q(1, 50), 2);
    REQUIRE(r.ok());
    auto back = pullback_certificate(*r.certificate, pi);
    auto pulled = PartitionSequence::constant(pullback_partition(mirror, base));
    auto audit = audit_certificate(back, pulled, mu);
    CHECK(audit.ok());
    CHECK(audit.min_gap == audit_certificate(*r.certificate, p, mu).min_gap);
}

TEST_CASE("set distance") {
    IntervalSet a({Segment::closed(q(1, 10), q(2, 10))});
    IntervalSet b({Segment::closed(q(9, 10), 1)});
    CHECK(set_distance(I, a, b) == q(7, 10));
    CHECK(set_distance(C, a, b) == q(1, 10));
    CHECK(set_distance(I, a, a) == 0);
}

TEST_CASE("independent refinement examples") {
    auto id = lebesgue_under(Map::identity(I));
    auto p2 = independent_refinement_sequence(id, 2, 3);
    CHECK(p2.cardinality_bound() == 2);
    auto t2 = entropy_trace(id, p2, 3);
    CHECK(t2.at(3) == doctest::Approx(3 * std::log(2.0)).epsilon(1e-12));

    auto p3 = independent_refinement_sequence(id, 3, 5);
    auto t3 = entropy_trace(id, p3, 5);
    for (std::size_t n = 1; n <= 5; ++n) {
        CHECK(t3.at(n) == doctest::Approx(static_cast<double>(n) * std::log(3.0)).epsilon(1e-12));
        REQUIRE(p3.at(n).size() == 3);
        for (std::size_t i = 0; i < 3; ++i) CHECK(id.at(n).mass(p3.at(n).cell(i)) == q(1, 3));
    }
}

TEST_CASE("independent refinement under monotone bijections") {
    std::pair<Rational, Rational> pts[] = {{0, 0}, {q(1, 2), q(1, 4)}, {1, 1}};
    Map bend = Map::polyline(I, pts);
    std::pair<Rational, Rational> cpts[] = {{0, 0}, {q(1, 3), q(2, 3)}, {1, 1}};
    Map circ = Map::polyline(C, cpts);
    for (const Map& f : {bend, circ, Map::affine(C, 1, q(1, 3))}) {
        auto mu = lebesgue_under(f);
        auto p = independent_refinement_sequence(mu, 2, 5);
        auto t = entropy_trace(mu, p, 5);
        for (std::size_t n = 1; n <= 5; ++n)
            CHECK(t.at(n) == doctest::Approx(static_cast<double>(n) * std::log(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("independent refinement rejects unsupported inputs") {
    MeasureSequence atom(SystemSequence::constant(Map::identity(I)), RationalMeasure::dirac(I, q(1, 3)));
    CHECK_THROWS_AS(independent_refinement_sequence(atom, 2, 3), UnsupportedError);
    CHECK_THROWS_AS(independent_refinement_sequence(lebesgue_under(Map::tent()), 2, 3), UnsupportedError);
    CHECK_FALSE(is_injective(Map::doubling(C)));
    CHECK(is_injective(Map::affine(C, 1, q(1, 2))));
}
