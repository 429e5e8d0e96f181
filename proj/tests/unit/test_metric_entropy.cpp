#include <cmath>

#include "doctest.h"
#include "nds/error.hpp"
#include "nds/metric_entropy.hpp"
#include "support.hpp"

using namespace nds;
using nds::testing::q;

namespace {
const SpaceKind I = SpaceKind::Interval;
const SpaceKind C = SpaceKind::Circle;
using Map = PiecewiseLinearMap;
const double kLog2 = std::log(2.0);
const double kLog3 = std::log(3.0);

PartitionSequence ex_id(std::int64_t k) {
    return PartitionSequence::programmatic(I, "k^n cells", [k](std::size_t n) {
        std::int64_t cells = 1;
        for (std::size_t i = 0; i < n; ++i) cells *= k;
        return Partition::uniform(I, cells);
    });
}

PartitionSequence constant(const Partition& p) { return PartitionSequence::constant(p).with_bound(p.size()); }

std::vector<Map> map_pool() {
    Map::Branch bs[] = {{0, 2, 0}, {q(1, 4), 2, q(-1, 2)}, {q(3, 4), -2, q(5, 2)}};
    return {Map::tent(), Map::doubling(I), Map::identity(I), Map::constant(I, q(1, 3)), Map::branches(I, bs),
            Map::affine(I, -1, 1)};
}
}  // namespace

TEST_CASE("bowen join examples") {
    auto halves = constant(Partition::uniform(I, 2));
    auto id = SystemSequence::constant(Map::identity(I));
    CHECK(bowen_join(id, halves, 1, 5) == Partition::uniform(I, 2));
    auto tent = SystemSequence::constant(Map::tent());
    auto j3 = bowen_join(tent, halves, 1, 3);
    CHECK(j3.size() == 8);
    for (const auto& m : cell_masses(RationalMeasure::lebesgue(I), j3)) CHECK(m == q(1, 8));
    auto k3 = ex_id(3);
    for (std::size_t n = 1; n <= 5; ++n) CHECK(bowen_join(id, k3, 1, n) == k3.at(n));
    CHECK_THROWS_AS(bowen_join(tent, halves, 1, 0), ArgumentError);
}

TEST_CASE("materialized and iterated joins agree") {
    testing::Gen g(31);
    auto pool = map_pool();
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Map> tail;
        for (auto i = g.integer(1, 3); i > 0; --i) tail.push_back(pool[static_cast<std::size_t>(g.integer(0, 5))]);
        auto sys = SystemSequence::periodic({}, tail);
        auto p = PartitionSequence::periodic({}, {g.dyadic_partition(I, 2), g.dyadic_partition(I, 2)});
        std::size_t k = static_cast<std::size_t>(g.integer(1, 3));
        std::size_t n = static_cast<std::size_t>(g.integer(1, 6));
        auto a = bowen_join(sys, p, k, n, {JoinMode::Materialize});
        auto b = bowen_join(sys, p, k, n, {JoinMode::Iterate});
        CHECK(a == b);
    }
    // circle maps with wrapped images
    auto csys = SystemSequence::periodic({}, {Map::doubling(C), Map::affine(C, 3, q(1, 5))});
    auto cp = PartitionSequence::constant(Partition::from_cuts(C, {q(1, 3), q(2, 3)}));
    CHECK(bowen_join(csys, cp, 1, 5, {JoinMode::Materialize}) == bowen_join(csys, cp, 1, 5, {JoinMode::Iterate}));
}

TEST_CASE("cell cap") {
    auto tent = SystemSequence::constant(Map::tent());
    auto halves = constant(Partition::uniform(I, 2));
    JoinOptions small{JoinMode::Iterate, 1000};
    CHECK_THROWS_AS(bowen_join(tent, halves, 1, 12, small), ResourceError);
    small.mode = JoinMode::Materialize;
    CHECK_THROWS_AS(bowen_join(tent, halves, 1, 12, small), ResourceError);
    CHECK_NOTHROW(bowen_join(tent, halves, 1, 9, small));
}

TEST_CASE("entropy trace examples") {
    auto leb = RationalMeasure::lebesgue(I);
    MeasureSequence id(SystemSequence::constant(Map::identity(I)), leb);
    auto t = entropy_trace(id, ex_id(3), 8);
    for (std::size_t n = 1; n <= 8; ++n) CHECK(std::abs(t.at(n) - static_cast<double>(n) * kLog3) <= 1e-12);
    CHECK(std::abs(estimate_limsup(t).estimate - kLog3) <= 1e-12);

    MeasureSequence tent(SystemSequence::constant(Map::tent()), leb);
    auto tt = entropy_trace(tent, constant(Partition::uniform(I, 2)), 12);
    for (std::size_t n = 1; n <= 12; ++n) CHECK(std::abs(tt.at(n) - static_cast<double>(n) * kLog2) <= 1e-12);

    auto flat = entropy_trace(id, constant(Partition::uniform(I, 4)), 10);
    for (std::size_t n = 1; n <= 10; ++n) CHECK(flat.at(n) == flat.at(1));
    CHECK(estimate_limsup(flat).estimate == 0);
    CHECK(flat.csv().rfind("n,H_n,H_n/n\n1,", 0) == 0);
}

TEST_CASE("estimator") {
    EntropyTrace lin;
    for (int n = 1; n <= 20; ++n) lin.h.push_back(0.7 * n);
    auto e = estimate_limsup(lin);
    CHECK(e.estimate == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(e.slope == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(e.max_ratio == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(e.first == 11);
    CHECK(e.last == 20);
    for (std::size_t k : {2, 3, 4})
        CHECK(std::abs(estimate_limsup_multiples(lin, k).estimate - e.estimate) <= 1e-9);

    EntropyTrace stall;
    for (int n = 1; n <= 40; ++n) stall.h.push_back(std::min(n, 5) * kLog2);
    auto s = estimate_limsup(stall);
    CHECK(s.slope == doctest::Approx(0.0));
    CHECK(s.estimate < 0.2);
    EntropyTrace longer = stall;
    for (int n = 41; n <= 200; ++n) longer.h.push_back(5 * kLog2);
    CHECK(estimate_limsup(longer).estimate < s.estimate);

    EntropyTrace one;
    one.h.push_back(0.5);
    CHECK(estimate_limsup(one).estimate == 0.5);
    CHECK_THROWS_AS(estimate_limsup(lin, 21), ArgumentError);
    CHECK_THROWS_AS(estimate_limsup(EntropyTrace{}), ArgumentError);
}

TEST_CASE("family estimate") {
    auto leb = RationalMeasure::lebesgue(I);
    MeasureSequence tent(SystemSequence::constant(Map::tent()), leb);
    CHECK(metric_entropy_estimate(tent, {constant(Partition::trivial(I))}, 10).value == 0);
    CHECK(std::abs(metric_entropy_estimate(tent, {constant(Partition::uniform(I, 2))}, 10).value - kLog2) <= 1e-9);
    std::vector<PartitionSequence> dyadic;
    for (int j = 1; j <= 4; ++j) dyadic.push_back(constant(Partition::uniform(I, std::int64_t{1} << j)));
    auto fam = metric_entropy_estimate(tent, dyadic, 10);
    CHECK(std::abs(fam.value - kLog2) <= 1e-9);
    for (const auto& m : fam.members) CHECK(std::abs(m.estimate - kLog2) <= 1e-9);
    CHECK_THROWS_AS(metric_entropy_estimate(tent, {}, 10), ArgumentError);
}

TEST_CASE("refined sequences shift the trace") {
    auto leb = RationalMeasure::lebesgue(I);
    auto tent = SystemSequence::constant(Map::tent());
    auto halves = constant(Partition::uniform(I, 2));
    auto r1 = refine_sequence(halves, tent, 1);
    CHECK(r1.at(3) == halves.at(3));
    auto r2 = refine_sequence(halves, tent, 2);
    CHECK(r2.at(1).size() == 4);
    for (const auto& m : cell_masses(leb, r2.at(5))) CHECK(m == q(1, 4));
    CHECK(r2.cardinality_bound() == 4u);

    testing::Gen g(41);
    auto pool = map_pool();
    TraceOptions keep;
    keep.keep_masses = true;
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Map> tail;
        for (auto i = g.integer(1, 2); i > 0; --i) tail.push_back(pool[static_cast<std::size_t>(g.integer(0, 5))]);
        auto sys = SystemSequence::periodic({pool[static_cast<std::size_t>(g.integer(0, 5))]}, tail);
        MeasureSequence mu(sys, g.measure(I, g.coin()));
        auto p = PartitionSequence::periodic({g.dyadic_partition(I, 2)}, {g.dyadic_partition(I, 2)});
        std::size_t m = static_cast<std::size_t>(g.integer(1, 3));
        auto base = entropy_trace(mu, p, 6 + m, keep);
        auto refined = entropy_trace(mu, refine_sequence(p, sys, m), 6, keep);
        for (std::size_t n = 1; n <= 6; ++n) CHECK(refined.masses[n - 1] == base.masses[n + m - 2]);
    }
}

TEST_CASE("axiom checks") {
    auto a = check_axiom_A(ex_id(3), 8, 100);
    CHECK_FALSE(a.holds);
    CHECK(a.first_violation == 5u);
    CHECK_FALSE(a.exact);
    auto c = check_axiom_A(constant(Partition::uniform(I, 3)), 4);
    CHECK(c.holds);
    CHECK(c.bound == 3);
    CHECK(c.exact);
    CHECK(check_coarser(constant(Partition::uniform(I, 4)), constant(Partition::uniform(I, 2)), 5).holds);
    auto rev = check_coarser(constant(Partition::uniform(I, 2)), constant(Partition::uniform(I, 4)), 5);
    CHECK_FALSE(rev.holds);
    CHECK(rev.first_violation == 1u);
}

TEST_CASE("trace properties on random systems") {
    testing::Gen g(43);
    auto pool = map_pool();
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Map> tail;
        for (auto i = g.integer(1, 3); i > 0; --i) tail.push_back(pool[static_cast<std::size_t>(g.integer(0, 5))]);
        MeasureSequence mu(SystemSequence::periodic({}, tail), g.measure(I, g.coin()));
        auto p = PartitionSequence::periodic({}, {g.dyadic_partition(I, 2), g.dyadic_partition(I, 3)});
        auto qs = PartitionSequence::periodic({}, {g.dyadic_partition(I, 3)});
        auto tp = entropy_trace(mu, p, 7);
        auto tq = entropy_trace(mu, qs, 7);
        double bound = 0;
        double cond = 0;
        for (std::size_t n = 1; n <= 7; ++n) {
            if (n > 1) CHECK(tp.at(n) >= tp.at(n - 1) - 1e-12);
            bound += std::log(static_cast<double>(p.at(n).size()));
            CHECK(tp.at(n) <= bound + 1e-9);
            cond += conditional_entropy(mu.at(n), p.at(n), qs.at(n));
            CHECK(tp.at(n) <= tq.at(n) + cond + 1e-9);
        }
        auto d = rokhlin_distance(mu, p, qs, 7);
        CHECK(std::abs(estimate_limsup(tp).estimate - estimate_limsup(tq).estimate) <= d.value + 1e-9);
    }
}
