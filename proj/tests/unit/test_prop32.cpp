#include <cmath>

#include "doctest.h"
#include "nds/prop32.hpp"
#include "support.hpp"

using namespace nds;
using nds::testing::q;

namespace {
const SpaceKind I = SpaceKind::Interval;
using Map = PiecewiseLinearMap;

PartitionSequence constant(const Partition& p) { return PartitionSequence::constant(p).with_bound(p.size()); }

void check_all(const Prop32Report& r) {
    for (const auto& item : r.items) {
        INFO(item.item << ": " << item.witness);
        CHECK(item.pass);
    }
}
}  // namespace

TEST_CASE("tent with halves and quarters") {
    MeasureSequence mu(SystemSequence::constant(Map::tent()), RationalMeasure::lebesgue(I));
    auto halves = constant(Partition::uniform(I, 2));
    auto quarters = constant(Partition::uniform(I, 4));
    auto r = verify_prop32(mu, halves, quarters, 6);
    REQUIRE(r.items.size() == 7);
    check_all(r);
    auto finer = verify_prop32(mu, quarters, halves, 6);
    check_all(finer);
    CHECK(finer.get("iii").witness.rfind("P finer than Q", 0) == 0);

    // finer sequence dominates, and both traces grow at the same rate
    auto tq = entropy_trace(mu, quarters, 8);
    auto th = entropy_trace(mu, halves, 8);
    for (std::size_t n = 1; n <= 8; ++n) CHECK(tq.at(n) >= th.at(n));
    CHECK(estimate_limsup(tq).estimate == doctest::Approx(estimate_limsup(th).estimate).epsilon(1e-12));
}

TEST_CASE("identity with k^n cells") {
    MeasureSequence mu(SystemSequence::constant(Map::identity(I)), RationalMeasure::lebesgue(I));
    auto ex = PartitionSequence::programmatic(I, "3^n cells", [](std::size_t n) {
        std::int64_t cells = 1;
        for (std::size_t i = 0; i < n; ++i) cells *= 3;
        return Partition::uniform(I, cells);
    });
    auto r = verify_prop32(mu, ex, constant(Partition::uniform(I, 2)), 5);
    check_all(r);
    // the join is P_n itself, so H_n = n log 3 against the bound Σ i log 3
    auto t = entropy_trace(mu, ex, 5);
    double sum = 0;
    for (std::size_t n = 1; n <= 5; ++n) {
        sum += static_cast<double>(n) * std::log(3.0);
        CHECK(t.at(n) == doctest::Approx(static_cast<double>(n) * std::log(3.0)).epsilon(1e-12));
        CHECK(t.at(n) <= sum + 1e-12);
    }
}

TEST_CASE("joined sequences") {
    auto a = PartitionSequence::periodic({}, {Partition::uniform(I, 2), Partition::uniform(I, 3)});
    auto b = PartitionSequence::periodic({Partition::trivial(I)}, {Partition::uniform(I, 5)}).with_bound(5);
    auto j = join_sequences(a, b);
    CHECK(j.is_periodic());
    CHECK(j.at(1).size() == 2);
    CHECK(j.at(2).size() == 7);
    CHECK(j.at(3).size() == 6);
    CHECK(j.at(10).size() == 7);
    CHECK_FALSE(j.cardinality_bound().has_value());
    CHECK(join_sequences(a.with_bound(3), b).cardinality_bound() == 15);
}

TEST_CASE("all items hold on random systems") {
    testing::Gen g(32);
    Map::Branch bs[] = {{0, 2, 0}, {q(1, 4), 2, q(-1, 2)}, {q(3, 4), -2, q(5, 2)}};
    std::vector<Map> pool = {Map::tent(), Map::doubling(I), Map::identity(I), Map::constant(I, q(1, 3)),
                             Map::branches(I, bs), Map::affine(I, -1, 1), Map::affine(I, q(1, 2), q(1, 4))};
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Map> tail;
        for (auto i = g.integer(1, 2); i > 0; --i) tail.push_back(pool[static_cast<std::size_t>(g.integer(0, 6))]);
        std::vector<Map> prefix;
        if (g.coin()) prefix.push_back(pool[static_cast<std::size_t>(g.integer(0, 6))]);
        MeasureSequence mu(SystemSequence::periodic(prefix, tail), g.measure(I, g.coin()));
        std::vector<Partition> pt;
        std::vector<Partition> qt;
        for (auto i = g.integer(1, 2); i > 0; --i) pt.push_back(g.dyadic_partition(I, 2));
        for (auto i = g.integer(1, 2); i > 0; --i) qt.push_back(g.dyadic_partition(I, 2));
        Prop32Options opts;
        opts.shift = static_cast<std::size_t>(g.integer(1, 3));
        opts.multiple = static_cast<std::size_t>(g.integer(2, 3));
        opts.refine = static_cast<std::size_t>(g.integer(1, 3));
        auto r = verify_prop32(mu, PartitionSequence::periodic({}, pt), PartitionSequence::periodic({}, qt), 6, opts);
        check_all(r);
    }
}
