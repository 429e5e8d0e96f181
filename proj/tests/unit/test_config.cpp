#include "doctest.h"
#include "nds/config.hpp"
#include "nds/error.hpp"
#include "support.hpp"

using namespace nds;
using nds::testing::q;

namespace {
const SpaceKind I = SpaceKind::Interval;

int parse_error_line(std::string_view text) {
    try {
        (void)parse_config(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

Rational small_rational(testing::Gen& g) { return Rational(g.integer(-40, 40), g.integer(1, 12)); }

Term random_term(testing::Gen& g, bool map) {
    static const char* maps[] = {"id", "const", "tent", "doubling", "affine", "pwl"};
    static const char* parts[] = {"trivial", "uniform", "cuts"};
    Term t;
    t.name = map ? maps[g.integer(0, 5)] : parts[g.integer(0, 2)];
    std::size_t n = t.name == "const" || t.name == "uniform" ? 1
                    : t.name == "affine"                     ? 2
                    : t.name == "pwl"                        ? 2 * static_cast<std::size_t>(g.integer(2, 4))
                    : t.name == "cuts"                       ? static_cast<std::size_t>(g.integer(1, 4))
                                                             : 0;
    for (std::size_t i = 0; i < n; ++i) t.args.push_back(t.name == "uniform" ? Rational(g.integer(1, 9)) : small_rational(g));
    return t;
}

RunConfig random_config(testing::Gen& g) {
    RunConfig c;
    c.space = g.coin() ? I : SpaceKind::Circle;
    c.maps.prefix.clear();
    c.maps.tail.clear();
    for (auto i = g.integer(0, 2); i > 0; --i) c.maps.prefix.push_back(random_term(g, true));
    for (auto i = g.integer(1, 3); i > 0; --i) c.maps.tail.push_back(random_term(g, true));
    if (g.coin()) c.lipschitz = Rational(g.integer(1, 50), g.integer(1, 7));
    if (g.coin()) {
        c.measure.lebesgue = false;
        for (auto i = g.integer(0, 3); i > 0; --i)
            c.measure.pieces.push_back({small_rational(g), small_rational(g), small_rational(g)});
        for (auto i = g.integer(g.coin() ? 1 : 0, 2); i > 0; --i)
            c.measure.atoms.push_back({small_rational(g), small_rational(g)});
        if (c.measure.pieces.empty() && c.measure.atoms.empty()) c.measure.atoms.push_back({q(1, 2), 1});
    }
    if (g.coin()) {
        c.partition.explicit_terms = {};
        c.partition.generator = Term{g.coin() ? "independent" : "ex_id", {Rational(g.integer(1, 5))}};
    } else {
        c.partition.explicit_terms.prefix.clear();
        c.partition.explicit_terms.tail.clear();
        for (auto i = g.integer(0, 2); i > 0; --i) c.partition.explicit_terms.prefix.push_back(random_term(g, false));
        for (auto i = g.integer(1, 2); i > 0; --i) c.partition.explicit_terms.tail.push_back(random_term(g, false));
    }
    for (auto i = g.integer(0, 3); i > 0; --i) c.family.push_back(random_term(g, false));
    for (auto i = g.integer(0, 3); i > 0; --i) c.cover.emplace_back(small_rational(g), small_rational(g));
    c.horizon = static_cast<std::size_t>(g.integer(1, 30));
    c.eps.clear();
    for (auto i = g.integer(1, 4); i > 0; --i) c.eps.push_back(Rational(1, g.integer(1, 200)));
    c.grid = Rational(1, g.integer(1, 1 << 16));
    c.base = g.coin() ? LogBase::E : LogBase::Two;
    c.window = static_cast<std::size_t>(g.integer(0, 9));
    c.cap_cells = static_cast<std::size_t>(g.integer(1, 1 << 24));
    c.k = static_cast<std::size_t>(g.integer(1, 5));
    c.threads = static_cast<unsigned>(g.integer(1, 8));
    c.axiom_check = g.coin();
    c.shift = static_cast<std::size_t>(g.integer(1, 4));
    c.certificate_eps = Rational(1, g.integer(1, 1000));
    switch (g.integer(0, 2)) {
        case 0: c.density = Term{"uniform", {}}; break;
        case 1: c.density = Term{"staircase", {Rational(g.integer(1, 30))}}; break;
        default:
            c.density = Term{"pc", {}};
            for (auto i = g.integer(1, 3); i > 0; --i)
                for (int j = 0; j < 3; ++j) c.density.args.push_back(small_rational(g));
    }
    c.steps = static_cast<std::size_t>(g.integer(0, 20));
    if (g.coin()) c.out = "reports/run " + std::to_string(g.integer(0, 99));
    return c;
}
}  // namespace

TEST_CASE("round trip on random configs") {
    testing::Gen g(2024);
    for (int trial = 0; trial < 300; ++trial) {
        RunConfig c = random_config(g);
        std::string text = serialize_config(c);
        RunConfig back = parse_config(text);
        CHECK(back == c);
        CHECK(serialize_config(back) == text);
    }
}

TEST_CASE("defaults round trip") {
    RunConfig c;
    CHECK(parse_config(serialize_config(c)) == c);
    CHECK(parse_config("") == c);
}

TEST_CASE("grammar forms") {
    auto c = parse_config(R"(
        # comments and blank lines are skipped
        space = circle
        maps = prefix [const 1/2] tail [tent, affine 1 0.25]
        measure = pc [(0, 1/2, 2)] atoms []
        partition = uniform 4
        family = [uniform 2, cuts 1/3 2/3]
        cover = [(-1/8, 5/8), (3/8, 9/8)]
        eps = 1/16
        log_base = 2
        density = staircase 16
        out = /tmp/some dir
    )");
    CHECK(c.space == SpaceKind::Circle);
    REQUIRE(c.maps.prefix.size() == 1);
    CHECK(c.maps.prefix[0] == Term{"const", {q(1, 2)}});
    CHECK(c.maps.tail[1] == Term{"affine", {1, q(1, 4)}});
    CHECK_FALSE(c.measure.lebesgue);
    CHECK(c.measure.pieces == std::vector<DensityPiece>{{0, q(1, 2), 2}});
    CHECK(c.partition.explicit_terms.tail == std::vector<Term>{{"uniform", {4}}});
    CHECK(c.family.size() == 2);
    CHECK(c.cover.size() == 2);
    CHECK(c.eps == std::vector<Rational>{q(1, 16)});
    CHECK(c.base == LogBase::Two);
    CHECK(c.density == Term{"staircase", {16}});
    CHECK(c.out == "/tmp/some dir");
    CHECK(build_cover(c).size() == 2);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(parse_error_line("horizon = 3\nbogus = 1\n") == 2);
    CHECK(parse_error_line("\n\nmaps = prefix [tent] \n") == 3);
    CHECK(parse_error_line("maps = [tent\n") == 1);
    CHECK(parse_error_line("maps = spin\n") == 1);
    CHECK(parse_error_line("horizon = 1\nhorizon = 2\n") == 2);
    CHECK(parse_error_line("horizon = -3\n") == 1);
    CHECK(parse_error_line("eps = [1/0]\n") == 1);
    CHECK(parse_error_line("partition = uniform 1/2\n") == 1);
    CHECK(parse_error_line("measure = pc [(0, 1)]\n") == 1);
    CHECK(parse_error_line("no equals sign\n") == 1);
    CHECK(parse_error_line("maps = tent extra\n") == 1);
    CHECK(parse_error_line("horizon = 3 # trailing comment\n") == -1);
}

TEST_CASE("build_system") {
    auto tent = build_system(parse_config("maps = tent\n"), 5);
    for (std::size_t n = 1; n <= 5; ++n) CHECK(tent.measures.at(n) == RationalMeasure::lebesgue(I));

    auto collapse = build_system(parse_config("maps = prefix [const 1/2] tail [tent]\n"), 6);
    CHECK(collapse.measures.at(2) == RationalMeasure::dirac(I, q(1, 2)));
    CHECK(collapse.measures.at(3) == RationalMeasure::dirac(I, 1));
    CHECK(collapse.measures.at(4) == RationalMeasure::dirac(I, 0));
    CHECK(collapse.measures.at(6) == RationalMeasure::dirac(I, 0));

    auto mixed = build_system(parse_config("maps = tail [tent, doubling]\n"), 6);
    for (std::size_t n = 1; n <= 6; ++n) CHECK(mixed.measures.at(n) == RationalMeasure::lebesgue(I));

    // distinct diagnostics for the two build failures
    CHECK_THROWS_WITH_AS(build_system(parse_config("measure = pc [(0, 1, 1/2)]\n"), 2),
                         doctest::Contains("probability"), DomainError);
    CHECK_THROWS_WITH_AS(build_system(parse_config("maps = affine 2 0\n"), 2), doctest::Contains("leaves the space"),
                         DomainError);
}

TEST_CASE("partition sequences from configs") {
    auto c = parse_config("maps = id\npartition = ex_id 3\nhorizon = 4\n");
    auto sys = build_system(c, 4);
    auto p = build_partition_sequence(c, sys.measures);
    CHECK(p.at(3).size() == 27);
    CHECK_FALSE(p.cardinality_bound().has_value());

    c = parse_config("maps = id\npartition = independent 2\nhorizon = 5\n");
    sys = build_system(c, 5);
    CHECK(build_partition_sequence(c, sys.measures).cardinality_bound() == 2);

    c = parse_config("partition = prefix [trivial] tail [uniform 2, cuts 1/3]\n");
    auto q2 = build_partition_sequence(c, build_system(c, 2).measures);
    CHECK(q2.at(1).size() == 1);
    CHECK(q2.at(3) == Partition::from_cuts(I, {q(1, 3)}));
    CHECK(q2.at(4) == Partition::uniform(I, 2));
}
