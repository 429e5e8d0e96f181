#include "nds/suites.hpp"

#include <functional>
#include <thread>

#include "nds/error.hpp"
#include "nds/prop32.hpp"

namespace nds {

namespace {

using Map = PiecewiseLinearMap;
constexpr SpaceKind I = SpaceKind::Interval;
constexpr SpaceKind C = SpaceKind::Circle;

PartitionSequence named(const Partition& p, const std::string& name) {
    return PartitionSequence::programmatic(p.space(), name, [p](std::size_t) { return p; }).with_bound(p.size());
}

MeasureSequence lebesgue_under(SystemSequence sys) {
    SpaceKind s = sys.space();
    return MeasureSequence(std::move(sys), RationalMeasure::lebesgue(s));
}

std::vector<TheoremReport> power_rule(const SuiteOptions& o) {
    std::vector<TheoremReport> out;
    auto tent = lebesgue_under(SystemSequence::constant(Map::tent()));
    auto halves = named(Partition::uniform(I, 2), "halves");
    std::vector<std::size_t> ks = o.k ? std::vector<std::size_t>{*o.k} : std::vector<std::size_t>{2, 3};
    for (std::size_t k : ks) out.push_back(verify_metric_power_rule(tent, halves, k, std::max<std::size_t>(2, 12 / k)));
    auto id = lebesgue_under(SystemSequence::constant(Map::identity(I)));
    out.push_back(verify_metric_power_rule(id, named(Partition::uniform(I, 4), "quarters"), o.k.value_or(2), 6));
    return out;
}

std::vector<TheoremReport> shift_invariance(const SuiteOptions&) {
    auto halves = named(Partition::uniform(I, 2), "halves");
    auto mixed = lebesgue_under(SystemSequence::periodic({}, {Map::tent(), Map::doubling(I)}));
    auto tent = lebesgue_under(SystemSequence::constant(Map::tent()));
    return {verify_shift_invariance(mixed, halves, 4, 12), verify_shift_invariance(tent, halves, 4, 12)};
}

std::vector<TheoremReport> commutativity(const SuiteOptions&) {
    auto leb = RationalMeasure::lebesgue(I);
    auto halves = Partition::uniform(I, 2);
    return {verify_commutativity(Map::tent(), Map::doubling(I), leb, leb, halves),
            verify_commutativity(Map::tent(), Map::identity(I), leb, leb, halves),
            verify_commutativity(Map::identity(I), Map::identity(I), leb, leb, halves)};
}

std::vector<TheoremReport> variational(const SuiteOptions& o) {
    VariationalOptions v;
    v.topological = default_topological_options();
    v.topological.threads = o.threads;
    auto tent = lebesgue_under(SystemSequence::constant(Map::tent()));
    auto collapse = lebesgue_under(SystemSequence::periodic({Map::constant(I, Rational(1, 2))}, {Map::tent()}));
    auto fam = dyadic_family(I, 0, 3);
    return {verify_variational_inequality(tent, fam, v), verify_variational_inequality(collapse, fam, v)};
}

std::vector<TheoremReport> restriction(const SuiteOptions&) {
    auto glued = lebesgue_under(SystemSequence::constant(glued_map()));
    auto fam = dyadic_family(I, 2, 2);
    auto left = SetSequence::constant(IntervalSet({Segment::half_open(0, Rational(1, 2))}));
    auto whole = SetSequence::constant(IntervalSet::whole(I));
    return {verify_restriction(glued, left, fam, 10), verify_restriction(glued, whole, fam, 10)};
}

std::vector<TheoremReport> pf(const SuiteOptions&) {
    std::vector<TheoremReport> out;
    Map::Branch three[] = {{0, 3, 0}, {Rational(1, 3), 3, -1}, {Rational(2, 3), 3, -2}};
    Map triple = Map::branches(C, three);
    out.push_back(verify_pf_stabilization(Map::doubling(C), Density::staircase(C, 16)));
    out.push_back(verify_pf_stabilization(triple, Density::staircase(C, 27)));
    out.push_back(verify_pf_stabilization(Map::doubling(C), Density(C, {{0, Rational(1, 2), 2}})));
    return out;
}

std::vector<TheoremReport> equiconjugacy(const SuiteOptions&) {
    auto tent = SystemSequence::constant(Map::tent());
    auto flipped = SystemSequence::constant(compose(Map::affine(I, -1, 1), Map::tent()));
    SemiconjugacySpec pi(SystemSequence::constant(Map::affine(I, -1, 1)), tent, flipped, 4);
    auto leb = RationalMeasure::lebesgue(I);
    return {verify_equiconjugacy(pi, leb, leb, dyadic_family(I, 1, 3), Rational(1, 100), 12)};
}

std::vector<TheoremReport> topological_power(const SuiteOptions& o) {
    auto opts = default_topological_options();
    opts.threads = o.threads;
    auto tent = SystemSequence::constant(Map::tent());
    std::vector<std::size_t> ks = o.k ? std::vector<std::size_t>{*o.k} : std::vector<std::size_t>{2, 3};
    std::vector<TheoremReport> out;
    for (std::size_t k : ks) out.push_back(verify_topological_power_rule(tent, k, opts));
    return out;
}

std::vector<TheoremReport> prop32(const SuiteOptions&) {
    auto tent = lebesgue_under(SystemSequence::constant(Map::tent()));
    auto rep = verify_prop32(tent, named(Partition::uniform(I, 2), "halves"), named(Partition::uniform(I, 4), "quarters"), 8);
    TheoremReport r;
    r.theorem = "entropy-properties";
    r.at("system", "tent");
    r.at("P", "halves");
    r.at("Q", "quarters");
    r.at("horizon", "8");
    for (const auto& item : rep.items) r.check_true("item " + item.item, item.pass, item.witness, true);
    return {r};
}

struct Suite {
    const char* name;
    std::function<std::vector<TheoremReport>(const SuiteOptions&)> run;
};

const std::vector<Suite>& suites() {
    static const std::vector<Suite> s = {
        {"power-rule", power_rule},       {"shift-invariance", shift_invariance},
        {"commutativity", commutativity}, {"variational", variational},
        {"restriction", restriction},     {"pf-stabilization", pf},
        {"equiconjugacy", equiconjugacy}, {"topological-power-rule", topological_power},
        {"entropy-properties", prop32},
    };
    return s;
}

}  // namespace

TopologicalOptions default_topological_options() {
    TopologicalOptions o;
    o.epsilons = {Rational(1, 8), Rational(1, 16), Rational(1, 32), Rational(1, 64)};
    o.horizon = 10;
    o.resolution = Rational(1, 1 << 14);
    return o;
}

PiecewiseLinearMap glued_map() {
    Map::Branch bs[] = {{0, 2, 0}, {Rational(1, 4), 2, Rational(-1, 2)}, {Rational(3, 4), -2, Rational(5, 2)}};
    return Map::branches(I, bs);
}

std::vector<PartitionSequence> dyadic_family(SpaceKind space, int from_level, int to_level) {
    std::vector<PartitionSequence> out;
    for (int j = from_level; j <= to_level; ++j)
        out.push_back(named(Partition::uniform(space, std::int64_t{1} << j), "dyadic-" + std::to_string(j)));
    return out;
}

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.emplace_back(s.name);
    return out;
}

std::vector<TheoremReport> run_suite(std::string_view name, const SuiteOptions& opts) {
    const auto& all = suites();
    if (name == "all") {
        std::vector<std::vector<TheoremReport>> parts(all.size());
        unsigned threads = std::max(1u, opts.threads);
        SuiteOptions inner = opts;
        inner.threads = 1;
        auto work = [&](std::size_t start) {
            for (std::size_t i = start; i < all.size(); i += threads) parts[i] = all[i].run(inner);
        };
        if (threads == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        }
        std::vector<TheoremReport> out;
        for (auto& p : parts)
            for (auto& r : p) out.push_back(std::move(r));
        return out;
    }
    for (const auto& s : all)
        if (name == s.name) return s.run(opts);
    throw ArgumentError("unknown suite '" + std::string(name) + "'");
}

}  // namespace nds
