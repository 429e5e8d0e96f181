#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nds/cover.hpp"
#include "nds/density.hpp"
#include "nds/system.hpp"

namespace nds {

// A named constructor with rational arguments: `tent`, `affine 2 0`, `uniform 4`, ...
struct Term {
    std::string name;
    std::vector<Rational> args;
    friend bool operator==(const Term&, const Term&) = default;
};

struct TermSequence {
    std::vector<Term> prefix;
    std::vector<Term> tail;
    friend bool operator==(const TermSequence&, const TermSequence&) = default;
};

struct MeasureSpec {
    bool lebesgue = true;
    std::vector<DensityPiece> pieces;
    std::vector<PointMass> atoms;
    friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;
};

// Either explicit prefix/tail partitions or a generator (`independent k`, `ex_id k`).
struct PartitionSpec {
    std::optional<Term> generator;
    TermSequence explicit_terms;
    friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;
};

struct RunConfig {
    SpaceKind space = SpaceKind::Interval;
    TermSequence maps{{}, {Term{"tent", {}}}};
    std::optional<Rational> lipschitz;
    MeasureSpec measure;
    PartitionSpec partition{std::nullopt, {{}, {Term{"uniform", {Rational(2)}}}}};
    std::vector<Term> family;  // constant partitions; empty means {partition}
    std::vector<std::pair<Rational, Rational>> cover;  // open arcs (a, b)
    std::size_t horizon = 12;
    std::vector<Rational> eps = {Rational(1, 8), Rational(1, 16), Rational(1, 32), Rational(1, 64)};
    Rational grid = Rational(1, 16384);
    LogBase base = LogBase::E;
    std::size_t window = 0;
    std::size_t cap_cells = 1'000'000;
    std::size_t k = 2;
    unsigned threads = 1;
    bool axiom_check = false;
    std::size_t shift = 1;  // topological runs also estimate f_{shift,∞} when > 1
    Rational certificate_eps = Rational(1, 100);
    Term density{"uniform", {}};
    std::size_t steps = 10;
    std::string out;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Line-oriented `key = value` grammar; `#` starts a comment. Throws ParseError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
// Canonical text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

PiecewiseLinearMap build_map(SpaceKind space, const Term& t);
Partition build_partition(SpaceKind space, const Term& t);

struct BuiltSystem {
    SystemSequence system;
    MeasureSequence measures;
};
// Checks that μ_1 is a probability measure and f_n μ_n = μ_{n+1} for n ≤ horizon.
BuiltSystem build_system(const RunConfig& c, std::size_t horizon);
PartitionSequence build_partition_sequence(const RunConfig& c, const MeasureSequence& mu);
std::vector<PartitionSequence> build_family(const RunConfig& c, const MeasureSequence& mu);
IntervalCover build_cover(const RunConfig& c);
Density build_density(const RunConfig& c);

}  // namespace nds
