#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nds/measure.hpp"
#include "nds/partition.hpp"
#include "nds/rational.hpp"

namespace nds::testing {

inline Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

// Fixed-seed generators for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    bool coin() { return integer(0, 1) == 1; }

    // k-adic partition at the given level with cells formed by random unions
    // of the 2^level (or k^level) elementary intervals.
    Partition grouped_partition(SpaceKind space, std::int64_t pieces, std::int64_t groups) {
        std::vector<std::vector<Segment>> cells(static_cast<std::size_t>(groups));
        for (std::int64_t i = 0; i < pieces; ++i) {
            Rational a(i, pieces);
            Rational b(i + 1, pieces);
            Segment s = (i + 1 == pieces && space == SpaceKind::Interval) ? Segment::closed(a, b) : Segment::half_open(a, b);
            cells[static_cast<std::size_t>(i < groups ? i : integer(0, groups - 1))].push_back(s);
        }
        std::vector<IntervalSet> out;
        for (auto& c : cells)
            if (!c.empty()) out.emplace_back(std::move(c));
        return Partition(space, std::move(out));
    }

    Partition dyadic_partition(SpaceKind space, int max_level) {
        std::int64_t level = integer(0, max_level);
        std::int64_t pieces = std::int64_t{1} << level;
        return grouped_partition(space, pieces, integer(1, pieces));
    }

    // Random mixed measure on a dyadic mesh, optionally with atoms.
    RationalMeasure measure(SpaceKind space, bool with_atoms) {
        std::int64_t pieces = std::int64_t{1} << integer(0, 3);
        std::vector<std::int64_t> w;
        std::int64_t total = 0;
        for (std::int64_t i = 0; i < pieces; ++i) {
            w.push_back(integer(0, 4));
            total += w.back();
        }
        std::vector<std::int64_t> aw;
        std::vector<Rational> ax;
        if (with_atoms) {
            for (int i = 0, n = static_cast<int>(integer(1, 3)); i < n; ++i) {
                ax.emplace_back(integer(0, 15), 16);
                aw.push_back(integer(1, 4));
                total += aw.back();
            }
        }
        if (total == 0) {
            w[0] = 1;
            total = 1;
        }
        std::vector<DensityPiece> dp;
        for (std::int64_t i = 0; i < pieces; ++i)
            dp.push_back({Rational(i, pieces), Rational(i + 1, pieces), Rational(w[static_cast<std::size_t>(i)] * pieces, total)});
        std::vector<PointMass> atoms;
        for (std::size_t i = 0; i < ax.size(); ++i) atoms.push_back({ax[i], Rational(aw[i], total)});
        return RationalMeasure(space, std::move(dp), std::move(atoms));
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace nds::testing
