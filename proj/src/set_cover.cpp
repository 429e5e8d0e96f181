#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>

#include "nds/cover.hpp"
#include "nds/error.hpp"

namespace nds {

namespace {

// Element sets as member lists; keeps only inclusion-minimal ones (covering
// those covers the rest).
std::vector<std::vector<std::uint32_t>> minimal_elements(std::vector<std::vector<std::uint32_t>> sets) {
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<std::vector<std::uint32_t>> kept;
    for (auto& s : sets) {
        bool dominated = false;
        for (const auto& k : kept)
            if (std::includes(s.begin(), s.end(), k.begin(), k.end())) {
                dominated = true;
                break;
            }
        if (!dominated) kept.push_back(std::move(s));
    }
    return kept;
}

// Points whose member sets are pairwise disjoint, fewest members first.
std::size_t independent_bound(const std::vector<std::vector<std::uint32_t>>& elems, std::size_t members) {
    std::vector<char> used(members, 0);
    std::size_t n = 0;
    for (const auto& e : elems) {  // already sorted by size
        bool free = std::none_of(e.begin(), e.end(), [&](std::uint32_t m) { return used[m]; });
        if (!free) continue;
        for (auto m : e) used[m] = 1;
        ++n;
    }
    return n;
}

std::size_t greedy_cover(const std::vector<std::vector<std::uint32_t>>& elems, std::size_t members) {
    std::vector<std::vector<std::uint32_t>> by_member(members);
    for (std::uint32_t e = 0; e < elems.size(); ++e)
        for (auto m : elems[e]) by_member[m].push_back(e);
    std::vector<char> done(elems.size(), 0);
    std::size_t left = elems.size();
    // lazy greedy: stale gains are only ever too high
    std::priority_queue<std::pair<std::size_t, std::int64_t>> pq;
    for (std::uint32_t m = 0; m < members; ++m) pq.push({by_member[m].size(), -static_cast<std::int64_t>(m)});
    std::size_t picks = 0;
    while (left > 0) {
        auto [gain, neg] = pq.top();
        pq.pop();
        auto m = static_cast<std::size_t>(-neg);
        std::size_t fresh = 0;
        for (auto e : by_member[m]) fresh += !done[e];
        if (fresh != gain) {
            pq.push({fresh, neg});
            continue;
        }
        if (fresh == 0) break;
        for (auto e : by_member[m])
            if (!done[e]) {
                done[e] = 1;
                --left;
            }
        ++picks;
    }
    return picks;
}

struct Exact {
    const std::vector<std::uint32_t>& masks;
    std::size_t best;

    void search(std::uint32_t chosen, std::size_t depth) {
        if (depth >= best) return;
        // the uncovered element with the fewest options, and a disjointness bound
        const std::uint32_t* pick = nullptr;
        std::uint32_t used = 0;
        std::size_t lb = 0;
        for (const auto& m : masks) {
            if (m & chosen) continue;
            if (!pick || std::popcount(m) < std::popcount(*pick)) pick = &m;
            if (!(m & used)) {
                used |= m;
                ++lb;
            }
        }
        if (!pick) {
            best = depth;
            return;
        }
        if (depth + lb >= best) return;
        for (std::uint32_t bits = *pick; bits; bits &= bits - 1) search(chosen | (bits & -bits), depth + 1);
    }
};

}  // namespace

SubcoverCount minimal_subcover_count(const IntervalCover& cover, std::span<const Rational> points,
                                     std::size_t exact_cap) {
    const auto members = cover.members();
    std::vector<std::vector<std::uint32_t>> elems;
    for (const auto& x : points) {
        std::vector<std::uint32_t> e;
        for (std::uint32_t m = 0; m < members.size(); ++m)
            if (members[m].contains(x)) e.push_back(m);
        if (e.empty()) throw DomainError("point outside every member");
        elems.push_back(std::move(e));
    }
    if (elems.empty()) return {0, 0, true};
    elems = minimal_elements(std::move(elems));
    SubcoverCount out;
    out.upper = greedy_cover(elems, members.size());
    out.lower = independent_bound(elems, members.size());
    if (members.size() <= std::min<std::size_t>(exact_cap, 32) && out.lower < out.upper) {
        std::vector<std::uint32_t> masks;
        for (const auto& e : elems) {
            std::uint32_t m = 0;
            for (auto i : e) m |= std::uint32_t{1} << i;
            masks.push_back(m);
        }
        Exact ex{masks, out.upper};
        ex.search(0, 0);
        out.lower = out.upper = ex.best;
    }
    out.exact = out.lower == out.upper;
    return out;
}

}  // namespace nds
