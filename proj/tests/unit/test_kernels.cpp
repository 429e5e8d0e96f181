#include <cstdlib>

#include "doctest.h"
#include "nds/kernels.hpp"
#include "support.hpp"

using namespace nds;

namespace {
struct Lattice {
    std::vector<std::vector<std::int64_t>> rows;
    std::vector<const std::int64_t*> ptrs;
    LatticeRows view() {
        ptrs.clear();
        for (auto& r : rows) ptrs.push_back(r.data());
        return {ptrs.data(), rows.size()};
    }
};
}  // namespace

TEST_CASE("scalar kernel examples") {
    Lattice l{{{0, 10, 20}, {5, 30, 60}}, {}};
    std::int64_t c[] = {11, 29};
    CHECK(any_within_scalar(l.view(), 0, 3, c, 1, 0));
    CHECK_FALSE(any_within_scalar(l.view(), 0, 3, c, 0, 0));
    CHECK_FALSE(any_within_scalar(l.view(), 2, 3, c, 5, 0));
    std::int64_t w[] = {99, 3};
    CHECK(any_within_scalar(l.view(), 0, 1, w, 2, 100));  // wraps: |0-99| = 1, |5-3| = 2
    CHECK_FALSE(any_within_scalar(l.view(), 0, 1, w, 2, 0));
}

TEST_CASE("every kernel variant agrees with the scalar reference") {
    auto kernels = available_kernels();
    REQUIRE(kernels.front().name == "scalar");
    testing::Gen g(99);
    for (int trial = 0; trial < 3000; ++trial) {
        std::size_t steps = static_cast<std::size_t>(g.integer(1, 9));
        std::size_t count = static_cast<std::size_t>(g.integer(0, 23));
        std::int64_t period = g.coin() ? 0 : std::int64_t{1} << g.integer(4, 60);
        std::int64_t top = period > 0 ? period : std::int64_t{1} << g.integer(4, 61);
        Lattice l;
        l.rows.assign(steps, std::vector<std::int64_t>(count));
        std::vector<std::int64_t> cand(steps);
        for (std::size_t i = 0; i < steps; ++i) {
            cand[i] = g.integer(0, top - 1);
            for (auto& v : l.rows[i]) {
                // many values near the candidate so both outcomes occur
                v = g.coin() ? g.integer(0, top - 1) : std::clamp<std::int64_t>(cand[i] + g.integer(-8, 8), 0, top - 1);
            }
        }
        std::int64_t eps = g.coin() ? g.integer(0, 8) : g.integer(0, top);
        std::size_t begin = count == 0 ? 0 : static_cast<std::size_t>(g.integer(0, static_cast<std::int64_t>(count)));
        bool ref = any_within_scalar(l.view(), begin, count, cand.data(), eps, period);
        for (const auto& k : kernels) {
            INFO(k.name);
            CHECK(k.fn(l.view(), begin, count, cand.data(), eps, period) == ref);
        }
    }
}

TEST_CASE("kernel selection") {
    std::string before(active_kernel().name);
    CHECK(select_kernel("scalar"));
    CHECK(active_kernel().name == "scalar");
    CHECK_FALSE(select_kernel("sse9"));
    CHECK(select_kernel(before));
}
