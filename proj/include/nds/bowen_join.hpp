#pragma once

#include <cstdint>
#include <vector>

#include "nds/system.hpp"

namespace nds {

enum class JoinMode : std::uint8_t { Auto, Materialize, Iterate };

struct JoinOptions {
    JoinMode mode = JoinMode::Auto;  // Auto materializes up to kMaterializeDepth steps
    std::size_t cap_cells = 1'000'000;
    static constexpr std::size_t kMaterializeDepth = 12;
};

// ⋁_{i<n} f_k^{-i} P_{k+i}, refined one step at a time. Each atom is a domain
// segment on which f_k^{d-1} is affine, tagged with the join cell it belongs to.
class BowenRefiner {
public:
    BowenRefiner(SystemSequence sys, PartitionSequence p, std::size_t k, std::size_t cap_cells = 1'000'000);

    void advance();
    [[nodiscard]] std::size_t depth() const { return depth_; }
    [[nodiscard]] std::size_t cell_count() const { return cells_; }
    [[nodiscard]] std::size_t atom_count() const { return atoms_.size(); }
    // Cell masses under mu (a measure on X_k), in cell-label order.
    [[nodiscard]] std::vector<Rational> masses(const RationalMeasure& mu) const;
    [[nodiscard]] Partition partition() const;

private:
    struct Atom {
        Segment dom;
        Rational slope;
        Rational intercept;
        std::uint32_t label;
    };
    SystemSequence sys_;
    PartitionSequence p_;
    std::size_t k_;
    std::size_t cap_;
    std::size_t depth_ = 1;
    std::size_t cells_ = 0;
    std::vector<Atom> atoms_;
    // scratch reused across steps
    std::vector<Atom> moved_;
    std::vector<Atom> next_;
    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> table_;
};

Partition bowen_join(const SystemSequence& sys, const PartitionSequence& p, std::size_t k, std::size_t n,
                     const JoinOptions& opts = {});

}  // namespace nds
