#include "nds/bowen_join.hpp"

#include <algorithm>
#include <unordered_map>

#include "nds/error.hpp"

namespace nds {

namespace {

Segment intersect(const Segment& a, const Segment& b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

// Calls emit(sub_domain, index) for every nonempty piece of dom ∩ φ^{-1}(seg_j),
// where segs tile the space in order and φ(x) = slope x + intercept.
template <class Segs, class SegOf, class Emit>
void split_by(const Segment& dom, const Rational& slope, const Rational& intercept, const Segs& segs, SegOf seg_of,
              Emit emit) {
    if (slope.is_zero()) {
        for (std::size_t j = 0; j < segs.size(); ++j)
            if (seg_of(segs[j]).contains(intercept)) {
                emit(dom, j);
                return;
            }
        throw DomainError("orbit left the space at " + intercept.str());
    }
    AffinePiece ap{dom, slope, intercept};
    Segment img = ap.image(dom);
    auto it = std::upper_bound(segs.begin(), segs.end(), img.lo,
                               [&](const Cut& c, const auto& s) { return c < seg_of(s).lo; });
    if (it != segs.begin()) --it;
    for (; it != segs.end() && seg_of(*it).lo < img.hi; ++it) {
        const Segment& target = seg_of(*it);
        if (!(img.lo < target.lo) && !(target.hi < img.hi)) {
            emit(dom, static_cast<std::size_t>(it - segs.begin()));
            return;
        }
        Segment sub = intersect(img, target);
        if (sub.empty()) continue;
        Segment d = intersect(ap.preimage(sub), dom);
        if (!d.empty()) emit(d, static_cast<std::size_t>(it - segs.begin()));
    }
}

}  // namespace

BowenRefiner::BowenRefiner(SystemSequence sys, PartitionSequence p, std::size_t k, std::size_t cap_cells)
    : sys_(std::move(sys)), p_(std::move(p)), k_(k), cap_(cap_cells) {
    if (k == 0) throw ArgumentError("join start index starts at 1");
    if (sys_.space() != p_.space()) throw DomainError("maps and partitions live on different spaces");
    const Partition& first = p_.at(k_);
    for (const auto& t : first.tiles()) atoms_.push_back({t.seg, 1, 0, t.cell});
    cells_ = first.size();
    if (cells_ > cap_) throw ResourceError("join exceeds the cell cap of " + std::to_string(cap_));
}

void BowenRefiner::advance() {
    const PiecewiseLinearMap& f = sys_.map(k_ + depth_ - 1);
    const Partition& next_p = p_.at(k_ + depth_);
    auto fp = f.pieces();
    auto tiles = next_p.tiles();

    // Atoms stay sorted by domain: split_by emits in image order, which is
    // domain order reversed when the slope is negative.
    auto& moved = moved_;
    moved.clear();
    for (const auto& a : atoms_) {
        std::size_t from = moved.size();
        split_by(a.dom, a.slope, a.intercept, fp, [](const AffinePiece& q) -> const Segment& { return q.dom; },
                 [&](const Segment& d, std::size_t j) {
                     const AffinePiece& q = fp[j];
                     moved.push_back({d, q.slope * a.slope, q.slope * a.intercept + q.intercept, a.label});
                 });
        if (a.slope.sign() < 0) std::reverse(moved.begin() + static_cast<std::ptrdiff_t>(from), moved.end());
    }

    // Cell of the join = (old cell, new tile cell), numbered in domain order.
    auto& next = next_;
    auto& keys = keys_;
    next.clear();
    keys.clear();
    for (const auto& a : moved) {
        std::size_t from = next.size();
        split_by(a.dom, a.slope, a.intercept, tiles, [](const Partition::Tile& t) -> const Segment& { return t.seg; },
                 [&](const Segment& d, std::size_t j) {
                     next.push_back({d, a.slope, a.intercept, 0});
                     keys.push_back((static_cast<std::uint64_t>(a.label) << 32) | tiles[j].cell);
                 });
        if (a.slope.sign() < 0) {
            std::reverse(next.begin() + static_cast<std::ptrdiff_t>(from), next.end());
            std::reverse(keys.begin() + static_cast<std::ptrdiff_t>(from), keys.end());
        }
        if (next.size() > 8 * cap_) throw ResourceError("join exceeds the atom cap of " + std::to_string(8 * cap_));
    }
    std::size_t count = 0;
    const std::uint64_t width = next_p.size();
    if (cells_ * width <= (std::size_t{1} << 26)) {
        constexpr std::uint32_t kUnset = ~std::uint32_t{0};
        auto& table = table_;
        table.assign(cells_ * width, kUnset);
        for (std::size_t i = 0; i < next.size(); ++i) {
            std::uint32_t& slot = table[(keys[i] >> 32) * width + (keys[i] & 0xffffffffu)];
            if (slot == kUnset) slot = static_cast<std::uint32_t>(count++);
            next[i].label = slot;
        }
    } else {
        std::unordered_map<std::uint64_t, std::uint32_t> ids;
        ids.reserve(moved.size());
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i].label = ids.try_emplace(keys[i], static_cast<std::uint32_t>(ids.size())).first->second;
        count = ids.size();
    }
    if (count > cap_) throw ResourceError("join exceeds the cell cap of " + std::to_string(cap_));
    atoms_.swap(next);
    cells_ = count;
    ++depth_;
}

std::vector<Rational> BowenRefiner::masses(const RationalMeasure& mu) const {
    std::vector<Rational> out(cells_, Rational(0));
    for (const auto& a : atoms_) out[a.label] += mu.mass(a.dom);
    return out;
}

Partition BowenRefiner::partition() const {
    std::vector<std::vector<Segment>> segs(cells_);
    for (const auto& a : atoms_) segs[a.label].push_back(a.dom);
    std::vector<IntervalSet> cells;
    cells.reserve(cells_);
    for (auto& s : segs) cells.emplace_back(std::move(s));
    return {Partition::Trusted{}, sys_.space(), std::move(cells)};
}

Partition bowen_join(const SystemSequence& sys, const PartitionSequence& p, std::size_t k, std::size_t n,
                     const JoinOptions& opts) {
    if (n == 0) throw ArgumentError("join depth must be at least 1");
    if (k == 0) throw ArgumentError("join start index starts at 1");
    bool materialize = opts.mode == JoinMode::Materialize ||
                       (opts.mode == JoinMode::Auto && n <= JoinOptions::kMaterializeDepth);
    if (materialize) {
        Partition acc = p.at(k);
        for (std::size_t i = 1; i < n; ++i) {
            acc = join(acc, pullback_partition(sys.composition(k, i), p.at(k + i)));
            if (acc.size() > opts.cap_cells)
                throw ResourceError("join exceeds the cell cap of " + std::to_string(opts.cap_cells));
        }
        return acc;
    }
    BowenRefiner r(sys, p, k, opts.cap_cells);
    while (r.depth() < n) r.advance();
    return r.partition();
}

}  // namespace nds
