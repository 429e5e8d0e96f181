#include "nds/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "nds/error.hpp"

namespace nds {

namespace {

void sort_cells(std::vector<IntervalSet>& cells) {
    auto by_start = [](const IntervalSet& a, const IntervalSet& b) { return a.first_cut() < b.first_cut(); };
    if (!std::is_sorted(cells.begin(), cells.end(), by_start)) std::sort(cells.begin(), cells.end(), by_start);
}

// Neumaier summation; deterministic for a fixed input order.
struct CompensatedSum {
    double sum = 0;
    double comp = 0;
    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) comp += (sum - t) + x;
        else comp += (x - t) + sum;
        sum = t;
    }
    [[nodiscard]] double value() const { return sum + comp; }
};

}  // namespace

double log_in(LogBase base, double x) { return base == LogBase::E ? std::log(x) : std::log2(x); }

Partition::Partition(SpaceKind space, std::vector<IntervalSet> cells) : space_(space), cells_(std::move(cells)) {
    if (cells_.empty()) throw DomainError("partition without cells");
    for (const auto& c : cells_)
        if (c.empty()) throw DomainError("partition has an empty cell");
    sort_cells(cells_);
    index();
    Segment whole = whole_segment(space_);
    Cut expect = whole.lo;
    for (const auto& t : tiles_) {
        if (t.seg.lo != expect) {
            throw DomainError(expect < t.seg.lo ? "cells do not cover the space near " + expect.at.str()
                                                : "cells overlap near " + t.seg.lo.at.str());
        }
        expect = t.seg.hi;
    }
    if (expect != whole.hi) throw DomainError("cells do not cover the space near " + expect.at.str());
}

Partition::Partition(Trusted, SpaceKind space, std::vector<IntervalSet> cells)
    : space_(space), cells_(std::move(cells)) {
    sort_cells(cells_);
    index();
}

void Partition::index() {
    tiles_.clear();
    tiles_.reserve(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i)
        for (const auto& s : cells_[i].segments()) tiles_.push_back({s, static_cast<std::uint32_t>(i)});
    auto by_start = [](const Tile& a, const Tile& b) { return a.seg.lo < b.seg.lo; };
    if (!std::is_sorted(tiles_.begin(), tiles_.end(), by_start)) std::sort(tiles_.begin(), tiles_.end(), by_start);
}

Partition Partition::trivial(SpaceKind space) { return {space, {IntervalSet::whole(space)}}; }

Partition Partition::uniform(SpaceKind space, std::int64_t k) {
    if (k < 1) throw ArgumentError("uniform partition needs k >= 1");
    std::vector<Rational> cuts;
    cuts.reserve(static_cast<std::size_t>(k - 1));
    for (std::int64_t i = 1; i < k; ++i) cuts.emplace_back(i, k);
    return from_cuts(space, std::move(cuts));
}

Partition Partition::from_cuts(SpaceKind space, std::vector<Rational> cuts) {
    std::vector<IntervalSet> cells;
    cells.reserve(cuts.size() + 1);
    Cut lo = whole_segment(space).lo;
    for (const auto& c : cuts) {
        if (!(lo.at < c) || !(c < Rational(1))) throw ArgumentError("cuts must increase strictly inside (0,1)");
        cells.push_back(IntervalSet({Segment{lo, Cut::before(c)}}));
        lo = Cut::before(c);
    }
    cells.push_back(IntervalSet({Segment{lo, whole_segment(space).hi}}));
    return {space, std::move(cells)};
}

std::size_t Partition::cell_of(const Rational& x) const {
    auto it = std::upper_bound(tiles_.begin(), tiles_.end(), Cut::before(x),
                               [](const Cut& c, const Tile& t) { return c < t.seg.lo; });
    if (it == tiles_.begin() || !std::prev(it)->seg.contains(x))
        throw DomainError("point " + x.str() + " outside the space");
    return std::prev(it)->cell;
}

std::string Partition::str() const {
    std::string out;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (i) out += " | ";
        out += cells_[i].str();
    }
    return out;
}

std::vector<Rational> cell_masses(const RationalMeasure& mu, const Partition& p) {
    if (mu.space() != p.space()) throw DomainError("measure and partition live on different spaces");
    std::vector<Rational> m(p.size());
    for (const auto& t : p.tiles()) m[t.cell] += mu.mass(t.seg);
    return m;
}

double entropy_of_masses(std::span<const Rational> masses, LogBase base) {
    std::vector<Rational> sorted;
    sorted.reserve(masses.size());
    for (const auto& m : masses)
        if (!m.is_zero()) sorted.push_back(m);
    if (!std::is_sorted(sorted.begin(), sorted.end())) std::sort(sorted.begin(), sorted.end());
    CompensatedSum acc;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const Rational& m = sorted[i];
        double neg_log = std::log(static_cast<double>(m.den())) - std::log(static_cast<double>(m.num()));
        acc.add(static_cast<double>(j - i) * m.to_double() * neg_log);
        i = j;
    }
    double h = acc.value();
    if (base == LogBase::Two) h /= std::log(2.0);
    return std::max(0.0, h);
}

double partition_entropy(const RationalMeasure& mu, const Partition& p, LogBase base) {
    auto m = cell_masses(mu, p);
    return entropy_of_masses(m, base);
}

double conditional_entropy(const RationalMeasure& mu, const Partition& p, const Partition& q, LogBase base) {
    if (p.space() != q.space() || mu.space() != p.space())
        throw DomainError("conditional entropy across different spaces");
    auto joint = cell_masses(mu, join(p, q));
    auto given = cell_masses(mu, q);
    return std::max(0.0, entropy_of_masses(joint, base) - entropy_of_masses(given, base));
}

Partition join(const Partition& p, const Partition& q) {
    if (p.space() != q.space()) throw DomainError("join across different spaces");
    auto tp = p.tiles();
    auto tq = q.tiles();
    std::unordered_map<std::uint64_t, std::size_t> label;
    std::vector<std::vector<Segment>> pieces;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < tp.size() && j < tq.size()) {
        Segment s{std::max(tp[i].seg.lo, tq[j].seg.lo), std::min(tp[i].seg.hi, tq[j].seg.hi)};
        if (!s.empty()) {
            std::uint64_t key = (static_cast<std::uint64_t>(tp[i].cell) << 32) | tq[j].cell;
            auto [it, fresh] = label.try_emplace(key, pieces.size());
            if (fresh) pieces.emplace_back();
            pieces[it->second].push_back(s);
        }
        if (tp[i].seg.hi < tq[j].seg.hi) ++i; else ++j;
    }
    std::vector<IntervalSet> cells;
    cells.reserve(pieces.size());
    for (auto& v : pieces) cells.emplace_back(std::move(v));
    return {Partition::Trusted{}, p.space(), std::move(cells)};
}

Partition join_pairwise(const Partition& p, const Partition& q) {
    if (p.space() != q.space()) throw DomainError("join across different spaces");
    std::vector<IntervalSet> cells;
    for (const auto& a : p.cells())
        for (const auto& b : q.cells()) {
            IntervalSet c = a & b;
            if (!c.empty()) cells.push_back(std::move(c));
        }
    return {Partition::Trusted{}, p.space(), std::move(cells)};
}

bool is_finer(const Partition& p, const Partition& q) {
    if (p.space() != q.space()) throw DomainError("comparing partitions of different spaces");
    std::vector<std::int64_t> owner(p.size(), -1);
    auto tp = p.tiles();
    auto tq = q.tiles();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < tp.size() && j < tq.size()) {
        Segment s{std::max(tp[i].seg.lo, tq[j].seg.lo), std::min(tp[i].seg.hi, tq[j].seg.hi)};
        if (!s.empty()) {
            auto& o = owner[tp[i].cell];
            if (o == -1) o = tq[j].cell;
            else if (o != static_cast<std::int64_t>(tq[j].cell)) return false;
        }
        if (tp[i].seg.hi < tq[j].seg.hi) ++i; else ++j;
    }
    return true;
}

bool equal_mod_null(const Partition& p, const Partition& q) {
    auto key = [](const IntervalSet& c) {
        std::vector<std::pair<Rational, Rational>> out;
        for (const auto& s : c.segments()) {
            if (s.is_point()) continue;
            if (!out.empty() && out.back().second == s.lo.at) out.back().second = s.hi.at;
            else out.emplace_back(s.lo.at, s.hi.at);
        }
        return out;
    };
    auto keys = [&](const Partition& x) {
        std::vector<std::vector<std::pair<Rational, Rational>>> ks;
        for (const auto& c : x.cells()) {
            auto k = key(c);
            if (!k.empty()) ks.push_back(std::move(k));
        }
        std::sort(ks.begin(), ks.end());
        return ks;
    };
    return p.space() == q.space() && keys(p) == keys(q);
}

PartitionSequence PartitionSequence::constant(Partition p) { return periodic({}, {std::move(p)}); }

PartitionSequence PartitionSequence::periodic(std::vector<Partition> prefix, std::vector<Partition> tail) {
    if (tail.empty()) throw ArgumentError("periodic partition sequence needs a nonempty tail");
    auto s = std::make_shared<State>();
    s->space = tail.front().space();
    for (const auto& p : prefix)
        if (p.space() != s->space) throw DomainError("partition sequence mixes spaces");
    for (const auto& p : tail)
        if (p.space() != s->space) throw DomainError("partition sequence mixes spaces");
    s->name = prefix.empty() && tail.size() == 1 ? "constant" : "periodic";
    s->prefix = std::move(prefix);
    s->tail = std::move(tail);
    return PartitionSequence(std::move(s));
}

PartitionSequence PartitionSequence::programmatic(SpaceKind space, std::string name, Generator gen,
                                                  std::size_t defined_up_to) {
    auto s = std::make_shared<State>();
    s->space = space;
    s->name = std::move(name);
    s->gen = std::move(gen);
    s->limit = defined_up_to;
    return PartitionSequence(std::move(s));
}

std::optional<std::size_t> PartitionSequence::phase(std::size_t n) const {
    if (!is_periodic()) return std::nullopt;
    std::size_t p = state_->prefix.size();
    if (n <= p) return n - 1;
    return p + (n - p - 1) % state_->tail.size();
}

const Partition& PartitionSequence::at(std::size_t n) const {
    if (n == 0) throw ArgumentError("partition sequences are indexed from 1");
    const State& s = *state_;
    if (is_periodic()) {
        std::size_t ph = *phase(n);
        return ph < s.prefix.size() ? s.prefix[ph] : s.tail[ph - s.prefix.size()];
    }
    if (s.limit != 0 && n > s.limit)
        throw ArgumentError("partition sequence '" + s.name + "' is materialized only up to n = " +
                            std::to_string(s.limit));
    {
        std::lock_guard lock(s.mu);
        if (auto it = s.cache.find(n); it != s.cache.end()) return it->second;
    }
    Partition p = s.gen(n);
    if (p.space() != s.space) throw DomainError("generator produced a partition on the wrong space");
    std::lock_guard lock(s.mu);
    return s.cache.try_emplace(n, std::move(p)).first->second;
}

PartitionSequence PartitionSequence::with_bound(std::size_t n) const {
    PartitionSequence out = *this;
    out.bound_ = n;
    return out;
}

PartitionSequence PartitionSequence::shifted(std::size_t k) const {
    if (k == 0) throw ArgumentError("shift index starts at 1");
    if (k == 1) return *this;
    PartitionSequence out = *this;
    if (is_periodic()) {
        const State& s = *state_;
        std::vector<Partition> prefix;
        std::vector<Partition> tail;
        if (k - 1 < s.prefix.size()) {
            prefix.assign(s.prefix.begin() + static_cast<std::ptrdiff_t>(k - 1), s.prefix.end());
            tail = s.tail;
        } else {
            std::size_t rot = (k - 1 - s.prefix.size()) % s.tail.size();
            for (std::size_t i = 0; i < s.tail.size(); ++i) tail.push_back(s.tail[(rot + i) % s.tail.size()]);
        }
        out = periodic(std::move(prefix), std::move(tail));
    } else {
        std::size_t lim = state_->limit == 0 ? 0 : (state_->limit >= k ? state_->limit - k + 1 : 0);
        if (state_->limit != 0 && lim == 0) throw ArgumentError("shift past the materialized range");
        auto self = *this;
        out = programmatic(space(), name() + " shifted by " + std::to_string(k - 1),
                           [self, k](std::size_t n) { return self.at(n + k - 1); }, lim);
    }
    out.bound_ = bound_;
    return out;
}

PartitionSequence PartitionSequence::decimated(std::size_t k) const {
    if (k == 0) throw ArgumentError("decimation step must be positive");
    if (k == 1) return *this;
    PartitionSequence out = *this;
    if (is_periodic()) {
        std::size_t p = prefix_length();
        std::size_t t = period() / std::gcd(period(), k);
        std::vector<Partition> prefix;
        std::size_t n = 1;
        for (; (n - 1) * k + 1 <= p; ++n) prefix.push_back(at((n - 1) * k + 1));
        std::vector<Partition> tail;
        for (std::size_t i = 0; i < t; ++i, ++n) tail.push_back(at((n - 1) * k + 1));
        out = periodic(std::move(prefix), std::move(tail));
    } else {
        std::size_t lim = state_->limit == 0 ? 0 : (state_->limit - 1) / k + 1;
        auto self = *this;
        out = programmatic(space(), name() + " every " + std::to_string(k),
                           [self, k](std::size_t n) { return self.at((n - 1) * k + 1); }, lim);
    }
    out.bound_ = bound_;
    return out;
}

double rokhlin_distance(std::span<const RationalMeasure> measures, const PartitionSequence& p,
                        const PartitionSequence& q, LogBase base) {
    if (measures.empty()) throw ArgumentError("rokhlin distance needs horizon >= 1");
    double a = 0;
    double b = 0;
    for (std::size_t n = 1; n <= measures.size(); ++n) {
        a = std::max(a, conditional_entropy(measures[n - 1], p.at(n), q.at(n), base));
        b = std::max(b, conditional_entropy(measures[n - 1], q.at(n), p.at(n), base));
    }
    return a + b;
}

}  // namespace nds
