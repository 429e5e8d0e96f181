#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nds/rational.hpp"

namespace nds {

enum class SpaceKind : std::uint8_t { Interval, Circle };

std::string_view to_string(SpaceKind k);

// Distance on the space: |x-y| on [0,1], min(|x-y|, 1-|x-y|) on the circle.
Rational space_distance(SpaceKind k, const Rational& x, const Rational& y);
Rational space_diameter(SpaceKind k);

// A position between points of the line: just before or just after a value.
// Point sets built from half-open ranges of cuts can express open, closed,
// half-open intervals and single points uniformly.
enum class Side : std::uint8_t { Before = 0, After = 1 };

struct Cut {
    Rational at;
    Side side = Side::Before;

    static Cut before(const Rational& x) { return {x, Side::Before}; }
    static Cut after(const Rational& x) { return {x, Side::After}; }

    // true iff x lies strictly past this cut
    [[nodiscard]] bool below(const Rational& x) const {
        return side == Side::Before ? !(x < at) : at < x;
    }
    [[nodiscard]] Cut flipped() const { return {at, side == Side::Before ? Side::After : Side::Before}; }

    friend bool operator==(const Cut&, const Cut&) = default;
    friend std::strong_ordering operator<=>(const Cut& a, const Cut& b) {
        if (auto c = a.at <=> b.at; c != 0) return c;
        return a.side <=> b.side;
    }
};

// {x : lo below x, hi not below x}; nonempty iff lo < hi.
struct Segment {
    Cut lo;
    Cut hi;

    static Segment closed(const Rational& a, const Rational& b) { return {Cut::before(a), Cut::after(b)}; }
    static Segment open(const Rational& a, const Rational& b) { return {Cut::after(a), Cut::before(b)}; }
    static Segment half_open(const Rational& a, const Rational& b) { return {Cut::before(a), Cut::before(b)}; }
    static Segment left_open(const Rational& a, const Rational& b) { return {Cut::after(a), Cut::after(b)}; }
    static Segment point(const Rational& a) { return {Cut::before(a), Cut::after(a)}; }

    [[nodiscard]] bool empty() const { return !(lo < hi); }
    [[nodiscard]] bool contains(const Rational& x) const { return lo.below(x) && !hi.below(x); }
    [[nodiscard]] bool is_point() const { return lo.at == hi.at; }
    [[nodiscard]] Rational length() const { return hi.at - lo.at; }
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Segment&, const Segment&) = default;
};

Segment whole_segment(SpaceKind k);

// Finite union of segments kept sorted, disjoint and non-adjacent, so equal
// point sets have equal representations.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<Segment> segs);  // normalizes
    IntervalSet(std::initializer_list<Segment> segs) : IntervalSet(std::vector<Segment>(segs)) {}

    static IntervalSet whole(SpaceKind k) { return IntervalSet({whole_segment(k)}); }

    [[nodiscard]] std::span<const Segment> segments() const { return segs_; }
    [[nodiscard]] bool empty() const { return segs_.empty(); }
    [[nodiscard]] std::size_t size() const { return segs_.size(); }
    [[nodiscard]] bool contains(const Rational& x) const;
    [[nodiscard]] bool contains(const Segment& s) const;
    [[nodiscard]] bool subset_of(const IntervalSet& o) const;
    [[nodiscard]] bool intersects(const IntervalSet& o) const;
    [[nodiscard]] Rational length() const;
    [[nodiscard]] Cut first_cut() const { return segs_.front().lo; }
    [[nodiscard]] std::string str() const;

    friend IntervalSet operator|(const IntervalSet& a, const IntervalSet& b);
    friend IntervalSet operator&(const IntervalSet& a, const IntervalSet& b);
    friend IntervalSet operator-(const IntervalSet& a, const IntervalSet& b);
    [[nodiscard]] IntervalSet complement(SpaceKind k) const { return whole(k) - *this; }

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;
    friend auto operator<=>(const IntervalSet& a, const IntervalSet& b) {
        return std::lexicographical_compare_three_way(
            a.segs_.begin(), a.segs_.end(), b.segs_.begin(), b.segs_.end(),
            [](const Segment& x, const Segment& y) {
                if (auto c = x.lo <=> y.lo; c != 0) return c;
                return x.hi <=> y.hi;
            });
    }

private:
    struct Sorted {};
    IntervalSet(Sorted, std::vector<Segment> segs) : segs_(std::move(segs)) {}
    std::vector<Segment> segs_;
};

// Parses "[0,1/4)+(3/4,1]+{1/2}"; '+' separates pieces.
IntervalSet parse_interval_set(std::string_view text);

}  // namespace nds
