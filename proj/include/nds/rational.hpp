#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nds {

// Exact rational with int64 numerator/denominator. Every operation is
// carried out in 128-bit intermediates and reduced; a result that does not
// fit back into int64 throws std::overflow_error instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t n, std::int64_t d);

    [[nodiscard]] constexpr std::int64_t num() const { return num_; }
    [[nodiscard]] constexpr std::int64_t den() const { return den_; }

    [[nodiscard]] double to_double() const;
    [[nodiscard]] std::string str() const;  // "p/q" or "p"
    [[nodiscard]] bool is_zero() const { return num_ == 0; }
    [[nodiscard]] int sign() const { return (num_ > 0) - (num_ < 0); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    static Rational from_wide(__int128 n, __int128 d);
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

Rational abs(const Rational& r);
Rational floor(const Rational& r);  // largest integer <= r
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// Accepts "p", "p/q", "-p/q" and finite decimals such as "0.375" or "-1.5".
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace nds

template <>
struct std::hash<nds::Rational> {
    std::size_t operator()(const nds::Rational& r) const noexcept {
        auto h = static_cast<std::uint64_t>(r.num()) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(r.den()) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};
