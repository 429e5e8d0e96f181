#include "nds/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace nds {

namespace {

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min();

std::uint64_t binary_gcd(std::uint64_t a, std::uint64_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    // dyadic denominators are the common case
    if ((b & (b - 1)) == 0) return std::min(a & (0 - a), b);
    int shift = __builtin_ctzll(a | b);
    a >>= __builtin_ctzll(a);
    while (b != 0) {
        b >>= __builtin_ctzll(b);
        if (a > b) std::swap(a, b);
        b -= a;
    }
    return a << shift;
}

__int128 wide_gcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        if (a <= kMax && b <= kMax)
            return static_cast<__int128>(binary_gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)));
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rational Rational::from_wide(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n >= kMin && n <= kMax && d <= kMax) {
        if (d == 1 || n == 0) {
            Rational r;
            r.num_ = static_cast<std::int64_t>(n);
            r.den_ = 1;
            return r;
        }
        auto n64 = static_cast<std::int64_t>(n);
        auto d64 = static_cast<std::int64_t>(d);
        auto g = static_cast<std::int64_t>(binary_gcd(n64 < 0 ? 0 - static_cast<std::uint64_t>(n64)
                                                              : static_cast<std::uint64_t>(n64),
                                                      static_cast<std::uint64_t>(d64)));
        Rational r;
        r.num_ = g > 1 ? n64 / g : n64;
        r.den_ = g > 1 ? d64 / g : d64;
        return r;
    }
    __int128 g = wide_gcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n > kMax || n < kMin || d > kMax) throw std::overflow_error("rational: int64 overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return Rational::from_wide(static_cast<__int128>(a.num_) + b.num_, a.den_);
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                               static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return Rational::from_wide(static_cast<__int128>(a.num_) - b.num_, a.den_);
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                               static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational: division by zero");
    return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

Rational Rational::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational floor(const Rational& r) {
    std::int64_t q = r.num() / r.den();
    if (r.num() % r.den() != 0 && r.num() < 0) --q;
    return Rational(q);
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational parse_rational(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("not a rational: '" + std::string(text) + "'"); };
    auto digits = [&](std::string_view s) -> __int128 {
        if (s.empty() || s.size() > 18) fail();
        __int128 v = 0;
        for (char c : s) {
            if (!std::isdigit(static_cast<unsigned char>(c))) fail();
            v = v * 10 + (c - '0');
        }
        return v;
    };
    std::string_view s = text;
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    __int128 n = 0;
    __int128 d = 1;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        n = digits(s.substr(0, slash));
        d = digits(s.substr(slash + 1));
        if (d == 0) fail();
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) fail();
        n = ip.empty() ? 0 : digits(ip);
        for (char c : fp) {
            if (!std::isdigit(static_cast<unsigned char>(c))) fail();
            n = n * 10 + (c - '0');
            d *= 10;
            if (d > kMax) fail();
        }
    } else {
        n = digits(s);
    }
    return Rational(static_cast<std::int64_t>(neg ? -n : n), 1) / Rational(static_cast<std::int64_t>(d));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace nds
