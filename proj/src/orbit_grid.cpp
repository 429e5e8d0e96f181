#include <numeric>

#include "nds/error.hpp"
#include "nds/topological.hpp"

namespace nds {

Rational bowen_distance(const SystemSequence& sys, const Rational& x, const Rational& y, std::size_t n,
                        std::size_t k) {
    if (n == 0 || k == 0) throw ArgumentError("Bowen distance needs n >= 1 and k >= 1");
    Rational d = 0;
    Rational a = x;
    Rational b = y;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            a = sys.map(k + i - 1)(a);
            b = sys.map(k + i - 1)(b);
        }
        d = max(d, space_distance(sys.space(), a, b));
    }
    return d;
}

OrbitGrid::OrbitGrid(const SystemSequence& sys, const Rational& resolution, std::size_t steps)
    : space_(sys.space()), resolution_(resolution), steps_(steps) {
    if (resolution.sign() <= 0 || Rational(1) < resolution) throw ArgumentError("grid resolution must be in (0, 1]");
    if (steps == 0) throw ArgumentError("orbit grid needs at least one step");
    for (Rational x = 0; x < Rational(1); x += resolution) points_.push_back(x);
    if (space_ == SpaceKind::Interval) points_.push_back(1);
    orbits_.reserve(points_.size() * steps);
    constexpr std::int64_t kMaxDen = std::int64_t{1} << 52;
    std::int64_t den = 1;
    for (const auto& x : points_) {
        Rational y = x;
        for (std::size_t i = 0; i < steps; ++i) {
            if (i > 0) y = sys.map(i)(y);
            orbits_.push_back(y);
            if (den % y.den() != 0) {
                __int128 l = static_cast<__int128>(den) / std::gcd(den, y.den()) * y.den();
                if (l > kMaxDen) throw ResourceError("orbit denominators exceed the lattice range");
                den = static_cast<std::int64_t>(l);
            }
        }
    }
    den_ = den;
    lattice_.reserve(orbits_.size());
    for (const auto& y : orbits_) lattice_.push_back(y.num() * (den / y.den()));
}

}  // namespace nds
