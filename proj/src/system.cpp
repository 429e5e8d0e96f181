#include "nds/system.hpp"

#include <algorithm>
#include <numeric>

#include "nds/error.hpp"

namespace nds {

namespace {

std::size_t periodic_phase(std::size_t prefix, std::size_t period, std::size_t n) {
    if (n == 0) throw ArgumentError("sequences are indexed from 1");
    if (n <= prefix) return n - 1;
    return prefix + (n - prefix - 1) % period;
}

// First index from which both presentations are in their tails, and a common period.
std::pair<std::size_t, std::size_t> joint_cycle(std::size_t p1, std::size_t t1, std::size_t p2, std::size_t t2) {
    return {std::max(p1, p2) + 1, std::lcm(t1, t2)};
}

}  // namespace

SystemSequence SystemSequence::constant(PiecewiseLinearMap f) { return periodic({}, {std::move(f)}); }

SystemSequence SystemSequence::periodic(std::vector<PiecewiseLinearMap> prefix, std::vector<PiecewiseLinearMap> tail,
                                        std::optional<Rational> lipschitz_bound) {
    if (tail.empty()) throw ArgumentError("map sequence needs a nonempty periodic tail");
    auto s = std::make_shared<State>();
    s->space = tail.front().space();
    Rational lip = 0;
    for (const auto* part : {&prefix, &tail}) {
        for (const auto& f : *part) {
            if (f.space() != s->space) throw DomainError("map sequence mixes interval and circle maps");
            lip = max(lip, f.lipschitz());
        }
    }
    if (lipschitz_bound) {
        if (*lipschitz_bound < lip)
            throw ArgumentError("declared Lipschitz bound " + lipschitz_bound->str() + " is below " + lip.str());
        lip = *lipschitz_bound;
    }
    s->lipschitz = lip;
    s->prefix = std::move(prefix);
    s->tail = std::move(tail);
    return SystemSequence(std::move(s));
}

std::size_t SystemSequence::phase(std::size_t n) const { return periodic_phase(prefix_length(), period(), n); }

const PiecewiseLinearMap& SystemSequence::map(std::size_t n) const {
    std::size_t ph = phase(n);
    return ph < prefix_length() ? state_->prefix[ph] : state_->tail[ph - prefix_length()];
}

bool SystemSequence::continuous() const {
    for (const auto& f : state_->prefix)
        if (!f.continuous()) return false;
    for (const auto& f : state_->tail)
        if (!f.continuous()) return false;
    return true;
}

const PiecewiseLinearMap& SystemSequence::composition(std::size_t k, std::size_t n) const {
    const State& s = *state_;
    auto key = std::make_pair(phase(k), n);
    {
        std::lock_guard lock(s.mu);
        if (auto it = s.compositions.find(key); it != s.compositions.end()) return *it->second;
    }
    PiecewiseLinearMap out = n == 0 ? PiecewiseLinearMap::identity(space())
                                    : compose(map(k + n - 1), composition(k, n - 1));
    std::lock_guard lock(s.mu);
    auto [it, fresh] = s.compositions.try_emplace(key, nullptr);
    if (fresh) it->second = std::make_unique<PiecewiseLinearMap>(std::move(out));
    return *it->second;
}

std::vector<Rational> SystemSequence::orbit(std::size_t k, const Rational& x, std::size_t n) const {
    std::vector<Rational> out;
    out.reserve(n);
    Rational y = x;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(y);
        if (i + 1 < n) y = map(k + i)(y);
    }
    return out;
}

SystemSequence power_system(const SystemSequence& sys, std::size_t k) {
    if (k == 0) throw ArgumentError("power must be at least 1");
    if (k == 1) return sys;
    std::size_t p = sys.prefix_length();
    std::size_t t = sys.period() / std::gcd(sys.period(), k);
    std::vector<PiecewiseLinearMap> prefix;
    std::vector<PiecewiseLinearMap> tail;
    std::size_t n = 1;
    for (; (n - 1) * k < p; ++n) prefix.push_back(sys.composition((n - 1) * k + 1, k));
    for (std::size_t i = 0; i < t; ++i, ++n) tail.push_back(sys.composition((n - 1) * k + 1, k));
    Rational bound = 1;
    for (std::size_t i = 0; i < k; ++i) bound *= sys.lipschitz_bound();
    return SystemSequence::periodic(std::move(prefix), std::move(tail), bound);
}

SystemSequence shift_system(const SystemSequence& sys, std::size_t k) {
    if (k == 0) throw ArgumentError("shift index starts at 1");
    if (k == 1) return sys;
    std::vector<PiecewiseLinearMap> prefix;
    std::vector<PiecewiseLinearMap> tail;
    auto pre = sys.prefix();
    auto tl = sys.tail();
    if (k - 1 < pre.size()) {
        prefix.assign(pre.begin() + static_cast<std::ptrdiff_t>(k - 1), pre.end());
        tail.assign(tl.begin(), tl.end());
    } else {
        std::size_t rot = (k - 1 - pre.size()) % tl.size();
        for (std::size_t i = 0; i < tl.size(); ++i) tail.push_back(tl[(rot + i) % tl.size()]);
    }
    return SystemSequence::periodic(std::move(prefix), std::move(tail), sys.lipschitz_bound());
}

bool check_equicontinuity(const SystemSequence& sys, std::size_t horizon, std::size_t depth) {
    for (std::size_t n = 1; n <= horizon; ++n) {
        Rational bound = 1;
        for (std::size_t i = 0; i < depth; ++i) {
            if (bound < sys.composition(n, i).lipschitz()) return false;
            bound *= sys.lipschitz_bound();
        }
    }
    return true;
}

MeasureSequence::MeasureSequence(SystemSequence sys, RationalMeasure mu1) {
    if (sys.space() != mu1.space()) throw DomainError("measure and maps live on different spaces");
    std::shared_ptr<State> s(new State{std::move(sys), {}, {}});
    s->cache.push_back(std::move(mu1));
    state_ = std::move(s);
}

const RationalMeasure& MeasureSequence::at(std::size_t n) const {
    if (n == 0) throw ArgumentError("measure sequences are indexed from 1");
    const State& s = *state_;
    std::lock_guard lock(s.mu);
    while (s.cache.size() < n) {
        std::size_t m = s.cache.size();
        s.cache.push_back(pushforward_measure(s.sys.map(m), s.cache.back()));
    }
    return s.cache[n - 1];
}

std::vector<RationalMeasure> MeasureSequence::materialize(std::size_t horizon) const {
    std::vector<RationalMeasure> out;
    out.reserve(horizon);
    for (std::size_t n = 1; n <= horizon; ++n) out.push_back(at(n));
    return out;
}

MeasureSequence MeasureSequence::shifted(std::size_t k) const {
    if (k == 1) return *this;
    return {shift_system(system(), k), at(k)};
}

MeasureSequence MeasureSequence::power(std::size_t k) const {
    if (k == 1) return *this;
    return {power_system(system(), k), at(1)};
}

std::optional<std::pair<std::size_t, std::size_t>> MeasureSequence::find_cycle(std::size_t horizon) const {
    const auto& sys = system();
    for (std::size_t n1 = 2; n1 <= horizon; ++n1) {
        for (std::size_t n0 = std::max<std::size_t>(1, sys.prefix_length() + 1); n0 < n1; ++n0) {
            if (sys.phase(n0) == sys.phase(n1) && at(n0) == at(n1)) return std::make_pair(n0, n1);
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> MeasureSequence::check_invariance(std::size_t horizon) const {
    for (std::size_t n = 1; n < horizon; ++n)
        if (!(pushforward_measure(system().map(n), at(n)) == at(n + 1))) return n;
    return std::nullopt;
}

RokhlinDistance rokhlin_distance(const MeasureSequence& mu, const PartitionSequence& p,
                                 const PartitionSequence& q, std::size_t horizon, LogBase base) {
    if (horizon == 0) throw ArgumentError("rokhlin distance needs horizon >= 1");
    auto measures = mu.materialize(horizon);
    const PartitionSequence* seqs[] = {&p, &q};
    return {rokhlin_distance(measures, p, q, base), horizon_covers_cycle(mu, seqs, horizon)};
}

bool horizon_covers_cycle(const MeasureSequence& mu, std::span<const PartitionSequence* const> seqs,
                          std::size_t horizon) {
    const auto& sys = mu.system();
    std::size_t start = sys.prefix_length() + 1;
    for (const auto* s : seqs) {
        if (!s->is_periodic()) return false;
        start = std::max(start, s->prefix_length() + 1);
    }
    for (std::size_t n1 = start + 1; n1 <= horizon; ++n1) {
        for (std::size_t n0 = start; n0 < n1; ++n0) {
            if (sys.phase(n0) != sys.phase(n1)) continue;
            bool same = std::all_of(seqs.begin(), seqs.end(), [&](const PartitionSequence* s) {
                return s->phase(n0) == s->phase(n1);
            });
            if (same && mu.at(n0) == mu.at(n1)) return true;
        }
    }
    return false;
}

SetSequence SetSequence::periodic(std::vector<IntervalSet> prefix, std::vector<IntervalSet> tail) {
    if (tail.empty()) throw ArgumentError("set sequence needs a nonempty periodic tail");
    SetSequence s;
    s.prefix_ = std::move(prefix);
    s.tail_ = std::move(tail);
    return s;
}

const IntervalSet& SetSequence::at(std::size_t n) const {
    std::size_t ph = periodic_phase(prefix_.size(), tail_.size(), n);
    return ph < prefix_.size() ? prefix_[ph] : tail_[ph - prefix_.size()];
}

PartitionSequence RestrictedSystem::restrict_partitions(const PartitionSequence& p) const {
    SpaceKind space = system.space();
    auto split = [space, ys = y](std::size_t n) {
        const IntervalSet& yn = ys.at(n);
        IntervalSet rest = yn.complement(space);
        if (rest.empty()) return Partition::trivial(space);
        return Partition(space, {yn, rest});
    };
    auto gen = [p, split](std::size_t n) { return join(p.at(n), split(n)); };
    return PartitionSequence::programmatic(space, p.name() + " on Y", gen, p.defined_up_to());
}

RestrictedSystem restrict_system(const MeasureSequence& mu, SetSequence y, std::size_t horizon) {
    if (horizon == 0) throw ArgumentError("restriction needs horizon >= 1");
    const auto& sys = mu.system();
    Rational c = mu.at(1).mass(y.at(1));
    if (c.is_zero()) throw CertificateError("restriction: mu_1(Y_1) = 0");
    for (std::size_t n = 1; n <= horizon; ++n) {
        Rational m = mu.at(n).mass(y.at(n));
        if (m != c)
            throw CertificateError("restriction: mu_" + std::to_string(n) + "(Y_" + std::to_string(n) + ") = " +
                                   m.str() + " differs from c = " + c.str());
        if (!image(sys.map(n), y.at(n)).subset_of(y.at(n + 1)))
            throw CertificateError("restriction: f_" + std::to_string(n) + "(Y_" + std::to_string(n) +
                                   ") is not inside Y_" + std::to_string(n + 1));
    }
    MeasureSequence nu(sys, mu.at(1).conditioned_on(y.at(1)));
    for (std::size_t n = 2; n <= horizon; ++n)
        if (!(nu.at(n) == mu.at(n).conditioned_on(y.at(n))))
            throw CertificateError("restriction: nu_" + std::to_string(n) + " is not mu_" + std::to_string(n) +
                                   " conditioned on Y");
    return {sys, std::move(nu), std::move(y), c};
}

SemiconjugacySpec::SemiconjugacySpec(SystemSequence pi, SystemSequence f, SystemSequence g, std::size_t horizon)
    : pi_(std::move(pi)), f_(std::move(f)), g_(std::move(g)), horizon_(horizon) {
    if (horizon == 0) throw ArgumentError("semiconjugacy needs horizon >= 1");
    if (pi_.space() != f_.space() || pi_.space() != g_.space())
        throw DomainError("semiconjugacy between different spaces");
    for (std::size_t n = 1; n <= horizon; ++n) {
        if (!(compose(pi_.map(n + 1), f_.map(n)) == compose(g_.map(n), pi_.map(n))))
            throw CertificateError("semiconjugacy: pi_" + std::to_string(n + 1) + " o f_" + std::to_string(n) +
                                   " != g_" + std::to_string(n) + " o pi_" + std::to_string(n));
    }
    auto [s1, t1] = joint_cycle(pi_.prefix_length(), pi_.period(), f_.prefix_length(), f_.period());
    auto [s2, t2] = joint_cycle(s1 - 1, t1, g_.prefix_length(), g_.period());
    // index n involves π_n, π_{n+1}, f_n, g_n
    complete_ = horizon + 1 >= s2 + t2;
}

PartitionSequence pullback_by_semiconjugacy(const SemiconjugacySpec& spec, const PartitionSequence& q) {
    const auto& pi = spec.pi();
    if (q.is_periodic()) {
        auto [start, period] = joint_cycle(pi.prefix_length(), pi.period(), q.prefix_length(), q.period());
        std::vector<Partition> prefix;
        std::vector<Partition> tail;
        for (std::size_t n = 1; n < start; ++n) prefix.push_back(pullback_partition(pi.map(n), q.at(n)));
        for (std::size_t n = start; n < start + period; ++n) tail.push_back(pullback_partition(pi.map(n), q.at(n)));
        auto out = PartitionSequence::periodic(std::move(prefix), std::move(tail));
        return q.cardinality_bound() ? out.with_bound(*q.cardinality_bound()) : out;
    }
    auto gen = [pi, q](std::size_t n) { return pullback_partition(pi.map(n), q.at(n)); };
    auto out = PartitionSequence::programmatic(q.space(), "pullback of " + q.name(), gen, q.defined_up_to());
    return q.cardinality_bound() ? out.with_bound(*q.cardinality_bound()) : out;
}

}  // namespace nds
