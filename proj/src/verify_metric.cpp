#include <cmath>

#include "nds/error.hpp"
#include "nds/misiurewicz.hpp"
#include "nds/verify.hpp"

namespace nds {

namespace {

TraceOptions keep_masses(std::size_t cap = 1'000'000) {
    TraceOptions t;
    t.keep_masses = true;
    t.cap_cells = cap;
    return t;
}

// First n ≤ horizon where a's masses at n differ from b's at scale·n; 0 if none.
std::size_t first_mass_mismatch(const EntropyTrace& a, const EntropyTrace& b, std::size_t scale) {
    for (std::size_t n = 1; n <= a.horizon(); ++n)
        if (a.masses[n - 1] != b.masses[n * scale - 1]) return n;
    return 0;
}

std::string identity_detail(std::size_t bad, std::size_t horizon) {
    return bad == 0 ? "cell masses equal for n = 1.." + std::to_string(horizon)
                    : "cell masses differ at n = " + std::to_string(bad);
}

// Largest violation of H^{(k+1)}_{n-1} ≤ H^{(k)}_n ≤ H_k + H^{(k+1)}_{n-1}.
double sandwich_excess(const EntropyTrace& tk, const EntropyTrace& tk1, double hk) {
    double worst = -1e300;
    for (std::size_t n = 2; n <= tk.horizon() && n - 1 <= tk1.horizon(); ++n) {
        worst = std::max(worst, tk1.at(n - 1) - tk.at(n));
        worst = std::max(worst, tk.at(n) - hk - tk1.at(n - 1));
    }
    return worst;
}

std::string join_names(const std::vector<PartitionSequence>& family) {
    std::string out;
    for (const auto& p : family) out += (out.empty() ? "" : ", ") + p.name();
    return out;
}

}  // namespace

TheoremReport verify_metric_power_rule(const MeasureSequence& mu, const PartitionSequence& p, std::size_t k,
                                       std::size_t horizon, double tolerance) {
    if (k == 0 || horizon == 0) throw ArgumentError("power rule needs k >= 1 and horizon >= 1");
    TheoremReport r;
    r.theorem = "metric-power-rule";
    r.at("partition", p.name());
    r.at("k", std::to_string(k));
    r.at("horizon", std::to_string(horizon));
    const auto& sys = mu.system();
    auto q = refine_sequence(p, sys, k).decimated(k);
    auto tk = entropy_trace(mu.power(k), q, horizon, keep_masses());
    auto t1 = entropy_trace(mu, p, horizon * k, keep_masses());
    std::size_t bad = first_mass_mismatch(tk, t1, k);
    r.check_true("H^[k]_n(Q) = H_nk(P)", bad == 0, identity_detail(bad, horizon));
    double ek = estimate_limsup(tk).estimate;
    double e1 = estimate_limsup(t1).estimate;
    r.check_eq("est(f^[k]) = k est(f)", ek, static_cast<double>(k) * e1, tolerance);
    r.artifact("estimate_power", fmt_double(ek));
    r.artifact("estimate_base", fmt_double(e1));
    r.artifact("trace_power", tk.csv());
    return r;
}

TheoremReport verify_shift_invariance(const MeasureSequence& mu, const PartitionSequence& p, std::size_t k_max,
                                      std::size_t horizon, double tolerance) {
    if (k_max == 0 || horizon < 2) throw ArgumentError("shift invariance needs k_max >= 1 and horizon >= 2");
    TheoremReport r;
    r.theorem = "shift-invariance";
    r.at("partition", p.name());
    r.at("k_max", std::to_string(k_max));
    r.at("horizon", std::to_string(horizon));
    std::vector<EntropyTrace> traces;
    std::vector<double> est;
    for (std::size_t k = 1; k <= k_max + 1; ++k) {
        traces.push_back(entropy_trace(mu.shifted(k), p.shifted(k), horizon));
        if (k <= k_max) est.push_back(estimate_limsup(traces.back()).estimate);
    }
    double spread = *std::max_element(est.begin(), est.end()) - *std::min_element(est.begin(), est.end());
    r.check_le("max |est_k - est_l|", spread, 0, tolerance);
    double worst = -1e300;
    for (std::size_t k = 1; k <= k_max; ++k)
        worst = std::max(worst, sandwich_excess(traces[k - 1], traces[k], partition_entropy(mu.at(k), p.at(k))));
    r.check_le("sandwich excess", worst, 0, 1e-9, true);
    for (std::size_t k = 1; k <= k_max; ++k) r.artifact("estimate_k" + std::to_string(k), fmt_double(est[k - 1]));
    return r;
}

TheoremReport verify_commutativity(const PiecewiseLinearMap& f, const PiecewiseLinearMap& g,
                                   const RationalMeasure& mu, const RationalMeasure& nu, const Partition& q,
                                   const CommutativityOptions& opts) {
    if (f.space() != g.space() || q.space() != f.space()) throw DomainError("maps and partition on different spaces");
    if (!(pushforward_measure(f, mu) == nu)) throw CertificateError("f does not carry mu to nu");
    if (!(pushforward_measure(g, nu) == mu)) throw CertificateError("g does not carry nu to mu");
    const std::size_t H = opts.horizon;
    const SpaceKind space = f.space();
    TheoremReport r;
    r.theorem = "commutativity";
    r.at("f", f.str());
    r.at("g", g.str());
    r.at("horizon", std::to_string(H));

    Partition p = pullback_partition(f, q);
    MeasureSequence alt(SystemSequence::periodic({}, {f, g}), mu);
    auto pseq = PartitionSequence::periodic({}, {p, q});
    auto t_alt = entropy_trace(alt, pseq, 2 * H, keep_masses(opts.cap_cells));
    auto gf = compose(g, f);
    auto fg = compose(f, g);
    MeasureSequence mgf(SystemSequence::constant(gf), mu);
    MeasureSequence mfg(SystemSequence::constant(fg), nu);
    auto t_gf = entropy_trace(mgf, PartitionSequence::constant(p), H, keep_masses(opts.cap_cells));
    std::size_t bad = first_mass_mismatch(t_gf, t_alt, 2);
    r.check_true("H^alt_2n = H_mu(join (g f)^-j P)", bad == 0, identity_detail(bad, H));

    Partition p2 = join(q, pullback_partition(g, p));
    auto t_alt2 = entropy_trace(alt.shifted(2), pseq.shifted(2), 2 * H, keep_masses(opts.cap_cells));
    auto t_fg = entropy_trace(mfg, PartitionSequence::constant(p2), H, keep_masses(opts.cap_cells));
    bad = first_mass_mismatch(t_fg, t_alt2, 2);
    r.check_true("H^alt(2)_2n = H_nu(join (f g)^-j (Q v g^-1 P))", bad == 0, identity_detail(bad, H));
    r.check_le("sandwich excess", sandwich_excess(t_alt, t_alt2, partition_entropy(mu, p)), 0, 1e-9, true);

    double e_gf = estimate_limsup(t_gf).estimate;
    double e_fg = estimate_limsup(t_fg).estimate;
    r.check_eq("matched rates", e_gf, e_fg, opts.tolerance);

    // Q v D_j increases with j, so the finest member bounds the others
    std::vector<PartitionSequence> family = {
        PartitionSequence::constant(join(q, Partition::uniform(space, std::int64_t{1} << opts.dyadic_levels)))};
    TraceOptions cap;
    cap.cap_cells = opts.cap_cells;
    double h_gf = metric_entropy_estimate(mgf, family, H, 0, cap).value;
    double h_fg = metric_entropy_estimate(mfg, family, H, 0, cap).value;
    r.check_eq("h_mu(g f) = h_nu(f g)", h_gf, h_fg, opts.tolerance);
    r.artifact("rate_gf_P", fmt_double(e_gf));
    r.artifact("rate_fg_matched", fmt_double(e_fg));
    r.artifact("h_gf", fmt_double(h_gf));
    r.artifact("h_fg", fmt_double(h_fg));
    r.notes.push_back("full entropies use Q v D, D the " + std::to_string(std::int64_t{1} << opts.dyadic_levels) +
                      " equal intervals");
    return r;
}

TheoremReport verify_restriction(const MeasureSequence& mu, const SetSequence& y,
                                 const std::vector<PartitionSequence>& family, std::size_t horizon,
                                 double tolerance) {
    TheoremReport r;
    r.theorem = "restriction";
    r.at("family", join_names(family));
    r.at("horizon", std::to_string(horizon));
    RestrictedSystem rs = restrict_system(mu, y, horizon + 1);
    std::vector<PartitionSequence> restricted;
    for (const auto& p : family) restricted.push_back(rs.restrict_partitions(p));
    double full = metric_entropy_estimate(mu, family, horizon).value;
    double part = metric_entropy_estimate(rs.measures, restricted, horizon).value;
    double c = rs.mass.to_double();
    r.at("c", rs.mass.str());
    r.check_le("c h_restricted <= h_full", c * part, full, tolerance);
    if (rs.mass == Rational(1)) r.check_eq("c = 1: h_restricted = h_full", part, full, tolerance);
    r.artifact("h_full", fmt_double(full));
    r.artifact("h_restricted", fmt_double(part));
    return r;
}

TheoremReport verify_equiconjugacy(const SemiconjugacySpec& pi, const RationalMeasure& source_mu1,
                                   const RationalMeasure& target_mu1, const std::vector<PartitionSequence>& family,
                                   const Rational& epsilon, std::size_t horizon, double tolerance) {
    if (!(pushforward_measure(pi.pi().map(1), source_mu1) == target_mu1))
        throw CertificateError("pi_1 does not carry the source measure to the target measure");
    TheoremReport r;
    r.theorem = "equiconjugacy";
    r.at("family", join_names(family));
    r.at("epsilon", epsilon.str());
    r.at("horizon", std::to_string(horizon));
    MeasureSequence nu(pi.target(), target_mu1);
    MeasureSequence mu(pi.source(), source_mu1);
    std::vector<PartitionSequence> targets;
    std::vector<PartitionSequence> sources;
    bool reverified = true;
    std::string detail;
    for (std::size_t i = 0; i < family.size(); ++i) {
        auto cert = misiurewicz_check(family[i], nu, epsilon, horizon);
        if (!cert.ok()) {
            r.notes.push_back("member " + std::to_string(i) + " excluded: " + cert.failure->reason);
            continue;
        }
        auto pulled = pullback_by_semiconjugacy(pi, family[i]);
        auto back = pullback_certificate(*cert.certificate, pi.pi());
        auto audit = audit_certificate(back, pulled, mu);
        if (!audit.ok() && reverified) {
            reverified = false;
            detail = "member " + std::to_string(i) + " fails after pullback";
        }
        r.artifact("delta_" + std::to_string(i), cert.certificate->delta.str());
        targets.push_back(family[i]);
        sources.push_back(pulled);
    }
    if (targets.empty()) {
        r.check_true("some member certified", false, "no member of the family is certified");
        return r;
    }
    r.check_true("pulled-back certificates re-verify with the same delta", reverified,
                 reverified ? std::to_string(targets.size()) + " certificates" : detail);
    auto et = metric_entropy_estimate(nu, targets, horizon);
    auto es = metric_entropy_estimate(mu, sources, horizon);
    double worst = 0;
    for (std::size_t i = 0; i < targets.size(); ++i)
        worst = std::max(worst, std::abs(et.members[i].estimate - es.members[i].estimate));
    r.check_le("max member |est(P) - est(pi^-1 P)|", worst, 0, tolerance);
    r.check_eq("h_source = h_target", es.value, et.value, tolerance);
    return r;
}

}  // namespace nds
