#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nds/system.hpp"

namespace nds {

// Cores C_{n,i}: each maximal interval of P_{n,i} shrunk inward by `margin`
// on every side that borders another cell, kept closed.
struct MisiurewiczCertificate {
    Rational epsilon;
    Rational margin;
    Rational delta;  // 2 · margin
    std::size_t horizon = 0;
    // true when the horizon covers a full cycle of (f_n, μ_n, P_n)
    bool exact = false;
    std::vector<std::vector<IntervalSet>> cores;  // cores[n-1][i]
    Rational max_defect;                          // max μ_n(P_{n,i} \ C_{n,i})

    [[nodiscard]] std::string json() const;
};

struct MisiurewiczFailure {
    std::size_t n = 0;
    std::size_t cell = 0;
    std::string reason;
};

struct MisiurewiczResult {
    std::optional<MisiurewiczCertificate> certificate;
    std::optional<MisiurewiczFailure> failure;
    [[nodiscard]] bool ok() const { return certificate.has_value(); }
};

// Largest uniform margin whose mass defect is ≤ ε for every n ≤ horizon.
// Sound but incomplete: a failure only says no uniform margin works.
MisiurewiczResult misiurewicz_check(const PartitionSequence& p, const MeasureSequence& mu, const Rational& epsilon,
                                    std::size_t horizon);
// Same cores for a caller-chosen margin.
MisiurewiczResult certify_with_margin(const PartitionSequence& p, const MeasureSequence& mu, const Rational& epsilon,
                                      const Rational& margin, std::size_t horizon);

std::vector<IntervalSet> shrink_cells(const Partition& p, const Rational& margin);

struct CertificateAudit {
    bool cores_inside = true;  // C_{n,i} ⊆ P_{n,i}
    bool mass_ok = true;       // condition (a)
    bool separation_ok = true; // condition (b)
    Rational max_defect;
    std::optional<Rational> min_gap;  // none when fewer than two nonempty cores
    [[nodiscard]] bool ok() const { return cores_inside && mass_ok && separation_ok; }
};

// Re-checks (a) and (b) from the stored cores alone.
CertificateAudit audit_certificate(const MisiurewiczCertificate& cert, const PartitionSequence& p,
                                   const MeasureSequence& mu);

// Cores pulled back along π_n; with isometric π the same δ applies.
MisiurewiczCertificate pullback_certificate(const MisiurewiczCertificate& cert, const SystemSequence& pi);

// Closed-set distance on the space (0 when they meet).
Rational set_distance(SpaceKind space, const IntervalSet& a, const IntervalSet& b);

}  // namespace nds
