// Asymptotic extraction and the structural-invariance verdicts: leading
// terms, slopes, twisted-degree audits, rigidification comparison, and the
// jet threshold table with its exact critical slope.
#pragma once

#include "orbirr/scenes.hpp"

namespace orbirr {

struct LeadingTerm {
    int degree = 0;        // 0 for the zero polynomial
    Rational coefficient;  // 0 for the zero polynomial
};

/// Highest m-degree and coefficient of a q-free quasi-polynomial. All
/// residue branches must agree on both.
inline LeadingTerm leading_term(const QuasiPoly& chi) {
    std::optional<LeadingTerm> found;
    for (const auto& branch : chi.branches()) {
        LeadingTerm lt;
        const int d = branch.degree_m();
        if (d >= 0) {
            if (branch.degree_q() > 0)
                throw std::invalid_argument("leading_term expects a q-free polynomial; substitute q first");
            lt.degree = d;
            lt.coefficient = branch.coefficient({d, 0}).rational_part();
        }
        if (!found) {
            found = lt;
        } else if (found->degree != lt.degree || found->coefficient != lt.coefficient) {
            throw InvariantError("leading term is not residue-independent");
        }
    }
    return found.value_or(LeadingTerm{});
}

inline LeadingTerm leading_term(const TwistPoly& chi) { return leading_term(QuasiPoly(chi)); }

/// Asymptotic slope mu(L) = n! * (coefficient of m^n in total chi).
/// Vanishing higher coefficients make this the coarse slope scaled by 1/s.
inline Rational slope(const Scene& scene) {
    const QuasiPoly chi = scene_total_chi(scene).at_q_zero();
    const int n = scene.presentation.ambient_dim;
    const LeadingTerm lt = leading_term(chi);
    if (lt.degree < n) return 0;
    return lt.coefficient * Rational(factorial(static_cast<unsigned>(n)));
}

struct SectorDegreeRow {
    std::string label;
    int dim = 0;
    bool identity = true;
    int degree_m = -1;  // -1: identically zero contribution
    bool within_bound = true;
};

struct DegreeAudit {
    bool pass = true;
    int ambient_dim = 0;
    int total_degree = -1;
    int twisted_degree = -1;  // -1 when there are no twisted sectors
    std::vector<SectorDegreeRow> rows;
};

/// Checks deg_m <= dim sector by sector and deg_m <= n-1 for the twisted
/// part. Failures are reported, not thrown.
inline DegreeAudit degree_bound_audit(const OrbifoldPresentation& p) {
    DegreeAudit audit;
    audit.ambient_dim = p.ambient_dim;
    QuasiPoly total, twisted;
    for (const auto& s : p.sectors) {
        const QuasiPoly c = sector_contribution(s);
        SectorDegreeRow row;
        row.label = s.label;
        row.dim = s.dim;
        row.identity = s.is_identity();
        row.degree_m = c.degree_m();
        row.within_bound = row.degree_m <= s.dim && (s.is_identity() || s.dim <= p.ambient_dim - 1);
        audit.pass = audit.pass && row.within_bound;
        audit.rows.push_back(std::move(row));
        total += c;
        if (!s.is_identity()) twisted += c;
    }
    audit.total_degree = total.degree_m();
    audit.twisted_degree = twisted.degree_m();
    if (audit.twisted_degree > p.ambient_dim - 1) audit.pass = false;
    if (audit.total_degree > p.ambient_dim) audit.pass = false;
    return audit;
}

struct AsymptoticProfile {
    int degree = 0;
    Rational leading;              // coefficient of m^degree in total chi
    Rational identity_leading;     // same, identity sectors only
    int twisted_degree = -1;       // max m-degree of the twisted part
    unsigned generic_stab = 1;
    Rational coarse_normalized;    // s * leading, the rigidification-invariant value
    bool identity_dominant = true; // leading == identity_leading, exactly
};

/// Computes total and identity leading data and the x s-normalized coarse
/// coefficient. The two leading coefficients agree exactly on well-formed
/// data; the profile records rather than throws.
inline AsymptoticProfile invariance_verdict(const Scene& scene) {
    AsymptoticProfile prof;
    const QuasiPoly total = scene_total_chi(scene).at_q_zero();
    const QuasiPoly identity = scene_identity_chi(scene).at_q_zero();
    const QuasiPoly twisted = scene_twisted_chi(scene).at_q_zero();
    const LeadingTerm lt = leading_term(total);
    const LeadingTerm li = leading_term(identity);
    prof.degree = lt.degree;
    prof.leading = lt.coefficient;
    prof.identity_leading = (li.degree == lt.degree) ? li.coefficient : Rational(0);
    prof.twisted_degree = twisted.degree_m();
    prof.generic_stab = scene.presentation.generic_stab;
    prof.coarse_normalized = prof.leading * Rational(scene.presentation.generic_stab);
    prof.identity_dominant = (li.degree == lt.degree) && (li.coefficient == lt.coefficient);
    return prof;
}

/// Critical slope lambda* = sup { q/m : leading coefficient of
/// chi(m, q = lambda m) is positive }, computed exactly from the top
/// total-degree terms. On curve scenes these terms are linear in q, so the
/// leading coefficient is A - B*lambda and lambda* = A/B.
inline Rational critical_slope(const QuasiPoly& chi) {
    if (chi.is_zero()) return 0;
    int top = -1;
    for (const auto& b : chi.branches()) top = std::max(top, b.total_degree());
    std::optional<Rational> a_coeff, b_coeff;
    for (const auto& branch : chi.branches()) {
        Rational a = 0, b = 0;
        for (const auto& [e, c] : branch.terms()) {
            if (e.m + e.q != top) continue;
            if (e.q == 0)
                a = c.rational_part();
            else if (e.q == 1)
                b = -c.rational_part();
            else
                throw std::invalid_argument("critical slope needs chi at most linear in q at top degree");
        }
        if (!a_coeff) {
            a_coeff = a;
            b_coeff = b;
        } else if (*a_coeff != a || *b_coeff != b) {
            throw InvariantError("leading term is not residue-independent");
        }
    }
    if (*b_coeff <= 0)
        throw std::invalid_argument("critical slope undefined: q does not lower the leading coefficient");
    return *a_coeff / *b_coeff;
}

struct ThresholdRow {
    unsigned k = 1;
    Rational lambda_full;      // from the full orbifold chi
    Rational lambda_identity;  // from identity-sector data alone
    bool equal = true;
    bool ggd_positive = false;  // lambda* > 0: positive leading chi for some slope
};

struct ThresholdReport {
    std::string scene;
    Rational ample_degree;
    Rational canonical_degree;      // deg K_orb of the curve
    Rational coarse_curve_lambda;   // (2g-2)/a for the smooth coarse curve, reported separately
    std::vector<ThresholdRow> rows;
    bool all_equal = true;
};

/// Per-k table of critical slopes for the Green-Griffiths tower over a
/// curve scene. The slope from full chi and from the identity sector agree
/// exactly (twisted sectors are lower order in m); the smooth coarse-curve
/// threshold is reported separately without asserting equivalence.
inline ThresholdReport threshold_report(const Scene& scene, unsigned k_max) {
    if (!scene.curve) throw SchemaError("threshold report requires a curve scene");
    if (scene.presentation.ambient_dim != 1) throw SchemaError("threshold report requires ambient dimension 1");
    const CurveData& curve = *scene.curve;
    if (!(curve.ample_degree > 0)) throw SchemaError("threshold report requires an ample degree > 0");

    ThresholdReport report;
    report.scene = scene.name;
    report.ample_degree = curve.ample_degree;
    report.canonical_degree = orbifold_canonical_degree(curve.genus, curve.cones);
    report.coarse_curve_lambda = Rational(2 * curve.genus - 2) / curve.ample_degree;

    for (unsigned k = 1; k <= k_max; ++k) {
        const Scene jets = gg_jet_scene(k, curve.genus, curve.cones, curve.ample_degree);
        ThresholdRow row;
        row.k = k;
        row.lambda_full = critical_slope(scene_total_chi(jets));
        row.lambda_identity = critical_slope(scene_identity_chi(jets));
        row.equal = (row.lambda_full == row.lambda_identity);
        row.ggd_positive = row.lambda_full > 0;
        report.all_equal = report.all_equal && row.equal;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace orbirr
