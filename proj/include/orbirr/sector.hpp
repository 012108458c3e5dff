// Sector data model: one fixed-locus contribution of the chartwise
// fixed-point formula, and full orbifold presentations built from them.
//
// Conventions (pinned by the Molien and floor-divisor oracles):
//   * theta is the angle of the *geometric* differential of g on a normal
//     summand, so g acts on it by e^{2 pi i theta}, theta in (0,1);
//   * FiberPiece.character is the trace of the geometric action of g on the
//     rank-1 fiber piece; for a twist that grows with m, the piece carries
//     the extra character zeta_{group_order}^{character_m_weight * m}.
#pragma once

#include "orbirr/twist_poly.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace orbirr {

/// Input or scene-data errors (CLI exit code 2).
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Violations of internal mathematical invariants (CLI exit code 3).
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rank-1 eigen-summand of the normal bundle of a fixed locus.
struct NormalSummand {
    Rational c1_coeff;  // c1 of the summand = c1_coeff * H on the fixed locus
    Rational theta;     // rotation angle in (0,1)

    friend bool operator==(const NormalSummand& a, const NormalSummand& b) {
        return a.c1_coeff == b.c1_coeff && a.theta == b.theta;
    }
};

/// Rank-1 piece of the restricted bundle on a sector.
struct FiberPiece {
    Rational c1_coeff;
    Cyclotomic character = Cyclotomic::one();
    int character_m_weight = 0;  // extra character zeta^{w*m}, w mod group order

    friend bool operator==(const FiberPiece& a, const FiberPiece& b) {
        return a.c1_coeff == b.c1_coeff && a.character == b.character &&
               a.character_m_weight == b.character_m_weight;
    }
};

struct Sector {
    std::string label;
    int dim = 0;
    Rational fundamental_degree = 1;  // integral of H^dim over the fixed locus
    Rational prefactor = 1;           // 1/|G_i|-weighted multiplicity of this element
    unsigned group_order = 1;         // 1 for identity sectors
    std::vector<Rational> tangent_plus;   // Chern roots of Td numerator factors
    std::vector<Rational> tangent_minus;  // virtual (denominator) Todd roots
    std::vector<NormalSummand> normals;
    std::vector<FiberPiece> bundle;
    Rational twist_m_coeff = 0;  // rate of the m-twist: e^{+m * coeff * H}
    Rational twist_q_coeff = 0;  // rate of the q-twist: e^{-q * coeff * H}

    bool is_identity() const { return group_order == 1; }

    friend bool operator==(const Sector& a, const Sector& b) {
        return a.label == b.label && a.dim == b.dim && a.fundamental_degree == b.fundamental_degree &&
               a.prefactor == b.prefactor && a.group_order == b.group_order &&
               a.tangent_plus == b.tangent_plus && a.tangent_minus == b.tangent_minus &&
               a.normals == b.normals && a.bundle == b.bundle && a.twist_m_coeff == b.twist_m_coeff &&
               a.twist_q_coeff == b.twist_q_coeff;
    }
};

struct OrbifoldPresentation {
    std::string name;
    int ambient_dim = 0;
    unsigned generic_stab = 1;
    std::vector<Sector> sectors;
    /// Declares that the sector multiset is closed under g -> g^{-1}
    /// (theta -> 1-theta with conjugated characters); when set, total chi
    /// must come out with purely rational coefficients.
    bool self_conjugate = true;

    friend bool operator==(const OrbifoldPresentation& a, const OrbifoldPresentation& b) {
        return a.name == b.name && a.ambient_dim == b.ambient_dim && a.generic_stab == b.generic_stab &&
               a.sectors == b.sectors && a.self_conjugate == b.self_conjugate;
    }
};

namespace detail {

/// Canonical multiset key of a sector, with an option to conjugate the
/// rotation/character data first. Characters are rendered in Q(zeta_field),
/// the presentation-wide common field, so equal values written over
/// different orders compare equal. Labels are excluded: presentations that
/// differ only in labeling are the same orbifold data.
inline std::string sector_signature(const Sector& s, bool conjugated, unsigned field) {
    auto rat = [](const Rational& r) { return to_string(r); };
    std::vector<std::string> normals, pieces;
    for (const auto& n : s.normals) {
        const Rational th = conjugated ? Rational(1) - n.theta : n.theta;
        normals.push_back(rat(th) + "@" + rat(n.c1_coeff));
    }
    for (const auto& p : s.bundle) {
        const Cyclotomic ch = conjugated ? p.character.conj() : p.character;
        long long w = p.character_m_weight;
        if (conjugated) w = -w;
        w = floor_mod(w, static_cast<long long>(s.group_order));
        pieces.push_back(rat(p.c1_coeff) + "#" + ch.promoted(field).to_string() + "#" + std::to_string(w));
    }
    std::sort(normals.begin(), normals.end());
    std::sort(pieces.begin(), pieces.end());
    std::vector<std::string> tp, tm;
    for (const auto& r : s.tangent_plus) tp.push_back(rat(r));
    for (const auto& r : s.tangent_minus) tm.push_back(rat(r));
    std::sort(tp.begin(), tp.end());
    std::sort(tm.begin(), tm.end());

    std::string sig = "d" + std::to_string(s.dim) + "|f" + rat(s.fundamental_degree) + "|p" +
                      rat(s.prefactor) + "|g" + std::to_string(s.group_order) + "|m" +
                      rat(s.twist_m_coeff) + "|q" + rat(s.twist_q_coeff) + "|T";
    for (const auto& x : tp) sig += x + ",";
    sig += "|t";
    for (const auto& x : tm) sig += x + ",";
    sig += "|N";
    for (const auto& x : normals) sig += x + ";";
    sig += "|B";
    for (const auto& x : pieces) sig += x + ";";
    return sig;
}

}  // namespace detail

/// The common cyclotomic field Q(zeta_M) of a presentation: M is the lcm of
/// all sector group orders and character orders.
inline unsigned common_field_order(const OrbifoldPresentation& p) {
    unsigned long long m = 1;
    for (const auto& s : p.sectors) {
        m = lcm_u(m, s.group_order);
        for (const auto& piece : s.bundle) m = lcm_u(m, piece.character.order());
        for (const auto& n : s.normals) m = lcm_u(m, static_cast<unsigned long long>(den(n.theta)));
    }
    return static_cast<unsigned>(m);
}

/// True when the sector multiset is closed under inverse-element
/// conjugation (theta -> 1-theta, characters conjugated, m-weights negated).
inline bool conjugate_closed(const OrbifoldPresentation& p) {
    const unsigned field = common_field_order(p);
    std::multiset<std::string> plain, conj;
    for (const auto& s : p.sectors) {
        plain.insert(detail::sector_signature(s, false, field));
        conj.insert(detail::sector_signature(s, true, field));
    }
    return plain == conj;
}

/// Structural validation; throws SchemaError on malformed data.
inline void validate(const OrbifoldPresentation& p) {
    if (p.ambient_dim < 0) throw SchemaError("ambient dimension must be >= 0");
    if (p.generic_stab == 0) throw SchemaError("generic stabilizer order must be positive");
    for (const auto& s : p.sectors) {
        if (s.dim < 0 || s.dim > p.ambient_dim)
            throw SchemaError("sector '" + s.label + "': dimension out of range");
        if (s.group_order == 0) throw SchemaError("sector '" + s.label + "': group order must be positive");
        if (s.is_identity()) {
            if (!s.normals.empty())
                throw SchemaError("sector '" + s.label + "': identity sectors have empty normals");
        } else {
            if (s.dim > p.ambient_dim - 1)
                throw SchemaError("sector '" + s.label + "': twisted sector must have dim <= n-1");
        }
        for (const auto& n : s.normals)
            if (!(n.theta > 0 && n.theta < 1))
                throw SchemaError(
                    "sector '" + s.label +
                    "': rotation angle must lie in (0,1); theta=0 belongs to the tangent, not normal, directions");
        for (const auto& piece : s.bundle)
            if (!piece.character.is_zero_or_root_of_unity())
                throw SchemaError("sector '" + s.label + "': fiber character must be a root of unity or zero");
    }
    if (p.self_conjugate && !conjugate_closed(p))
        throw SchemaError("presentation declared self-conjugate but sector data is not closed under conjugation");
}

}  // namespace orbirr
