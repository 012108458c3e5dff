// The chartwise fixed-point engine: evaluates each sector's contribution
//
//   prefactor * integral_{U^g} ch_g(E) e^{m c1 twist} e^{-q c1 twist}
//                 Td(T U^g) / prod (1 - zeta^{-1} e^{-c1(N_theta)})
//
// as an exact (quasi-)polynomial in the twist symbols, and sums sectors
// into total / identity / twisted Euler characteristics.
#pragma once

#include "orbirr/graded.hpp"
#include "orbirr/sector.hpp"

#include <cstdlib>
#include <future>
#include <numeric>
#include <thread>

namespace orbirr {

enum class TwistSelection { none, m_only, q_only, both };

inline bool twist_has_m(TwistSelection t) { return t == TwistSelection::m_only || t == TwistSelection::both; }
inline bool twist_has_q(TwistSelection t) { return t == TwistSelection::q_only || t == TwistSelection::both; }

namespace detail {

/// Period of the m-dependence introduced by fiber characters zeta^{w*m}.
inline unsigned sector_character_period(const Sector& s) {
    unsigned long long p = 1;
    for (const auto& piece : s.bundle) {
        if (piece.character_m_weight == 0) continue;
        const unsigned long long n = s.group_order;
        const unsigned long long w =
            static_cast<unsigned long long>(floor_mod(piece.character_m_weight, static_cast<long long>(n)));
        if (w == 0) continue;
        p = lcm_u(p, n / gcd_u(n, w));
    }
    return static_cast<unsigned>(p);
}

inline TwistPoly sector_branch(const Sector& s, long long residue, TwistSelection twist) {
    const int d = s.dim;

    GradedClass numerator = GradedClass::zero(d);
    for (const auto& piece : s.bundle) {
        Cyclotomic chi = piece.character;
        if (piece.character_m_weight != 0)
            chi *= Cyclotomic::root_of_unity(
                s.group_order, static_cast<long long>(piece.character_m_weight) * residue);
        if (chi.is_zero()) continue;
        numerator += exp_class(piece.c1_coeff, d) * chi;
    }
    if (numerator.is_zero()) return TwistPoly();

    if (twist_has_m(twist)) numerator *= exp_twist(s.twist_m_coeff, TwistSymbol::m, +1, d);
    if (twist_has_q(twist)) numerator *= exp_twist(s.twist_q_coeff, TwistSymbol::q, -1, d);
    numerator *= todd_from_roots(s.tangent_plus, s.tangent_minus, d);

    if (!s.normals.empty()) {
        GradedClass denom = GradedClass::one(d);
        for (const auto& n : s.normals) denom *= denominator_factor(n.theta, n.c1_coeff, d);
        numerator *= invert(denom);
    }

    return integrate(numerator, s.fundamental_degree) * s.prefactor;
}

inline unsigned thread_budget() {
    const char* env = std::getenv("ORBIRR_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || v < 0) return 1;
    if (v == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }
    return static_cast<unsigned>(v);
}

template <class Pred>
inline QuasiPoly sum_sectors(const OrbifoldPresentation& p, TwistSelection twist, Pred keep) {
    std::vector<const Sector*> selected;
    for (const auto& s : p.sectors)
        if (keep(s)) selected.push_back(&s);

    auto contribution = [&](const Sector& s) {
        const unsigned period = sector_character_period(s);
        std::vector<TwistPoly> branches(period);
        for (unsigned r = 0; r < period; ++r) branches[r] = sector_branch(s, r, twist);
        QuasiPoly result = QuasiPoly(period, std::move(branches)).collapsed();
        // Per-sector degree bound: m enters through H-nilpotent twists only,
        // so each branch has degree at most the sector dimension.
        if (result.degree_m() > s.dim)
            throw InvariantError("sector '" + s.label + "' exceeds its dimension degree bound");
        return result;
    };

    const unsigned threads = thread_budget();
    QuasiPoly total;
    if (threads > 1 && selected.size() >= 2 * threads) {
        std::vector<std::future<QuasiPoly>> parts;
        const std::size_t chunk = (selected.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t lo = t * chunk;
            if (lo >= selected.size()) break;
            const std::size_t hi = std::min(selected.size(), lo + chunk);
            parts.push_back(std::async(std::launch::async, [&, lo, hi] {
                QuasiPoly acc;
                for (std::size_t i = lo; i < hi; ++i) acc += contribution(*selected[i]);
                return acc;
            }));
        }
        for (auto& f : parts) total += f.get();
    } else {
        for (const Sector* s : selected) total += contribution(*s);
    }
    return total.collapsed();
}

inline void check_rationality(const OrbifoldPresentation& p, const QuasiPoly& chi) {
    if (p.self_conjugate && !chi.has_rational_coefficients())
        throw InvariantError("sector set inconsistent: conjugate sectors do not cancel");
}

}  // namespace detail

/// Contribution of a single sector, as a quasi-polynomial whose period is
/// the order of its m-dependent characters (1 when there are none).
inline QuasiPoly sector_contribution(const Sector& s, TwistSelection twist = TwistSelection::both) {
    const unsigned period = detail::sector_character_period(s);
    std::vector<TwistPoly> branches(period);
    for (unsigned r = 0; r < period; ++r) branches[r] = detail::sector_branch(s, r, twist);
    return QuasiPoly(period, std::move(branches)).collapsed();
}

/// Sum over all sectors. For self-conjugate presentations the cyclotomic
/// imaginary parts must cancel; a residue is a data error.
inline QuasiPoly total_chi(const OrbifoldPresentation& p, TwistSelection twist = TwistSelection::both) {
    validate(p);
    QuasiPoly chi = detail::sum_sectors(p, twist, [](const Sector&) { return true; });
    detail::check_rationality(p, chi);
    if (chi.degree_m() > p.ambient_dim)
        throw InvariantError("twisted sector exceeds degree bound");
    return chi;
}

/// Sum over identity sectors only: (1/s) times the coarse HRR integral.
inline QuasiPoly identity_chi(const OrbifoldPresentation& p, TwistSelection twist = TwistSelection::both) {
    validate(p);
    QuasiPoly chi = detail::sum_sectors(p, twist, [](const Sector& s) { return s.is_identity(); });
    detail::check_rationality(p, chi);
    return chi;
}

/// Sum over twisted sectors; degree in m must not exceed n-1.
inline QuasiPoly twisted_chi(const OrbifoldPresentation& p, TwistSelection twist = TwistSelection::both) {
    validate(p);
    QuasiPoly chi = detail::sum_sectors(p, twist, [](const Sector& s) { return !s.is_identity(); });
    detail::check_rationality(p, chi);
    if (chi.degree_m() > p.ambient_dim - 1)
        throw InvariantError("twisted sector exceeds degree bound");
    return chi;
}

/// Exact evaluation at integer twists.
inline Rational evaluate_at(const QuasiPoly& chi, long long m, long long q) {
    return chi.evaluate_at(m, q);
}
inline Rational evaluate_at(const TwistPoly& chi, long long m, long long q) {
    return chi.evaluate(m, q).rational_part();
}

/// Removes a trivially-acting generic stabilizer: every prefactor carries a
/// visible 1/s which rigidification strips, multiplying chi by s. The
/// denominator of each prefactor must be divisible by s.
inline OrbifoldPresentation rigidify(const OrbifoldPresentation& p) {
    OrbifoldPresentation r = p;
    const unsigned s = p.generic_stab;
    if (s == 1) return r;
    for (auto& sec : r.sectors) {
        if (den(sec.prefactor) % s != 0)
            throw SchemaError("presentation is not a trivial gerbe over its rigidification");
        sec.prefactor *= s;
    }
    r.generic_stab = 1;
    r.name = p.name + " (rigidified)";
    return r;
}

/// Disjoint union: concatenated sector lists; the per-component generic
/// stabilizers stay folded into the prefactors, so chi adds componentwise.
inline OrbifoldPresentation disjoint_union(std::span<const OrbifoldPresentation> parts) {
    if (parts.empty()) return OrbifoldPresentation{};
    OrbifoldPresentation u;
    u.ambient_dim = parts.front().ambient_dim;
    unsigned long long g = 0;
    bool first = true;
    for (const auto& p : parts) {
        if (p.ambient_dim != u.ambient_dim)
            throw SchemaError("disjoint union requires equal ambient dimensions");
        if (!first) u.name += " + ";
        u.name += p.name;
        first = false;
        g = gcd_u(g, p.generic_stab);
        u.self_conjugate = u.self_conjugate && p.self_conjugate;
        for (const auto& s : p.sectors) u.sectors.push_back(s);
    }
    u.generic_stab = static_cast<unsigned>(g == 0 ? 1 : g);
    return u;
}

}  // namespace orbirr
