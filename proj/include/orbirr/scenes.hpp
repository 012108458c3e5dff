// Scene builders: translate each geometric family (projective spaces,
// hypersurfaces, cyclic quotients of P^1, orbifold curves, Green-Griffiths
// jet bundles on curves) into an orbifold presentation with the bundle data
// baked into the sectors.
//
// Rotation/character conventions are geometric throughout (see sector.hpp);
// they were fixed by requiring exact agreement with the Molien and
// floor-divisor counting oracles, which is the delicate part of this file.
#pragma once

#include "orbirr/kawasaki.hpp"

#include <functional>
#include <map>
#include <optional>

namespace orbirr {

struct ConePoint {
    unsigned order = 2;
    std::string label;
};

/// Curve parameters kept alongside curve-based scenes so jet towers and
/// threshold tables can be rebuilt from them.
struct CurveData {
    int genus = 0;
    std::vector<ConePoint> cones;
    Rational ample_degree = 1;  // coarse degree of the polarization A
    unsigned jet_order = 0;     // 0 for line-bundle scenes, k for jet scenes
};

/// User-facing description of the bundle placed on a scene. Bundles given
/// by explicit fiber pieces are expressed through custom scene files, where
/// the sector list carries them directly.
struct BundleSpec {
    enum class Kind { line, gg_jet };
    Kind kind = Kind::line;
    Rational line_coeff = 0;            // line: coarse degree part
    std::vector<int> isotropy_weights;  // line: one weight per cone point
    unsigned jet_order = 1;             // gg_jet: k
    Rational twist_q_coeff = 1;         // rate of the L^{-q} twist
};

struct Scene {
    std::string name;
    OrbifoldPresentation presentation;
    QuasiPoly multiplicity = QuasiPoly::constant(Rational(1));  // rank factor in m
    BundleSpec bundle;
    std::optional<CurveData> curve;
};

/// chi of the scene: rank multiplicity times the sector sum.
inline QuasiPoly scene_total_chi(const Scene& s, TwistSelection t = TwistSelection::both) {
    return (s.multiplicity * total_chi(s.presentation, t)).collapsed();
}
inline QuasiPoly scene_identity_chi(const Scene& s, TwistSelection t = TwistSelection::both) {
    return (s.multiplicity * identity_chi(s.presentation, t)).collapsed();
}
inline QuasiPoly scene_twisted_chi(const Scene& s, TwistSelection t = TwistSelection::both) {
    return (s.multiplicity * twisted_chi(s.presentation, t)).collapsed();
}

/// rank(E) at twist m (the multiplicity factor; 1 for line-bundle scenes).
inline Rational scene_rank_at(const Scene& s, long long m) {
    return s.multiplicity.evaluate_at(m, 0);
}

namespace detail {

/// Partitions of m into parts <= k, counted independently of the oracle
/// module via the recurrence p(m, k) = p(m, k-1) + p(m-k, k).
inline Rational bounded_partitions(long long m, unsigned k) {
    if (m < 0) return 0;
    if (m == 0) return 1;
    if (k == 0) return 0;
    static std::map<std::pair<long long, unsigned>, Rational> memo;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    std::function<Rational(long long, unsigned)> rec = [&](long long mm, unsigned kk) -> Rational {
        if (mm < 0) return 0;
        if (mm == 0) return 1;
        if (kk == 0) return 0;
        const auto key = std::make_pair(mm, kk);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const Rational v = rec(mm, kk - 1) + rec(mm - kk, kk);
        memo.emplace(key, v);
        return v;
    };
    return rec(m, k);
}

/// Lagrange interpolation through exact points, returned as ascending
/// coefficients in m.
inline std::vector<Rational> lagrange(const std::vector<std::pair<Rational, Rational>>& pts) {
    const std::size_t n = pts.size();
    std::vector<Rational> acc(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> basis{Rational(1)};
        Rational scale = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            // basis *= (x - x_j)
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t t = 0; t < basis.size(); ++t) {
                next[t] -= basis[t] * pts[j].first;
                next[t + 1] += basis[t];
            }
            basis = std::move(next);
            scale *= (pts[i].first - pts[j].first);
        }
        const Rational w = pts[i].second / scale;
        for (std::size_t t = 0; t < basis.size(); ++t) acc[t] += basis[t] * w;
    }
    return acc;
}

inline Rational reduced_weight(long long w, unsigned nu) {
    return Rational(floor_mod(w, static_cast<long long>(nu)));
}

}  // namespace detail

/// Rank of E^GG_{k,m} on a curve as an exact quasi-polynomial: the number
/// of partitions of m into parts <= k, interpolated per residue class
/// modulo lcm(1..k).
inline QuasiPoly jet_rank_quasipoly(unsigned k) {
    if (k < 1) throw SchemaError("jet order k must be >= 1");
    unsigned long long period = 1;
    for (unsigned j = 1; j <= k; ++j) period = lcm_u(period, j);
    const unsigned L = static_cast<unsigned>(period);
    std::vector<TwistPoly> branches(L);
    for (unsigned r = 0; r < L; ++r) {
        std::vector<std::pair<Rational, Rational>> pts;
        for (unsigned t = 0; t < k; ++t) {
            const long long m = static_cast<long long>(r) + static_cast<long long>(L) * t;
            pts.push_back({Rational(m), detail::bounded_partitions(m, k)});
        }
        const std::vector<Rational> coeffs = detail::lagrange(pts);
        TwistPoly poly;
        for (std::size_t d = 0; d < coeffs.size(); ++d)
            poly.add_term({static_cast<int>(d), 0}, Cyclotomic(coeffs[d]));
        branches[r] = std::move(poly);
    }
    return QuasiPoly(L, std::move(branches)).collapsed();
}

/// P^n with O(k): a single identity sector with the Euler-sequence tangent
/// roots. chi(m) = C(n + k + m, n) as a polynomial.
inline Scene projective_space(int n, long long k) {
    if (n < 1) throw SchemaError("projective_space: n must be >= 1");
    Sector id;
    id.label = "identity";
    id.dim = n;
    id.fundamental_degree = 1;
    id.prefactor = 1;
    id.tangent_plus.assign(static_cast<std::size_t>(n) + 1, Rational(1));
    id.bundle = {FiberPiece{Rational(k), Cyclotomic::one(), 0}};
    id.twist_m_coeff = 1;
    id.twist_q_coeff = 1;

    Scene s;
    s.name = "P" + std::to_string(n) + ", O(" + std::to_string(k) + ")";
    s.presentation.name = s.name;
    s.presentation.ambient_dim = n;
    s.presentation.sectors = {std::move(id)};
    s.bundle.line_coeff = Rational(k);
    return s;
}

/// Smooth degree-d hypersurface in P^n with O(m0): identity sector of
/// dimension n-1, fundamental degree d, virtual tangent roots from the
/// Euler and normal-bundle sequences.
inline Scene hypersurface(int n, long long d, long long m0) {
    if (n < 2) throw SchemaError("hypersurface: n must be >= 2");
    if (d < 1) throw SchemaError("hypersurface: degree must be >= 1");
    Sector id;
    id.label = "identity";
    id.dim = n - 1;
    id.fundamental_degree = Rational(d);
    id.prefactor = 1;
    id.tangent_plus.assign(static_cast<std::size_t>(n) + 1, Rational(1));
    id.tangent_minus = {Rational(d)};
    id.bundle = {FiberPiece{Rational(m0), Cyclotomic::one(), 0}};
    id.twist_m_coeff = 1;
    id.twist_q_coeff = 1;

    Scene s;
    s.name = "Y_" + std::to_string(d) + " in P" + std::to_string(n) + ", O(" + std::to_string(m0) + ")";
    s.presentation.name = s.name;
    s.presentation.ambient_dim = n - 1;
    s.presentation.sectors = {std::move(id)};
    s.bundle.line_coeff = Rational(m0);
    return s;
}

/// [P^1 / Z_r] where the generator acts by [z0 : z1] -> [zeta^{w0} z0 :
/// zeta^{w1} z1], with O(k) linearized so the monomial z0^a z1^b has section
/// weight a*w0 + b*w1 + lin (mod r). The twist symbol m rides O(stride);
/// stride = r gives a bundle pulled back from the coarse space.
///
/// At the fixed point [1:0] the geometric rotation on the chart coordinate
/// z1/z0 is zeta^{w1-w0}, and the geometric fiber weight of the linearized
/// O(k) is -(k*w0 + lin); the other fixed point swaps the roles. These two
/// signs are exactly what the Molien oracle certifies.
inline Scene cyclic_quotient_p1(unsigned r, long long w0, long long w1, long long lin, long long k,
                                unsigned stride = 1) {
    if (r < 1) throw SchemaError("cyclic_quotient_p1: order must be >= 1");
    const long long rr = static_cast<long long>(r);
    const long long delta = floor_mod(w1 - w0, rr);
    if (r > 1 && gcd_u(static_cast<unsigned long long>(delta), r) != 1)
        throw SchemaError("rigidify first: action has kernel");

    Scene s;
    s.name = "[P1/Z" + std::to_string(r) + "] w=(" + std::to_string(w0) + "," + std::to_string(w1) +
             ") lin=" + std::to_string(lin) + ", O(" + std::to_string(k) + ")";
    s.presentation.name = s.name;
    s.presentation.ambient_dim = 1;
    s.bundle.line_coeff = Rational(k);

    Sector id;
    id.label = "identity";
    id.dim = 1;
    id.fundamental_degree = 1;
    id.prefactor = Rational(1, rr);
    id.tangent_plus = {Rational(1), Rational(1)};
    id.bundle = {FiberPiece{Rational(k), Cyclotomic::one(), 0}};
    id.twist_m_coeff = Rational(stride);
    id.twist_q_coeff = Rational(stride);
    s.presentation.sectors.push_back(std::move(id));

    for (long long j = 1; j < rr; ++j) {
        // Geometric fiber trace zeta^{-j * (k*w + lin)}; the twist O(stride*m)
        // adds zeta^{-j * w * stride * m}.
        auto point_sector = [&](const char* tag, long long rotation, long long w) {
            Sector p;
            p.label = std::string(tag) + " g^" + std::to_string(j);
            p.dim = 0;
            p.fundamental_degree = 1;
            p.prefactor = Rational(1, rr);
            p.group_order = r;
            p.normals = {NormalSummand{Rational(0), Rational(floor_mod(rotation, rr), rr)}};
            p.bundle = {FiberPiece{Rational(0), Cyclotomic::root_of_unity(r, -j * (k * w + lin)),
                                   static_cast<int>(floor_mod(-j * w * static_cast<long long>(stride), rr))}};
            p.twist_m_coeff = Rational(stride);
            p.twist_q_coeff = Rational(stride);
            return p;
        };
        s.presentation.sectors.push_back(point_sector("fix[1:0]", delta * j, w0));
        s.presentation.sectors.push_back(point_sector("fix[0:1]", -delta * j, w1));
    }
    return s;
}

/// Orbifold curve of genus g with cyclic cone points, carrying an orbifold
/// line bundle of coarse degree c and (geometric) isotropy weights, twisted
/// by powers of an ample A of coarse degree ample_degree pulled back from
/// the coarse space. chi(m, q) = chi(B otimes A^{m-q}).
inline Scene orbifold_curve(int genus, const std::vector<ConePoint>& cones, const Rational& coarse_deg,
                            const std::vector<int>& weights, const Rational& ample_degree = 1) {
    if (genus < 0) throw SchemaError("orbifold_curve: genus must be >= 0");
    if (!weights.empty() && weights.size() != cones.size())
        throw SchemaError("orbifold_curve: one isotropy weight per cone point expected");
    for (const auto& c : cones)
        if (c.order < 2) throw SchemaError("orbifold_curve: cone order must be >= 2");

    // deg T_orb = 2 - 2g - sum (1 - 1/nu); deg_orb(B) = c + sum w/nu.
    Rational tangent_deg = Rational(2 - 2 * genus);
    Rational bundle_deg = coarse_deg;
    for (std::size_t i = 0; i < cones.size(); ++i) {
        const unsigned nu = cones[i].order;
        tangent_deg -= Rational(nu - 1, nu);
        if (!weights.empty()) bundle_deg += detail::reduced_weight(weights[i], nu) / Rational(nu);
    }

    Scene s;
    s.name = "curve g=" + std::to_string(genus);
    for (const auto& c : cones) s.name += "," + std::to_string(c.order);
    s.name += " deg " + to_string(coarse_deg);
    s.presentation.name = s.name;
    s.presentation.ambient_dim = 1;
    s.curve = CurveData{genus, cones, ample_degree, 0};
    s.bundle.line_coeff = coarse_deg;
    s.bundle.isotropy_weights = weights;
    s.bundle.twist_q_coeff = ample_degree;

    Sector id;
    id.label = "identity";
    id.dim = 1;
    id.fundamental_degree = 1;
    id.prefactor = 1;
    id.tangent_plus = {tangent_deg};
    id.bundle = {FiberPiece{bundle_deg, Cyclotomic::one(), 0}};
    id.twist_m_coeff = ample_degree;
    id.twist_q_coeff = ample_degree;
    s.presentation.sectors.push_back(std::move(id));

    for (std::size_t i = 0; i < cones.size(); ++i) {
        const unsigned nu = cones[i].order;
        const long long w = weights.empty() ? 0 : floor_mod(weights[i], static_cast<long long>(nu));
        for (long long j = 1; j < static_cast<long long>(nu); ++j) {
            Sector p;
            p.label = (cones[i].label.empty() ? "cone" + std::to_string(i) : cones[i].label) + " g^" +
                      std::to_string(j);
            p.dim = 0;
            p.fundamental_degree = 1;
            p.prefactor = Rational(1, static_cast<long long>(nu));
            p.group_order = nu;
            p.normals = {NormalSummand{Rational(0), Rational(j, static_cast<long long>(nu))}};
            p.bundle = {FiberPiece{Rational(0), Cyclotomic::root_of_unity(nu, j * w), 0}};
            p.twist_m_coeff = ample_degree;
            p.twist_q_coeff = ample_degree;
            s.presentation.sectors.push_back(std::move(p));
        }
    }
    return s;
}

inline Rational orbifold_canonical_degree(int genus, const std::vector<ConePoint>& cones) {
    Rational deg = Rational(2 * genus - 2);
    for (const auto& c : cones) deg += Rational(c.order - 1, c.order);
    return deg;
}

/// Green-Griffiths jet scene on a curve: E^GG_{k,m} decomposes into
/// p_k(m) copies of K_orb^m, so the m-twist rides deg K_orb with cone
/// characters zeta^{-jm}, and the rank enters as a quasi-polynomial
/// multiplicity. The q-twist rides the pulled-back ample A.
inline Scene gg_jet_scene(unsigned k, int genus, const std::vector<ConePoint>& cones,
                          const Rational& ample_degree = 1) {
    if (k < 1) throw SchemaError("jet order k must be >= 1");
    const Rational canonical_deg = orbifold_canonical_degree(genus, cones);
    Rational tangent_deg = -canonical_deg;

    Scene s;
    s.name = "jets k=" + std::to_string(k) + " on curve g=" + std::to_string(genus);
    for (const auto& c : cones) s.name += "," + std::to_string(c.order);
    s.presentation.name = s.name;
    s.presentation.ambient_dim = 1;
    s.curve = CurveData{genus, cones, ample_degree, k};
    s.bundle.kind = BundleSpec::Kind::gg_jet;
    s.bundle.jet_order = k;
    s.bundle.twist_q_coeff = ample_degree;
    s.multiplicity = jet_rank_quasipoly(k);

    Sector id;
    id.label = "identity";
    id.dim = 1;
    id.fundamental_degree = 1;
    id.prefactor = 1;
    id.tangent_plus = {tangent_deg};
    id.bundle = {FiberPiece{Rational(0), Cyclotomic::one(), 0}};
    id.twist_m_coeff = canonical_deg;
    id.twist_q_coeff = ample_degree;
    s.presentation.sectors.push_back(std::move(id));

    for (std::size_t i = 0; i < cones.size(); ++i) {
        const unsigned nu = cones[i].order;
        for (long long j = 1; j < static_cast<long long>(nu); ++j) {
            Sector p;
            p.label = "cone" + std::to_string(i) + " g^" + std::to_string(j);
            p.dim = 0;
            p.fundamental_degree = 1;
            p.prefactor = Rational(1, static_cast<long long>(nu));
            p.group_order = nu;
            p.normals = {NormalSummand{Rational(0), Rational(j, static_cast<long long>(nu))}};
            // K_orb^m has geometric fiber weight -m at a cone point.
            p.bundle = {FiberPiece{Rational(0), Cyclotomic::one(),
                                   static_cast<int>(floor_mod(-j, static_cast<long long>(nu)))}};
            p.twist_m_coeff = canonical_deg;
            p.twist_q_coeff = ample_degree;
            s.presentation.sectors.push_back(std::move(p));
        }
    }
    return s;
}

/// Decorates a scene with a trivially-acting Z_t: all prefactors pick up
/// 1/t and the generic stabilizer multiplies by t. chi scales by 1/t.
inline Scene decorate_gerbe(Scene s, unsigned t) {
    if (t == 0) throw SchemaError("gerbe order must be positive");
    for (auto& sec : s.presentation.sectors) sec.prefactor /= Rational(t);
    s.presentation.generic_stab *= t;
    s.name += " (Z" + std::to_string(t) + " gerbe)";
    s.presentation.name = s.name;
    return s;
}

/// Built-in scene library (effective orbifolds; gerbes are derived via
/// decorate_gerbe or custom scene files).
inline std::vector<std::pair<std::string, Scene>> builtin_scenes() {
    std::vector<std::pair<std::string, Scene>> v;
    v.emplace_back("p1", projective_space(1, 0));
    v.emplace_back("p1_o3", projective_space(1, 3));
    v.emplace_back("p2", projective_space(2, 0));
    v.emplace_back("p3", projective_space(3, 0));
    v.emplace_back("p4", projective_space(4, 0));
    v.emplace_back("conic_p2", hypersurface(2, 2, 0));
    v.emplace_back("elliptic_p2", hypersurface(2, 3, 0));
    v.emplace_back("quadric_p3", hypersurface(3, 2, 0));
    v.emplace_back("quartic_k3", hypersurface(3, 4, 0));
    v.emplace_back("football", cyclic_quotient_p1(2, 0, 1, 0, 2));
    v.emplace_back("football_pullback", cyclic_quotient_p1(2, 0, 1, 0, 0, 2));
    v.emplace_back("z3_quotient", cyclic_quotient_p1(3, 0, 1, 0, 3));
    v.emplace_back("z5_quotient", cyclic_quotient_p1(5, 0, 1, 2, 0));
    v.emplace_back("genus2", orbifold_curve(2, {}, 2, {}, 2));
    v.emplace_back("elliptic_curve", orbifold_curve(1, {}, 0, {}, 1));
    v.emplace_back("triangle_237",
                   orbifold_curve(0, {{2, "c2"}, {3, "c3"}, {7, "c7"}}, 0, {0, 0, 0}, 1));
    v.emplace_back("weighted_23", orbifold_curve(0, {{2, "c2"}, {3, "c3"}}, 0, {1, 2}, 1));
    v.emplace_back("jets_genus2_k2", gg_jet_scene(2, 2, {}, 2));
    v.emplace_back("jets_237_k3", gg_jet_scene(3, 0, {{2, "c2"}, {3, "c3"}, {7, "c7"}}, 1));
    return v;
}

inline Scene find_builtin(const std::string& name) {
    for (auto& [key, scene] : builtin_scenes())
        if (key == name) return scene;
    throw SchemaError("unknown builtin scene: '" + name + "' (see list-scenes)");
}

}  // namespace orbirr
