// Oracle cross-checks: runs the counting oracles against the fixed-point
// engine over parameter grids and reports exact comparisons.
#pragma once

#include "orbirr/analysis.hpp"
#include "orbirr/oracle.hpp"

#include <sstream>

namespace orbirr {

struct OracleComparison {
    std::string parameters;
    Rational engine;
    long long oracle = 0;
    bool match = true;
};

/// Exact comparison report for one scene family over one grid.
/// An empty mismatch set is the pass condition.
struct OracleReport {
    std::string family;
    std::string grid;
    std::size_t checks = 0;
    std::vector<OracleComparison> mismatches;

    bool pass() const { return mismatches.empty(); }

    void record(std::string params, const Rational& engine, long long expected) {
        ++checks;
        if (engine != Rational(expected))
            mismatches.push_back({std::move(params), engine, expected, false});
    }
};

/// chi(P^n, O(k+m)) against the monomial-count oracle.
inline OracleReport cross_check_projective(int n_max, long long k_max) {
    OracleReport rep;
    rep.family = "projective_space";
    rep.grid = "n<=" + std::to_string(n_max) + ", 0<=k<=" + std::to_string(k_max);
    for (int n = 1; n <= n_max; ++n) {
        const QuasiPoly chi = scene_total_chi(projective_space(n, 0));
        for (long long k = 0; k <= k_max; ++k) {
            std::ostringstream p;
            p << "n=" << n << " k=" << k;
            rep.record(p.str(), chi.evaluate_at(k, 0), oracle::monomial_count(n, k));
        }
    }
    return rep;
}

/// Hypersurface chi against the ideal-sheaf exact-sequence oracle.
inline OracleReport cross_check_hypersurface(int n_max, long long d_max, long long m_lo, long long m_hi) {
    OracleReport rep;
    rep.family = "hypersurface";
    rep.grid = "2<=n<=" + std::to_string(n_max) + ", 1<=d<=" + std::to_string(d_max) + ", " +
               std::to_string(m_lo) + "<=m<=" + std::to_string(m_hi);
    for (int n = 2; n <= n_max; ++n)
        for (long long d = 1; d <= d_max; ++d) {
            const QuasiPoly chi = scene_total_chi(hypersurface(n, d, 0));
            for (long long m = m_lo; m <= m_hi; ++m) {
                std::ostringstream p;
                p << "n=" << n << " d=" << d << " m=" << m;
                rep.record(p.str(), chi.evaluate_at(m, 0), oracle::hypersurface_chi(n, d, m));
            }
        }
    return rep;
}

/// Cyclic quotients of P^1 against the Molien oracle, over every faithful
/// rotation pattern and every linearization weight mod r. The decisive test
/// of the Kawasaki denominator and the equivariant trace convention.
inline OracleReport cross_check_cyclic(unsigned r_max, long long k_max) {
    OracleReport rep;
    rep.family = "cyclic_quotient_p1";
    rep.grid = "r<=" + std::to_string(r_max) + ", all weight patterns, 0<=k<=" + std::to_string(k_max);
    for (unsigned r = 2; r <= r_max; ++r) {
        const long long rr = r;
        for (long long w0 = 0; w0 < rr; ++w0)
            for (long long w1 = 0; w1 < rr; ++w1) {
                if (gcd_u(static_cast<unsigned long long>(floor_mod(w1 - w0, rr)), r) != 1) continue;
                for (long long lin = 0; lin < rr; ++lin) {
                    const QuasiPoly chi = scene_total_chi(cyclic_quotient_p1(r, w0, w1, lin, 0));
                    for (long long k = 0; k <= k_max; ++k) {
                        std::ostringstream p;
                        p << "r=" << r << " w=(" << w0 << "," << w1 << ") lin=" << lin << " k=" << k;
                        rep.record(p.str(), chi.evaluate_at(k, 0), oracle::molien_count(rr, w0, w1, lin, k));
                    }
                }
            }
    }
    return rep;
}

/// Orbifold curves with pulled-back bundles against the floor-divisor
/// oracle: cone-order subsets of {2,3,5,7}, all genus and coarse degrees.
inline OracleReport cross_check_curves(int genus_max, long long deg_lo, long long deg_hi) {
    OracleReport rep;
    rep.family = "orbifold_curve";
    rep.grid = "g<=" + std::to_string(genus_max) + ", cones subset of {2,3,5,7}, " + std::to_string(deg_lo) +
               "<=c<=" + std::to_string(deg_hi);
    const std::vector<unsigned> orders = {2, 3, 5, 7};
    for (int g = 0; g <= genus_max; ++g) {
        for (unsigned mask = 0; mask < (1u << orders.size()); ++mask) {
            std::vector<ConePoint> cones;
            std::vector<std::pair<long long, long long>> oracle_cones;
            for (std::size_t i = 0; i < orders.size(); ++i)
                if (mask & (1u << i)) {
                    cones.push_back({orders[i], ""});
                    oracle_cones.push_back({orders[i], 0});
                }
            const Scene scene = orbifold_curve(g, cones, 0, std::vector<int>(cones.size(), 0), 1);
            const QuasiPoly chi = scene_total_chi(scene);
            for (long long c = deg_lo; c <= deg_hi; ++c) {
                std::ostringstream p;
                p << "g=" << g << " cones=" << cones.size() << " mask=" << mask << " c=" << c;
                rep.record(p.str(), chi.evaluate_at(c, 0), oracle::floor_divisor_chi(g, oracle_cones, c));
            }
        }
    }
    return rep;
}

/// Jet ranks against the partition oracle.
inline OracleReport cross_check_jet_ranks(unsigned k_max, long long m_max) {
    OracleReport rep;
    rep.family = "gg_jet rank";
    rep.grid = "k<=" + std::to_string(k_max) + ", 0<=m<=" + std::to_string(m_max);
    for (unsigned k = 1; k <= k_max; ++k) {
        const QuasiPoly rank = jet_rank_quasipoly(k);
        for (long long m = 0; m <= m_max; ++m) {
            std::ostringstream p;
            p << "k=" << k << " m=" << m;
            rep.record(p.str(), rank.evaluate_at(m, 0), oracle::partition_count(m, static_cast<int>(k)));
        }
    }
    return rep;
}

/// Pointwise jet chi against the floor-divisor oracle applied to K_orb^m:
/// chi(E_{k,m} x A^{-q}) = p_k(m) * chi(K_orb^m x A^{-q}).
inline OracleReport cross_check_jet_chi(unsigned k_max, long long m_max) {
    OracleReport rep;
    rep.family = "gg_jet chi";
    rep.grid = "k<=" + std::to_string(k_max) + ", 0<=m<=" + std::to_string(m_max) + ", q in {0,1}";
    struct CurveCase {
        int genus;
        std::vector<ConePoint> cones;
        long long ample;
    };
    const std::vector<CurveCase> cases = {
        {2, {}, 2},
        {0, {{2, ""}, {3, ""}, {7, ""}}, 1},
        {1, {}, 1},
        {0, {{2, ""}, {5, ""}}, 1},
    };
    for (const auto& cc : cases) {
        for (unsigned k = 1; k <= k_max; ++k) {
            const Scene jets = gg_jet_scene(k, cc.genus, cc.cones, Rational(cc.ample));
            const QuasiPoly chi = scene_total_chi(jets);
            for (long long m = 0; m <= m_max; ++m)
                for (long long q = 0; q <= 1; ++q) {
                    // K_orb^m = L(m(2g-2) + carries; weights m(nu-1) mod nu).
                    long long coarse = static_cast<long long>(2 * cc.genus - 2) * m - q * cc.ample;
                    std::vector<std::pair<long long, long long>> oc;
                    for (const auto& cone : cc.cones)
                        oc.push_back({cone.order, m * (static_cast<long long>(cone.order) - 1)});
                    const long long expected =
                        static_cast<long long>(oracle::partition_count(m, static_cast<int>(k))) *
                        oracle::floor_divisor_chi(cc.genus, oc, coarse);
                    std::ostringstream p;
                    p << "g=" << cc.genus << " cones=" << cc.cones.size() << " k=" << k << " m=" << m
                      << " q=" << q;
                    rep.record(p.str(), chi.evaluate_at(m, q), expected);
                }
        }
    }
    return rep;
}

}  // namespace orbirr
