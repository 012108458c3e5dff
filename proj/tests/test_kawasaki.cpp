#include "orbirr/kawasaki.hpp"
#include "orbirr/scenes.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace orbirr;

namespace {

Rational rat(long long n, long long d = 1) { return Rational(n, d); }

Sector p1_identity(long long k) {
    Sector s;
    s.label = "identity";
    s.dim = 1;
    s.tangent_plus = {rat(1), rat(1)};
    s.bundle = {FiberPiece{rat(k), Cyclotomic::one(), 0}};
    s.twist_m_coeff = 1;
    s.twist_q_coeff = 1;
    return s;
}

}  // namespace

TEST_CASE("sector contribution of the P^1 identity sector is k+1") {
    for (long long k : {-3LL, 0LL, 1LL, 7LL}) {
        const QuasiPoly c = sector_contribution(p1_identity(k), TwistSelection::none);
        REQUIRE(c.is_polynomial());
        CHECK(c.evaluate_at(0, 0) == rat(k + 1));
    }
}

TEST_CASE("sector contribution of an isolated half-rotation point") {
    Sector s;
    s.label = "point";
    s.dim = 0;
    s.prefactor = rat(1, 2);
    s.group_order = 2;
    s.normals = {NormalSummand{rat(0), rat(1, 2)}};
    s.bundle = {FiberPiece{rat(0), Cyclotomic::one(), 0}};
    const QuasiPoly c = sector_contribution(s);
    CHECK(c.evaluate_at(0, 0) == rat(1, 4));  // (1/2) * 1/(1 - (-1))
}

TEST_CASE("empty bundle gives a zero contribution") {
    Sector s = p1_identity(5);
    s.bundle.clear();
    CHECK(sector_contribution(s).is_zero());
}

TEST_CASE("twist selection picks which symbols appear") {
    const Sector s = p1_identity(2);
    const QuasiPoly both = sector_contribution(s, TwistSelection::both);
    CHECK(both.polynomial().coefficient({1, 0}).rational_part() == 1);
    CHECK(both.polynomial().coefficient({0, 1}).rational_part() == -1);

    const QuasiPoly m_only = sector_contribution(s, TwistSelection::m_only);
    CHECK(m_only.polynomial().degree_q() <= 0);
    CHECK(m_only.polynomial().coefficient({1, 0}).rational_part() == 1);

    const QuasiPoly q_only = sector_contribution(s, TwistSelection::q_only);
    CHECK(q_only.polynomial().degree_m() <= 0);
    CHECK(q_only.polynomial().coefficient({0, 1}).rational_part() == -1);

    const QuasiPoly none = sector_contribution(s, TwistSelection::none);
    CHECK(none.polynomial() == TwistPoly::constant(Rational(3)));  // chi(P1, O(2))
}

TEST_CASE("total chi of projective space and the football") {
    CHECK(total_chi(projective_space(1, 4).presentation).evaluate_at(0, 0) == 5);

    const Scene football = cyclic_quotient_p1(2, 0, 1, 0, 2);
    CHECK(total_chi(football.presentation).evaluate_at(0, 0) == 2);
    CHECK(identity_chi(football.presentation).evaluate_at(0, 0) == rat(3, 2));
    CHECK(twisted_chi(football.presentation).evaluate_at(0, 0) == rat(1, 2));

    CHECK(total_chi(OrbifoldPresentation{}).is_zero());
}

TEST_CASE("identity chi scales by the gerbe order") {
    // Pulled-back O(2m) on [P1/Z2]: identity part (2m+1)/2.
    const Scene pullback = cyclic_quotient_p1(2, 0, 1, 0, 0, 2);
    const QuasiPoly id = identity_chi(pullback.presentation);
    REQUIRE(id.is_polynomial());
    CHECK(id.evaluate_at(3, 0) == rat(7, 2));

    // Trivial Z3 gerbe over P^1: (m+1)/3.
    const Scene gerbe = decorate_gerbe(projective_space(1, 0), 3);
    CHECK(identity_chi(gerbe.presentation).evaluate_at(5, 0) == rat(2));
}

TEST_CASE("twisted chi of the pullback football is the constant 1/2") {
    const Scene pullback = cyclic_quotient_p1(2, 0, 1, 0, 0, 2);
    const QuasiPoly tw = twisted_chi(pullback.presentation);
    REQUIRE(tw.is_polynomial());
    CHECK(tw.polynomial() == TwistPoly::constant(rat(1, 2)));
    CHECK(tw.degree_m() == 0);  // degree 0 <= n-1 = 0

    CHECK(twisted_chi(projective_space(2, 0).presentation).is_zero());
}

TEST_CASE("twisted point sectors stay constant in m for any pulled-back bundle") {
    for (long long c = -3; c <= 3; ++c) {
        const Scene curve = orbifold_curve(1, {{3, "p"}, {5, "q"}}, rat(c), {0, 0});
        CHECK(twisted_chi(curve.presentation).degree_m() <= 0);
    }
}

TEST_CASE("evaluate_at substitutes exactly") {
    TwistPoly p = TwistPoly::monomial({1, 0}, Cyclotomic(rat(1)));
    p.add_term({0, 0}, Cyclotomic(rat(1)));
    CHECK(evaluate_at(p, 4, 0) == 5);
    CHECK(evaluate_at(QuasiPoly(p), -6, 0) == -5);
    CHECK(evaluate_at(TwistPoly(), 123, 45) == 0);

    // Molien cross-check at m=3 for the pullback football: (2m+1)/2 + 1/2.
    const Scene pullback = cyclic_quotient_p1(2, 0, 1, 0, 0, 2);
    CHECK(evaluate_at(total_chi(pullback.presentation), 3, 0) == 4);
}

TEST_CASE("rigidification strips the generic stabilizer") {
    // Identity-only P^1 data with s=2: leading coefficient 1/2 -> 1.
    const Scene gerbe = decorate_gerbe(projective_space(1, 0), 2);
    const QuasiPoly before = total_chi(gerbe.presentation);
    const OrbifoldPresentation rig = rigidify(gerbe.presentation);
    const QuasiPoly after = total_chi(rig);
    CHECK(before.polynomial().coefficient({1, 0}).rational_part() == rat(1, 2));
    CHECK(after.polynomial().coefficient({1, 0}).rational_part() == rat(1));
    CHECK(rig.generic_stab == 1);

    // s = 1 presentations are unchanged.
    const OrbifoldPresentation plain = projective_space(1, 2).presentation;
    CHECK(rigidify(plain).sectors == plain.sectors);

    // A trivial Z3 gerbe over the football rigidifies back to the football.
    const Scene football = cyclic_quotient_p1(2, 0, 1, 0, 2);
    const Scene decorated = decorate_gerbe(football, 3);
    const OrbifoldPresentation recovered = rigidify(decorated.presentation);
    CHECK(total_chi(recovered) == total_chi(football.presentation));

    // Prefactors without the 1/s factor are not a trivial gerbe.
    OrbifoldPresentation bad = projective_space(1, 0).presentation;
    bad.generic_stab = 2;
    CHECK_THROWS_WITH(rigidify(bad), "presentation is not a trivial gerbe over its rigidification");
}

TEST_CASE("disjoint unions add sector lists and chi values") {
    const OrbifoldPresentation p1 = projective_space(1, 3).presentation;
    const std::vector<OrbifoldPresentation> two{p1, p1};
    CHECK(total_chi(disjoint_union(two)).evaluate_at(0, 0) == 8);  // 2k+2 at k=3

    const OrbifoldPresentation gerbe = decorate_gerbe(projective_space(1, 3), 2).presentation;
    const std::vector<OrbifoldPresentation> mixed{p1, gerbe};
    CHECK(total_chi(disjoint_union(mixed)).evaluate_at(0, 0) == rat(6));  // (k+1) + (k+1)/2

    const std::vector<OrbifoldPresentation> single{p1};
    CHECK(total_chi(disjoint_union(single)) == total_chi(p1));

    OrbifoldPresentation surface = projective_space(2, 0).presentation;
    const std::vector<OrbifoldPresentation> bad{p1, surface};
    CHECK_THROWS_AS(disjoint_union(bad), SchemaError);
}

TEST_CASE("total chi is independent of sector order") {
    Scene scene = cyclic_quotient_p1(5, 0, 1, 2, 3);
    const QuasiPoly reference = total_chi(scene.presentation);
    std::mt19937 rng(7);
    for (int round = 0; round < 10; ++round) {
        std::shuffle(scene.presentation.sectors.begin(), scene.presentation.sectors.end(), rng);
        CHECK(total_chi(scene.presentation) == reference);
    }
}

TEST_CASE("randomized orbit-closed presentations have rational chi") {
    // A conjugate pair alone only forces a *real* total; rationality needs
    // the full orbit j = 1..n-1 that geometric isotropy groups contribute.
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> small(-4, 4);
    std::uniform_int_distribution<unsigned> order_pick(2, 7);
    for (int round = 0; round < 50; ++round) {
        OrbifoldPresentation p;
        p.name = "random";
        p.ambient_dim = 1;
        Sector id;
        id.label = "identity";
        id.dim = 1;
        id.tangent_plus = {rat(small(rng))};
        id.bundle = {FiberPiece{rat(small(rng)), Cyclotomic::one(), 0}};
        id.twist_m_coeff = rat(std::abs(small(rng)) + 1);
        id.twist_q_coeff = id.twist_m_coeff;
        p.sectors.push_back(id);

        const int points = 1 + round % 3;
        for (int i = 0; i < points; ++i) {
            const unsigned n = order_pick(rng);
            const long long w = small(rng);
            for (long long j = 1; j < static_cast<long long>(n); ++j) {
                Sector t;
                t.label = "pt";
                t.dim = 0;
                t.prefactor = rat(1, n);
                t.group_order = n;
                t.normals = {NormalSummand{rat(0), Rational(j, static_cast<long long>(n))}};
                t.bundle = {FiberPiece{rat(0), Cyclotomic::root_of_unity(n, j * w),
                                       static_cast<int>(floor_mod(j * w, n))}};
                t.twist_m_coeff = id.twist_m_coeff;
                t.twist_q_coeff = id.twist_m_coeff;
                p.sectors.push_back(t);
            }
        }
        p.self_conjugate = conjugate_closed(p);
        REQUIRE(p.self_conjugate);
        CHECK(total_chi(p).has_rational_coefficients());
    }
}

TEST_CASE("a lone conjugate pair is real but can fail rationality") {
    // Closure under conjugation keeps the imaginary parts cancelling, but a
    // single charactered (j, n-j) pair over Q(zeta_5) sums into the real
    // subfield, not Q: zeta/(1-zeta^-1) + conj = (sqrt(5)+1)/2. The engine
    // surfaces that as the non-cancellation error.
    OrbifoldPresentation p;
    p.ambient_dim = 1;
    for (long long j : {1LL, 4LL}) {
        Sector t;
        t.label = "pt";
        t.dim = 0;
        t.prefactor = rat(1, 5);
        t.group_order = 5;
        t.normals = {NormalSummand{rat(0), Rational(j, 5)}};
        t.bundle = {FiberPiece{rat(0), Cyclotomic::root_of_unity(5, j), 0}};
        p.sectors.push_back(t);
    }
    REQUIRE(conjugate_closed(p));
    CHECK_THROWS_WITH(total_chi(p), "sector set inconsistent: conjugate sectors do not cancel");
}

TEST_CASE("presentations declared self-conjugate must be closed") {
    OrbifoldPresentation p;
    p.ambient_dim = 1;
    Sector lone;
    lone.label = "unpaired";
    lone.dim = 0;
    lone.prefactor = rat(1, 3);
    lone.group_order = 3;
    lone.normals = {NormalSummand{rat(0), rat(1, 3)}};
    lone.bundle = {FiberPiece{rat(0), Cyclotomic::root_of_unity(3, 1), 0}};
    p.sectors.push_back(lone);
    CHECK_THROWS_AS(total_chi(p), SchemaError);

    p.self_conjugate = false;  // explicitly allowed, chi stays cyclotomic
    const QuasiPoly chi = total_chi(p);
    CHECK_FALSE(chi.has_rational_coefficients());
}

TEST_CASE("conjugate closure compares characters across field representations") {
    // zeta_6^2 written at order 6 must pair with its conjugate written at
    // order 3.
    OrbifoldPresentation p;
    p.ambient_dim = 1;
    auto point = [&](long long j, const Cyclotomic& ch) {
        Sector t;
        t.label = "pt";
        t.dim = 0;
        t.prefactor = rat(1, 3);
        t.group_order = 3;
        t.normals = {NormalSummand{rat(0), Rational(j, 3)}};
        t.bundle = {FiberPiece{rat(0), ch, 0}};
        return t;
    };
    p.sectors.push_back(point(1, Cyclotomic::root_of_unity(6, 2)));
    p.sectors.push_back(point(2, Cyclotomic::root_of_unity(3, 2)));
    CHECK(conjugate_closed(p));
}

TEST_CASE("validation rejects malformed sectors") {
    OrbifoldPresentation p;
    p.ambient_dim = 2;

    Sector full_dim_twisted;
    full_dim_twisted.dim = 2;
    full_dim_twisted.group_order = 2;
    p.sectors = {full_dim_twisted};
    CHECK_THROWS_AS(validate(p), SchemaError);

    Sector identity_with_normals;
    identity_with_normals.dim = 1;
    identity_with_normals.normals = {NormalSummand{rat(0), rat(1, 2)}};
    p.sectors = {identity_with_normals};
    CHECK_THROWS_AS(validate(p), SchemaError);

    Sector bad_theta;
    bad_theta.dim = 0;
    bad_theta.group_order = 2;
    bad_theta.normals = {NormalSummand{rat(0), rat(3, 2)}};
    p.sectors = {bad_theta};
    CHECK_THROWS_AS(validate(p), SchemaError);
}

TEST_CASE("parallel sector evaluation matches serial") {
    const Scene scene = cyclic_quotient_p1(6, 0, 1, 3, 5);
    const QuasiPoly serial = total_chi(scene.presentation);
#ifdef _WIN32
    _putenv_s("ORBIRR_THREADS", "4");
#else
    setenv("ORBIRR_THREADS", "4", 1);
#endif
    const QuasiPoly parallel = total_chi(scene.presentation);
#ifdef _WIN32
    _putenv_s("ORBIRR_THREADS", "");
#else
    unsetenv("ORBIRR_THREADS");
#endif
    CHECK(parallel == serial);
}
