#include "orbirr/analysis.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orbirr;

namespace {
Rational rat(long long n, long long d = 1) { return Rational(n, d); }

TwistPoly mono(int dm, int dq, const Rational& c) { return TwistPoly::monomial({dm, dq}, Cyclotomic(c)); }
}

TEST_CASE("leading term extraction") {
    const LeadingTerm kp1 = leading_term(mono(1, 0, rat(1)) + TwistPoly::constant(rat(1)));
    CHECK(kp1.degree == 1);
    CHECK(kp1.coefficient == 1);

    // (2m+1)/2 + 1/2 -> degree 1, coefficient 1.
    const Scene pullback = cyclic_quotient_p1(2, 0, 1, 0, 0, 2);
    const LeadingTerm lt = leading_term(scene_total_chi(pullback).at_q_zero());
    CHECK(lt.degree == 1);
    CHECK(lt.coefficient == 1);

    const LeadingTerm zero = leading_term(TwistPoly());
    CHECK(zero.degree == 0);
    CHECK(zero.coefficient == 0);

    // Branches that disagree on the leading coefficient are an error.
    QuasiPoly bad(2, {mono(1, 0, rat(1)), mono(1, 0, rat(2))});
    CHECK_THROWS_WITH(leading_term(bad), "leading term is not residue-independent");

    CHECK_THROWS_AS(leading_term(mono(1, 1, rat(1))), std::invalid_argument);  // q-free required
}

TEST_CASE("slope values") {
    CHECK(slope(projective_space(1, 0)) == 1);
    CHECK(slope(decorate_gerbe(projective_space(1, 0), 2)) == rat(1, 2));  // 1/s scaling
    // [P1/Z2] with the O(m) family: slope 1/2, same sign as the coarse space.
    CHECK(slope(cyclic_quotient_p1(2, 0, 1, 0, 0)) == rat(1, 2));
    CHECK(slope(hypersurface(3, 4, 0)) == 4);  // 2! * (4/2)
    CHECK(slope(orbifold_curve(2, {}, 0, {}, 1)) == 1);  // degree-1 polarization
}

TEST_CASE("degree bound audit") {
    const DegreeAudit manifold = degree_bound_audit(projective_space(3, 0).presentation);
    CHECK(manifold.pass);
    CHECK(manifold.total_degree == 3);
    CHECK(manifold.twisted_degree == -1);  // no twisted sectors

    const DegreeAudit football = degree_bound_audit(cyclic_quotient_p1(2, 0, 1, 0, 2).presentation);
    CHECK(football.pass);
    CHECK(football.twisted_degree == 0);
    CHECK(football.total_degree == 1);

    // Hand-built violation: a "twisted" sector of full dimension.
    OrbifoldPresentation bad = projective_space(1, 0).presentation;
    Sector rogue = bad.sectors[0];
    rogue.label = "rogue";
    rogue.group_order = 2;
    rogue.prefactor = rat(1, 2);
    bad.sectors.push_back(rogue);
    bad.self_conjugate = false;
    const DegreeAudit audit = degree_bound_audit(bad);
    CHECK_FALSE(audit.pass);
    bool found = false;
    for (const auto& row : audit.rows)
        if (row.label == "rogue") {
            found = true;
            CHECK_FALSE(row.within_bound);
        }
    CHECK(found);
}

TEST_CASE("invariance verdicts") {
    for (const char* name : {"p3", "quartic_k3", "football", "triangle_237", "genus2"}) {
        INFO(name);
        const AsymptoticProfile prof = invariance_verdict(find_builtin(name));
        CHECK(prof.identity_dominant);
        CHECK(prof.leading == prof.identity_leading);
    }

    // Rigidification preserves the x s-normalized coarse coefficient.
    const Scene gerbe = decorate_gerbe(find_builtin("football"), 2);
    const AsymptoticProfile before = invariance_verdict(gerbe);
    Scene rigidified = gerbe;
    rigidified.presentation = rigidify(gerbe.presentation);
    const AsymptoticProfile after = invariance_verdict(rigidified);
    CHECK(before.coarse_normalized == after.coarse_normalized);
    CHECK(after.leading == before.leading * rat(2));

    // Disjoint unions add leading coefficients componentwise.
    Scene two;
    std::vector<OrbifoldPresentation> parts{find_builtin("p1").presentation,
                                            decorate_gerbe(find_builtin("p1"), 2).presentation};
    two.presentation = disjoint_union(parts);
    const AsymptoticProfile sum = invariance_verdict(two);
    CHECK(sum.leading == rat(3, 2));
}

TEST_CASE("critical slope from the top total-degree terms") {
    // chi = 2m - 3q + 1: leading coefficient at slope l is 2 - 3l.
    TwistPoly p = mono(1, 0, rat(2)) + mono(0, 1, rat(-3)) + TwistPoly::constant(rat(1));
    CHECK(critical_slope(QuasiPoly(p)) == rat(2, 3));

    // q must lower the leading coefficient.
    CHECK_THROWS_AS(critical_slope(QuasiPoly(mono(1, 0, rat(1)))), std::invalid_argument);
}

TEST_CASE("threshold tables and their invariance") {
    // Genus-2 curve polarized by K: lambda* = (2g-2)/deg K = 1 for all k.
    const ThresholdReport genus2 = threshold_report(find_builtin("genus2"), 6);
    CHECK(genus2.all_equal);
    for (const auto& row : genus2.rows) {
        CHECK(row.lambda_full == 1);
        CHECK(row.ggd_positive);
    }
    CHECK(genus2.coarse_curve_lambda == 1);

    // (2,3,7) triangle orbifold: lambda* = 1/42; the smooth coarse curve is
    // genus 0, whose separate threshold is -2.
    const ThresholdReport triangle = threshold_report(find_builtin("triangle_237"), 6);
    CHECK(triangle.all_equal);
    for (const auto& row : triangle.rows) CHECK(row.lambda_full == rat(1, 42));
    CHECK(triangle.canonical_degree == rat(1, 42));
    CHECK(triangle.coarse_curve_lambda == rat(-2));

    // Genus 1: lambda* = 0, GGD-positive for no positive slope.
    const ThresholdReport elliptic = threshold_report(find_builtin("elliptic_curve"), 4);
    for (const auto& row : elliptic.rows) {
        CHECK(row.lambda_full == 0);
        CHECK_FALSE(row.ggd_positive);
    }

    // The flat (2,3,6) orbifold sits exactly on the boundary: deg K_orb = 0.
    const Scene flat = orbifold_curve(0, {{2, ""}, {3, ""}, {6, ""}}, 0, {0, 0, 0}, 1);
    CHECK(orbifold_canonical_degree(0, flat.curve->cones) == 0);
    const ThresholdReport boundary = threshold_report(flat, 4);
    CHECK(boundary.all_equal);
    for (const auto& row : boundary.rows) {
        CHECK(row.lambda_full == 0);
        CHECK_FALSE(row.ggd_positive);
    }

    CHECK_THROWS_AS(threshold_report(find_builtin("p1"), 3), SchemaError);  // not a curve scene
}

TEST_CASE("jet scenes keep identity dominance with the rank factored in") {
    for (const char* name : {"jets_genus2_k2", "jets_237_k3"}) {
        INFO(name);
        const AsymptoticProfile prof = invariance_verdict(find_builtin(name));
        CHECK(prof.identity_dominant);
        CHECK(prof.twisted_degree < prof.degree);
    }
    // Genus-2 2-jets: chi(m) = p_2(m) (2m - 1), so m^2 carries p_2's
    // leading 1/(2! 1!) times deg K = 2, i.e. 1.
    const AsymptoticProfile g2 = invariance_verdict(find_builtin("jets_genus2_k2"));
    CHECK(g2.degree == 2);
    CHECK(g2.leading == 1);
}

TEST_CASE("thresholds survive a round trip through jet scenes directly") {
    for (unsigned k = 1; k <= 4; ++k) {
        const Scene jets = gg_jet_scene(k, 0, {{2, ""}, {3, ""}, {7, ""}}, 1);
        CHECK(critical_slope(scene_total_chi(jets)) == rat(1, 42));
        CHECK(critical_slope(scene_identity_chi(jets)) == rat(1, 42));
    }
}
