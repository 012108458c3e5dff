#include "orbirr/scenes.hpp"
#include "orbirr/oracle.hpp"
#include "orbirr/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orbirr;

namespace {
Rational rat(long long n, long long d = 1) { return Rational(n, d); }
}

TEST_CASE("projective space scenes recover binomial counts") {
    CHECK(scene_total_chi(projective_space(1, 4)).evaluate_at(0, 0) == 5);
    CHECK(scene_total_chi(projective_space(2, 0)).evaluate_at(0, 0) == 1);
    CHECK(scene_total_chi(projective_space(3, 2)).evaluate_at(0, 0) == 10);  // C(5,3)

    // chi is the polynomial C(n+k+m, n), also at negative twists.
    const QuasiPoly chi3 = scene_total_chi(projective_space(3, 0));
    CHECK(chi3.evaluate_at(-1, 0) == 0);
    CHECK(chi3.evaluate_at(-4, 0) == -1);  // Serre dual of chi(O)
    CHECK_THROWS_AS(projective_space(0, 1), SchemaError);
}

TEST_CASE("hypersurface scenes match the exact-sequence oracle") {
    for (long long m = -3; m <= 6; ++m)
        CHECK(scene_total_chi(hypersurface(2, 2, m)).evaluate_at(0, 0) == rat(2 * m + 1));
    CHECK(scene_total_chi(hypersurface(2, 3, 0)).evaluate_at(0, 0) == 0);  // elliptic curve
    CHECK(scene_total_chi(hypersurface(3, 4, 0)).evaluate_at(0, 0) == 2);  // K3
    for (int n = 2; n <= 4; ++n)
        for (long long d = 1; d <= 4; ++d)
            for (long long m = -2; m <= 5; ++m)
                CHECK(scene_total_chi(hypersurface(n, d, 0)).evaluate_at(m, 0) ==
                      rat(oracle::hypersurface_chi(n, d, m)));
}

TEST_CASE("cyclic quotients match the molien oracle") {
    CHECK(scene_total_chi(cyclic_quotient_p1(2, 0, 1, 0, 2)).evaluate_at(0, 0) == 2);
    CHECK(scene_total_chi(cyclic_quotient_p1(3, 0, 1, 0, 3)).evaluate_at(0, 0) == 2);
    for (unsigned r = 2; r <= 6; ++r)
        CHECK(scene_total_chi(cyclic_quotient_p1(r, 0, 1, 0, 0)).evaluate_at(0, 0) == 1);  // constants

    // Baked-in k and symbolic twist agree: scene(k) at m=t equals scene(k+t) at 0.
    for (long long k = 0; k <= 3; ++k)
        for (long long t = 0; t <= 4; ++t)
            CHECK(scene_total_chi(cyclic_quotient_p1(5, 1, 3, 2, k)).evaluate_at(t, 0) ==
                  scene_total_chi(cyclic_quotient_p1(5, 1, 3, 2, k + t)).evaluate_at(0, 0));

    CHECK_THROWS_WITH(cyclic_quotient_p1(4, 0, 2, 0, 1), "rigidify first: action has kernel");
}

TEST_CASE("orbifold curves match the floor-divisor oracle") {
    // genus 2, K at m=1: chi(K) = g - 1 = 1.
    const Scene genus2 = orbifold_curve(2, {}, 2, {});
    CHECK(scene_total_chi(genus2).evaluate_at(0, 0) == 1);

    // genus 0 with cones (2,3), pulled-back O(1): chi = 2.
    const Scene c23 = orbifold_curve(0, {{2, "a"}, {3, "b"}}, 1, {0, 0});
    CHECK(scene_total_chi(c23).evaluate_at(0, 0) == 2);

    // genus 1, O(0): chi = 0.
    CHECK(scene_total_chi(orbifold_curve(1, {}, 0, {})).evaluate_at(0, 0) == 0);

    // Weighted bundle: genus 0, cones (2,3), weights (1,2), c=0 -> 1.
    const Scene weighted = orbifold_curve(0, {{2, "a"}, {3, "b"}}, 0, {1, 2});
    CHECK(scene_total_chi(weighted).evaluate_at(0, 0) == 1);

    // Weighted grid against the oracle (weights reduced on input).
    for (long long w2 = 0; w2 < 2; ++w2)
        for (long long w5 = 0; w5 < 5; ++w5)
            for (long long c = -3; c <= 5; ++c) {
                const Scene s = orbifold_curve(1, {{2, "a"}, {5, "b"}}, rat(c),
                                               {static_cast<int>(w2), static_cast<int>(w5)});
                const std::vector<std::pair<long long, long long>> cones{{2, w2}, {5, w5}};
                CHECK(scene_total_chi(s).evaluate_at(0, 0) == rat(oracle::floor_divisor_chi(1, cones, c)));
            }
}

TEST_CASE("pullback consistency: weight-zero curves reproduce the coarse chi") {
    for (int g = 0; g <= 2; ++g)
        for (long long c = -4; c <= 6; ++c) {
            const Scene s = orbifold_curve(g, {{2, "a"}, {7, "b"}}, rat(c), {0, 0});
            CHECK(scene_total_chi(s).evaluate_at(0, 0) == rat(c + 1 - g));
        }
}

TEST_CASE("jet rank quasi-polynomials agree with direct counting") {
    CHECK(jet_rank_quasipoly(1) == QuasiPoly::constant(rat(1)));  // one partition
    CHECK(scene_rank_at(gg_jet_scene(2, 2, {}, 2), 4) == 3);      // p_2(4) = 3
    CHECK(scene_rank_at(gg_jet_scene(3, 2, {}, 2), 6) == 7);      // p_3(6) = 7
    for (unsigned k = 1; k <= 6; ++k) {
        const QuasiPoly rank = jet_rank_quasipoly(k);
        for (long long m = 0; m <= 40; ++m)
            CHECK(rank.evaluate_at(m, 0) == rat(oracle::partition_count(m, static_cast<int>(k))));
    }
    CHECK_THROWS_AS(jet_rank_quasipoly(0), SchemaError);
}

TEST_CASE("jet scenes multiply the K-power chi by the rank") {
    // k=1: E = K^m, so chi(m) is the floor oracle applied to K_orb^m.
    const Scene jets = gg_jet_scene(1, 0, {{2, "a"}, {3, "b"}, {7, "c"}}, 1);
    const QuasiPoly chi = scene_total_chi(jets);
    for (long long m = 0; m <= 20; ++m) {
        const std::vector<std::pair<long long, long long>> cones{{2, m}, {3, 2 * m}, {7, 6 * m}};
        CHECK(chi.evaluate_at(m, 0) == rat(oracle::floor_divisor_chi(0, cones, -2 * m)));
    }
}

TEST_CASE("gerbe decoration scales chi by 1/t") {
    const Scene football = cyclic_quotient_p1(2, 0, 1, 0, 2);
    const Scene gerbe = decorate_gerbe(football, 3);
    CHECK(gerbe.presentation.generic_stab == 3);
    CHECK(scene_total_chi(gerbe).evaluate_at(0, 0) == rat(2, 3));
}

TEST_CASE("oracle reports record mismatches verbatim") {
    OracleReport rep;
    rep.family = "demo";
    rep.record("a", Rational(3), 3);
    CHECK(rep.pass());
    rep.record("b", Rational(5, 2), 2);
    CHECK_FALSE(rep.pass());
    REQUIRE(rep.mismatches.size() == 1);
    CHECK(rep.mismatches[0].parameters == "b");
    CHECK(rep.mismatches[0].engine == Rational(5, 2));
    CHECK(rep.mismatches[0].oracle == 2);
    CHECK(rep.checks == 2);
}

TEST_CASE("builtin scenes validate and take integer values") {
    const auto scenes = builtin_scenes();
    CHECK(scenes.size() >= 15);
    for (const auto& [key, scene] : scenes) {
        INFO(key);
        CHECK_NOTHROW(validate(scene.presentation));
        const QuasiPoly chi = scene_total_chi(scene);
        for (long long m : {-7LL, -1LL, 0LL, 3LL, 11LL}) {
            const Rational v = chi.evaluate_at(m, 0);
            CHECK(is_integer(v));
        }
    }
    CHECK_THROWS_AS(find_builtin("nope"), SchemaError);
}
