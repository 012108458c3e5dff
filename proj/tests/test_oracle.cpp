#include "orbirr/oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orbirr::oracle;

TEST_CASE("monomial counting") {
    CHECK(monomial_count(1, 3) == 4);  // z0^3 .. z1^3
    CHECK(monomial_count(2, 2) == 6);
    CHECK(monomial_count(3, 2) == 10);
    CHECK(monomial_count(2, 0) == 1);
    CHECK(monomial_count(3, -2) == 0);
}

TEST_CASE("molien counting of invariant monomials") {
    CHECK(molien_count(2, 0, 1, 0, 2) == 2);  // z0^2, z1^2
    CHECK(molien_count(3, 0, 1, 0, 3) == 2);  // z0^3, z1^3
    CHECK(molien_count(5, 2, 3, 0, 0) == 1);  // constants
    CHECK(molien_count(2, 0, 1, 1, 1) == 1);  // only z1 survives the twist
    CHECK(molien_count(3, 0, 1, 1, 1) == 0);
}

TEST_CASE("molien counts partition the section space into isotypic pieces") {
    for (long long r = 2; r <= 6; ++r)
        for (long long w0 = 0; w0 < r; ++w0)
            for (long long w1 = 0; w1 < r; ++w1)
                for (long long k = 0; k <= 12; ++k) {
                    long long sum = 0;
                    for (long long fiber = 0; fiber < r; ++fiber) sum += molien_count(r, w0, w1, fiber, k);
                    CHECK(sum == monomial_count(1, k));
                }
}

TEST_CASE("hypersurface chi via the ideal-sheaf sequence") {
    CHECK(hypersurface_chi(2, 2, 1) == 3);  // conic is P^1 with O(2)
    CHECK(hypersurface_chi(2, 3, 0) == 0);  // elliptic curve
    CHECK(hypersurface_chi(3, 4, 0) == 2);  // K3
    CHECK(hypersurface_chi(2, 2, 0) == 1);
}

TEST_CASE("hypersurface chi grows monotonically in the stable range") {
    for (int n = 2; n <= 4; ++n)
        for (long long d = 1; d <= 5; ++d)
            for (long long m = d; m <= 15; ++m)
                CHECK(hypersurface_chi(n, d, m) - hypersurface_chi(n, d, m - 1) >= 0);
}

TEST_CASE("bounded partition counting") {
    CHECK(partition_count(4, 2) == 3);  // 2+2, 2+1+1, 1+1+1+1
    CHECK(partition_count(6, 3) == 7);
    CHECK(partition_count(0, 5) == 1);  // empty partition
    CHECK(partition_count(-1, 3) == 0);
    CHECK(partition_count(5, 1) == 1);
    CHECK_THROWS_AS(partition_count(3, 0), std::invalid_argument);
}

TEST_CASE("floor-divisor chi on orbifold curves") {
    using Cones = std::vector<std::pair<long long, long long>>;
    CHECK(floor_divisor_chi(0, Cones{}, 1) == 2);  // chi(P^1, O(1))
    const Cones c23{{2, 1}, {3, 2}};
    CHECK(floor_divisor_chi(0, c23, 0) == 1);  // floor(1/2) + floor(2/3) = 0
    CHECK(floor_divisor_chi(2, Cones{}, 2) == 1);  // chi(K) at genus 2
    const Cones carry{{2, 3}, {3, 7}};  // unreduced weights carry into the floor
    CHECK(floor_divisor_chi(0, carry, 0) == 0 + 1 + 2 + 1);
    const Cones negative{{2, -1}};
    CHECK(floor_divisor_chi(0, negative, 0) == -1 + 1);
}

TEST_CASE("integer floor division helper") {
    CHECK(floor_div(7, 2) == 3);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(mod_nonneg(-7, 2) == 1);
    CHECK(mod_nonneg(-6, 3) == 0);
}
