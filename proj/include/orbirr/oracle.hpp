// Independent brute-force section counters used to validate the fixed-point
// engine. Deliberately built from integer loops only — nothing here touches
// the cyclotomic or graded-ring machinery it is meant to check.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace orbirr::oracle {

inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long long mod_nonneg(long long a, long long b) { return a - b * floor_div(a, b); }

/// Number of degree-k monomials in n+1 variables, counted by dynamic
/// programming (equals C(n+k, n) for k >= 0; zero for k < 0).
inline long long monomial_count(int n, long long k) {
    if (k < 0) return 0;
    // count[d] = monomials of degree d in the variables seen so far
    std::vector<long long> count(static_cast<std::size_t>(k) + 1, 0);
    count[0] = 1;
    for (int v = 0; v <= n; ++v)
        for (long long d = 1; d <= k; ++d) count[d] += count[d - 1];
    return count[static_cast<std::size_t>(k)];
}

/// Invariant monomials z0^a z1^b with a+b = k under the Z/r action with
/// section weights a*w0 + b*w1 + fiber(a,b) == 0 (mod r).
inline long long molien_count(long long r, long long w0, long long w1,
                              const std::function<long long(long long, long long)>& fiber_weight, long long k) {
    if (k < 0) return 0;
    long long invariants = 0;
    for (long long a = 0; a <= k; ++a) {
        const long long b = k - a;
        if (mod_nonneg(a * w0 + b * w1 + fiber_weight(a, b), r) == 0) ++invariants;
    }
    return invariants;
}

inline long long molien_count(long long r, long long w0, long long w1, long long fiber, long long k) {
    return molien_count(r, w0, w1, [fiber](long long, long long) { return fiber; }, k);
}

/// chi(P^n, O(m)) = (m+1)(m+2)...(m+n)/n!, valid for every integer m.
inline long long chi_projective(int n, long long m) {
    long long numerator = 1, denominator = 1;
    for (int i = 1; i <= n; ++i) {
        numerator *= (m + i);
        denominator *= i;
    }
    return numerator / denominator;  // product of n consecutive integers
}

/// chi of O(m) on a smooth degree-d hypersurface in P^n, via the ideal
/// sheaf sequence 0 -> O(m-d) -> O(m) -> O_Y(m) -> 0.
inline long long hypersurface_chi(int n, long long d, long long m) {
    return chi_projective(n, m) - chi_projective(n, m - d);
}

/// Partitions of m into parts of size at most k, by dynamic programming.
inline long long partition_count(long long m, int k) {
    if (m < 0) return 0;
    if (k < 1) throw std::invalid_argument("partition_count: k must be >= 1");
    std::vector<long long> table(static_cast<std::size_t>(m) + 1, 0);
    table[0] = 1;
    for (int part = 1; part <= k; ++part)
        for (long long v = part; v <= m; ++v) table[v] += table[v - part];
    return table[static_cast<std::size_t>(m)];
}

/// chi of an orbifold line bundle on a curve of genus g with cone points
/// (order nu_i, isotropy weight w_i) and coarse degree c:
/// chi = c + sum floor(w_i/nu_i) + 1 - g. Weights may be unreduced or
/// negative; the floor captures the carry.
inline long long floor_divisor_chi(int genus, std::span<const std::pair<long long, long long>> cones, long long c) {
    long long deg = c;
    for (const auto& [nu, w] : cones) deg += floor_div(w, nu);
    return deg + 1 - genus;
}

}  // namespace orbirr::oracle
