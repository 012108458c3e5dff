// Exact rational arithmetic: thin layer over boost::multiprecision plus
// parsing/printing helpers shared by the whole library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orbirr {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (guaranteed by cpp_rational's canonical form).
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational make_rational(const BigInt& n, const BigInt& d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) return Rational(-n, -d);
    return Rational(n, d);
}

inline bool is_integer(const Rational& r) { return den(r) == 1; }

inline int sign(const Rational& r) { return r.sign(); }

inline Rational pow_rational(const Rational& base, unsigned e) {
    Rational acc = 1, b = base;
    unsigned k = e;
    while (k) {
        if (k & 1u) acc *= b;
        b *= b;
        k >>= 1u;
    }
    return acc;
}

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt b = 1;
    for (unsigned i = 0; i < k; ++i) {
        b *= (n - i);
        b /= (i + 1);  // exact at every step
    }
    return b;
}

/// "p" or "p/q", minus sign allowed on the numerator.
inline std::string to_string(const Rational& r) {
    if (is_integer(r)) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

inline Rational parse_rational(std::string_view s) {
    auto bad = [&] { return std::invalid_argument("malformed rational: '" + std::string(s) + "'"); };
    if (s.empty()) throw bad();
    const auto slash = s.find('/');
    auto parse_int = [&](std::string_view t) -> BigInt {
        if (t.empty()) throw bad();
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw bad();
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') throw bad();
        return BigInt(std::string(t));
    };
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    const BigInt n = parse_int(s.substr(0, slash));
    const BigInt d = parse_int(s.substr(slash + 1));
    if (d == 0) throw bad();
    return make_rational(n, d);
}

inline long long to_long_checked(const Rational& r, const char* what) {
    if (!is_integer(r)) throw std::domain_error(std::string(what) + ": value is not an integer: " + to_string(r));
    return static_cast<long long>(num(r));
}

inline unsigned long long lcm_u(unsigned long long a, unsigned long long b) {
    if (a == 0 || b == 0) return a | b;
    unsigned long long x = a, y = b;
    while (y) { auto t = x % y; x = y; y = t; }
    return a / x * b;
}

inline unsigned long long gcd_u(unsigned long long a, unsigned long long b) {
    while (b) { auto t = a % b; a = b; b = t; }
    return a;
}

/// Floor modulus into [0, p).
inline long long floor_mod(long long v, long long p) {
    long long r = v % p;
    return r < 0 ? r + p : r;
}

}  // namespace orbirr
