// Exact arithmetic in cyclotomic fields Q(zeta_N), represented canonically
// as Q[x]/(Phi_N) in the power basis 1, zeta, ..., zeta^{phi(N)-1}.
// Equality is therefore coefficient comparison; values of different orders
// are compared after promotion into Q(zeta_lcm).
#pragma once

#include "orbirr/rational.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <vector>

namespace orbirr {

namespace detail {

// Dense univariate polynomials over Q, ascending coefficients.
using Poly = std::vector<Rational>;

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) c[i + j] += a[i] * b[j];
    }
    poly_trim(c);
    return c;
}

// Division with remainder; works for any divisor with a nonzero lead.
inline void poly_divmod(Poly a, const Poly& b, Poly& quot, Poly& rem) {
    quot.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
    const Rational lead = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        const Rational c = a.back() / lead;
        const std::size_t shift = a.size() - b.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        poly_trim(a);
        if (a.size() < b.size()) break;
    }
    poly_trim(quot);
    rem = std::move(a);
}

inline Poly poly_mod(const Poly& a, const Poly& b) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    return r;
}

inline unsigned euler_phi(unsigned n) {
    unsigned result = n;
    unsigned m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// Phi_N via Phi_N = (x^N - 1) / prod_{d|N, d<N} Phi_d, cached.
inline const Poly& cyclotomic_polynomial(unsigned n) {
    static std::map<unsigned, Poly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Iterative fill so recursion never re-enters the lock.
    for (unsigned k = 1; k <= n; ++k) {
        if (n % k != 0 || cache.count(k)) continue;
        Poly xk_minus_1(k + 1, Rational(0));
        xk_minus_1[0] = -1;
        xk_minus_1[k] = 1;
        Poly acc = xk_minus_1;
        for (unsigned d = 1; d < k; ++d) {
            if (k % d != 0) continue;
            Poly q, r;
            poly_divmod(acc, cache.at(d), q, r);
            acc = std::move(q);  // division is exact here
        }
        cache.emplace(k, std::move(acc));
    }
    return cache.at(n);
}

// Extended gcd over Q[x]: returns (g, u, v) with u*a + v*b = g.
inline void poly_ext_gcd(Poly a, Poly b, Poly& g, Poly& u, Poly& v) {
    Poly u0 = {Rational(1)}, v0 = {};
    Poly u1 = {}, v1 = {Rational(1)};
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly q, r;
        poly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
        Poly nu = u0, nv = v0;
        Poly qu = poly_mul(q, u1), qv = poly_mul(q, v1);
        nu.resize(std::max(nu.size(), qu.size()), Rational(0));
        nv.resize(std::max(nv.size(), qv.size()), Rational(0));
        for (std::size_t i = 0; i < qu.size(); ++i) nu[i] -= qu[i];
        for (std::size_t i = 0; i < qv.size(); ++i) nv[i] -= qv[i];
        poly_trim(nu);
        poly_trim(nv);
        u0 = std::move(u1);
        v0 = std::move(v1);
        u1 = std::move(nu);
        v1 = std::move(nv);
    }
    g = std::move(a);
    u = std::move(u0);
    v = std::move(v0);
}

}  // namespace detail

class Cyclotomic {
public:
    Cyclotomic() : order_(1), coeff_(1, Rational(0)) {}

    explicit Cyclotomic(const Rational& r) : order_(1), coeff_(1, r) {}
    explicit Cyclotomic(long long n) : Cyclotomic(Rational(n)) {}

    static Cyclotomic zero() { return Cyclotomic(); }
    static Cyclotomic one() { return Cyclotomic(Rational(1)); }

    /// zeta_N^j, reduced mod Phi_N. Negative j allowed.
    static Cyclotomic root_of_unity(unsigned n, long long j) {
        if (n == 0) throw std::invalid_argument("root_of_unity: order must be positive");
        const long long e = floor_mod(j, static_cast<long long>(n));
        detail::Poly p(static_cast<std::size_t>(e) + 1, Rational(0));
        p.back() = 1;
        return from_poly(n, std::move(p));
    }

    static Cyclotomic from_coefficients(unsigned n, std::vector<Rational> c) {
        return from_poly(n, detail::Poly(std::move(c)));
    }

    unsigned order() const { return order_; }
    const std::vector<Rational>& coefficients() const { return coeff_; }

    bool is_zero() const {
        return std::all_of(coeff_.begin(), coeff_.end(), [](const Rational& c) { return c == 0; });
    }

    /// True when the value lies in Q, i.e. every power-basis coefficient
    /// beyond index 0 vanishes.
    bool is_rational() const {
        for (std::size_t i = 1; i < coeff_.size(); ++i)
            if (coeff_[i] != 0) return false;
        return true;
    }

    Rational rational_part() const {
        if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
        return coeff_.empty() ? Rational(0) : coeff_[0];
    }

    /// Re-embed into Q(zeta_m) for order() | m, via zeta_n = zeta_m^{m/n}.
    Cyclotomic promoted(unsigned m) const {
        if (m == order_) return *this;
        if (m % order_ != 0) throw std::invalid_argument("cyclotomic promotion requires divisible orders");
        const unsigned stride = m / order_;
        detail::Poly p;
        for (std::size_t i = 0; i < coeff_.size(); ++i) {
            if (coeff_[i] == 0) continue;
            const std::size_t e = i * stride;
            if (p.size() <= e) p.resize(e + 1, Rational(0));
            p[e] += coeff_[i];
        }
        return from_poly(m, std::move(p));
    }

    /// Galois conjugation zeta -> zeta^{-1} (complex conjugation on every
    /// embedding).
    Cyclotomic conj() const {
        detail::Poly p;
        for (std::size_t i = 0; i < coeff_.size(); ++i) {
            if (coeff_[i] == 0) continue;
            const std::size_t e = (i == 0) ? 0 : (order_ - i);
            if (p.size() <= e) p.resize(e + 1, Rational(0));
            p[e] += coeff_[i];
        }
        return from_poly(order_, std::move(p));
    }

    Cyclotomic inverse() const {
        if (is_zero()) throw std::domain_error("division by zero cyclotomic");
        if (is_rational()) return Cyclotomic(Rational(1) / coeff_[0]);
        detail::Poly a(coeff_.begin(), coeff_.end());
        detail::poly_trim(a);
        detail::Poly g, u, v;
        detail::poly_ext_gcd(a, detail::cyclotomic_polynomial(order_), g, u, v);
        // Phi_N is irreducible over Q, so g is a nonzero constant.
        const Rational c = g.at(0);
        for (auto& x : u) x /= c;
        return from_poly(order_, std::move(u));
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = unify(a, b);
        for (std::size_t i = 0; i < y.coeff_.size(); ++i) x.coeff_[i] += y.coeff_[i];
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = unify(a, b);
        for (std::size_t i = 0; i < y.coeff_.size(); ++i) x.coeff_[i] -= y.coeff_[i];
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a) {
        Cyclotomic r = a;
        for (auto& c : r.coeff_) c = -c;
        return r;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        // Fast paths keep rational scalars from dragging everything to lcm fields.
        if (a.is_rational()) return b.scaled(a.coeff_.empty() ? Rational(0) : a.coeff_[0]);
        if (b.is_rational()) return a.scaled(b.coeff_.empty() ? Rational(0) : b.coeff_[0]);
        auto [x, y] = unify(a, b);
        detail::Poly p = detail::poly_mul(detail::Poly(x.coeff_.begin(), x.coeff_.end()),
                                          detail::Poly(y.coeff_.begin(), y.coeff_.end()));
        return from_poly(x.order_, std::move(p));
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Rational& s) { return a.scaled(s); }
    friend Cyclotomic operator*(const Rational& s, const Cyclotomic& a) { return a.scaled(s); }

    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

    Cyclotomic pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclotomic acc = one(), b = *this;
        unsigned long long k = static_cast<unsigned long long>(e);
        while (k) {
            if (k & 1ull) acc *= b;
            b *= b;
            k >>= 1ull;
        }
        return acc;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ == b.order_) return a.coeff_ == b.coeff_;
        auto [x, y] = unify(a, b);
        return x.coeff_ == y.coeff_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    /// True for 0 and for roots of unity (the only multiplicatively finite
    /// elements of Q(zeta_N) are +-zeta^j, of order dividing lcm(2, N)).
    bool is_zero_or_root_of_unity() const {
        if (is_zero()) return true;
        const unsigned long long m = lcm_u(2, order_);
        return pow(static_cast<long long>(m)) == one();
    }

    /// Deterministic debug rendering: "[c0, c1, ...] over Q(zeta_N)".
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < coeff_.size(); ++i) {
            if (i) s += ", ";
            s += orbirr::to_string(coeff_[i]);
        }
        s += "] over Q(zeta_" + std::to_string(order_) + ")";
        return s;
    }

private:
    static Cyclotomic from_poly(unsigned n, detail::Poly p) {
        Cyclotomic r;
        r.order_ = n;
        const auto& phi = detail::cyclotomic_polynomial(n);
        const std::size_t deg = phi.size() - 1;
        if (p.size() >= phi.size()) p = detail::poly_mod(p, phi);
        p.resize(deg, Rational(0));
        r.coeff_.assign(p.begin(), p.end());
        return r;
    }

    Cyclotomic scaled(const Rational& s) const {
        Cyclotomic r = *this;
        for (auto& c : r.coeff_) c *= s;
        return r;
    }

    static std::pair<Cyclotomic, Cyclotomic> unify(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ == b.order_) return {a, b};
        const unsigned m = static_cast<unsigned>(lcm_u(a.order_, b.order_));
        return {a.promoted(m), b.promoted(m)};
    }

    unsigned order_;
    std::vector<Rational> coeff_;
};

inline Cyclotomic conj(const Cyclotomic& x) { return x.conj(); }

}  // namespace orbirr
