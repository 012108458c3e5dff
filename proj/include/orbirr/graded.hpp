// Truncated graded cohomology ring on a single generator H, with the
// characteristic-class constructors used by the fixed-point engine:
// Chern characters, Todd factors (Bernoulli series), symbolic twists
// e^{+-sym*a*H}, Kawasaki denominator factors, and power-series inversion.
#pragma once

#include "orbirr/twist_poly.hpp"

#include <mutex>
#include <span>

namespace orbirr {

/// Element of Q(zeta)[m,q][H]/(H^{d+1}): one TwistPoly per cohomological
/// degree 0..d. Immutable value semantics; products truncate above d.
class GradedClass {
public:
    explicit GradedClass(int dim) : comp_(static_cast<std::size_t>(dim) + 1) {
        if (dim < 0) throw std::invalid_argument("graded class dimension must be >= 0");
    }

    static GradedClass zero(int dim) { return GradedClass(dim); }
    static GradedClass one(int dim) {
        GradedClass g(dim);
        g.comp_[0] = TwistPoly::constant(Rational(1));
        return g;
    }
    static GradedClass constant(int dim, const Cyclotomic& c) {
        GradedClass g(dim);
        g.comp_[0] = TwistPoly::constant(c);
        return g;
    }

    int dim() const { return static_cast<int>(comp_.size()) - 1; }

    const TwistPoly& component(int k) const { return comp_.at(static_cast<std::size_t>(k)); }
    void set_component(int k, TwistPoly p) { comp_.at(static_cast<std::size_t>(k)) = std::move(p); }

    bool is_zero() const {
        for (const auto& c : comp_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend GradedClass operator+(const GradedClass& a, const GradedClass& b) {
        check_dims(a, b);
        GradedClass r = a;
        for (std::size_t i = 0; i < r.comp_.size(); ++i) r.comp_[i] += b.comp_[i];
        return r;
    }
    friend GradedClass operator-(const GradedClass& a, const GradedClass& b) {
        check_dims(a, b);
        GradedClass r = a;
        for (std::size_t i = 0; i < r.comp_.size(); ++i) r.comp_[i] -= b.comp_[i];
        return r;
    }
    friend GradedClass operator*(const GradedClass& a, const GradedClass& b) {
        check_dims(a, b);
        GradedClass r(a.dim());
        for (std::size_t i = 0; i < a.comp_.size(); ++i) {
            if (a.comp_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < b.comp_.size(); ++j)
                r.comp_[i + j] += a.comp_[i] * b.comp_[j];
        }
        return r;
    }
    friend GradedClass operator*(const GradedClass& a, const TwistPoly& s) {
        GradedClass r = a;
        for (auto& c : r.comp_) c *= s;
        return r;
    }
    friend GradedClass operator*(const GradedClass& a, const Cyclotomic& s) {
        return a * TwistPoly::constant(s);
    }
    friend GradedClass operator*(const GradedClass& a, const Rational& s) {
        return a * TwistPoly::constant(s);
    }

    GradedClass& operator*=(const GradedClass& b) { return *this = *this * b; }
    GradedClass& operator+=(const GradedClass& b) { return *this = *this + b; }

    friend bool operator==(const GradedClass& a, const GradedClass& b) {
        if (a.dim() != b.dim()) return false;
        for (std::size_t i = 0; i < a.comp_.size(); ++i)
            if (a.comp_[i] != b.comp_[i]) return false;
        return true;
    }
    friend bool operator!=(const GradedClass& a, const GradedClass& b) { return !(a == b); }

private:
    static void check_dims(const GradedClass& a, const GradedClass& b) {
        if (a.dim() != b.dim())
            throw std::invalid_argument("graded classes live in different truncations");
    }

    std::vector<TwistPoly> comp_;
};

/// Bernoulli number B_n in the B_1 = -1/2 convention, generated by the
/// recurrence sum_{j=0}^{k} C(k+1,j) B_j = 0 and cached.
inline Rational bernoulli(unsigned n) {
    static std::vector<Rational> cache{Rational(1)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    while (cache.size() <= n) {
        const unsigned k = static_cast<unsigned>(cache.size());
        Rational s = 0;
        for (unsigned j = 0; j < k; ++j) s += Rational(binomial(k + 1, j)) * cache[j];
        cache.push_back(-s / Rational(k + 1));
    }
    return cache[n];
}

namespace detail {

/// Coefficient of t^n in t/(1 - e^{-t}) = sum (-1)^n B_n t^n / n!.
inline Rational todd_series_coeff(unsigned n) {
    Rational b = bernoulli(n);
    if (n % 2 == 1) b = -b;
    return b / Rational(factorial(n));
}

/// Coefficient of t^n in (1 - e^{-t})/t = sum (-1)^n t^n / (n+1)!.
inline Rational todd_inverse_series_coeff(unsigned n) {
    Rational c = Rational(1) / Rational(factorial(n + 1));
    return (n % 2 == 1) ? -c : c;
}

}  // namespace detail

/// e^{aH} truncated at degree d.
inline GradedClass exp_class(const Rational& a, int dim) {
    GradedClass g(dim);
    Rational pw = 1;
    for (int j = 0; j <= dim; ++j) {
        g.set_component(j, TwistPoly::constant(pw / Rational(factorial(static_cast<unsigned>(j)))));
        pw *= a;
    }
    return g;
}

/// ch of a sum of line bundles with first Chern classes c_i * H:
/// sum_i e^{c_i H}, truncated at degree d. An empty root list gives 0.
inline GradedClass ch_from_roots(std::span<const Rational> roots, int dim) {
    GradedClass g = GradedClass::zero(dim);
    for (const Rational& c : roots) g += exp_class(c, dim);
    return g;
}

enum class TwistSymbol { m, q };

/// e^{sign * sym * a * H}: component j carries (sign*a)^j/j! * sym^j.
inline GradedClass exp_twist(const Rational& a, TwistSymbol sym, int sign, int dim) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("exp_twist sign must be +-1");
    GradedClass g(dim);
    const Rational s = Rational(sign) * a;
    Rational pw = 1;
    for (int j = 0; j <= dim; ++j) {
        const MQ e = (sym == TwistSymbol::m) ? MQ{j, 0} : MQ{0, j};
        g.set_component(j, TwistPoly::monomial(e, Cyclotomic(pw / Rational(factorial(static_cast<unsigned>(j))))));
        pw *= s;
    }
    return g;
}

/// Todd class of a virtual bundle given by Chern roots: the plus list
/// contributes x/(1-e^{-x}) per root, the minus list its reciprocal.
/// Zero roots contribute a factor 1 and are skipped.
inline GradedClass todd_from_roots(std::span<const Rational> plus, std::span<const Rational> minus, int dim) {
    GradedClass g = GradedClass::one(dim);
    auto factor = [&](const Rational& root, bool inverse) {
        GradedClass f(dim);
        Rational pw = 1;
        for (int j = 0; j <= dim; ++j) {
            const Rational c = inverse ? detail::todd_inverse_series_coeff(static_cast<unsigned>(j))
                                       : detail::todd_series_coeff(static_cast<unsigned>(j));
            f.set_component(j, TwistPoly::constant(c * pw));
            pw *= root;
        }
        return f;
    };
    for (const Rational& r : plus)
        if (r != 0) g *= factor(r, false);
    for (const Rational& r : minus)
        if (r != 0) g *= factor(r, true);
    return g;
}

/// One Kawasaki denominator factor 1 - zeta^{-j} e^{-xH} for a normal
/// summand on which g acts by e^{2 pi i theta}, theta = j/N in (0,1).
/// Its constant term 1 - zeta^{-j} never vanishes.
inline GradedClass denominator_factor(const Rational& theta, const Rational& normal_root, int dim) {
    if (!(theta > 0 && theta < 1))
        throw std::invalid_argument(
            "rotation angle must lie in (0,1); theta=0 belongs to the tangent, not normal, directions");
    const unsigned n = static_cast<unsigned>(den(theta));
    const long long j = static_cast<long long>(num(theta));
    const Cyclotomic zeta_inv = Cyclotomic::root_of_unity(n, -j);
    GradedClass g(dim);
    g.set_component(0, TwistPoly::constant(Cyclotomic::one() - zeta_inv));
    Rational pw = 1;  // (-normal_root)^i
    for (int i = 1; i <= dim; ++i) {
        pw *= -normal_root;
        g.set_component(i, TwistPoly::constant(-(zeta_inv * (pw / Rational(factorial(static_cast<unsigned>(i)))))));
    }
    return g;
}

/// Multiplicative inverse of a unit graded class (constant, nonzero degree-0
/// component) via the geometric series in the nilpotent part.
inline GradedClass invert(const GradedClass& x) {
    const TwistPoly& c0 = x.component(0);
    const bool unit_shape = !c0.is_zero() && c0.terms().size() == 1 && c0.terms().begin()->first == MQ{0, 0};
    if (!unit_shape) throw std::invalid_argument("non-unit graded class");
    const Cyclotomic c = c0.terms().begin()->second;
    const Cyclotomic cinv = c.inverse();

    const int d = x.dim();
    // z := c^{-1} x - 1 has no degree-0 part, so z^{d+1} = 0.
    GradedClass z = x * cinv;
    z.set_component(0, TwistPoly());
    GradedClass acc = GradedClass::one(d);
    GradedClass zpow = GradedClass::one(d);
    for (int i = 1; i <= d; ++i) {
        zpow *= z;
        if (zpow.is_zero()) break;
        acc = (i % 2 == 1) ? acc - zpow : acc + zpow;
    }
    return acc * cinv;
}

/// Integration against the fundamental class: extracts the top component
/// and scales by the (possibly rational) degree of H^dim on the sector.
inline TwistPoly integrate(const GradedClass& x, const Rational& fundamental_degree) {
    return x.component(x.dim()) * fundamental_degree;
}

}  // namespace orbirr
