// Exact polynomials in the twist symbols m and q over cyclotomic
// coefficients, plus quasi-polynomials (one polynomial branch per residue
// class of m modulo a period).
#pragma once

#include "orbirr/cyclotomic.hpp"

#include <map>
#include <optional>
#include <sstream>

namespace orbirr {

struct MQ {
    int m = 0;
    int q = 0;
    friend bool operator<(const MQ& a, const MQ& b) {
        return a.m != b.m ? a.m < b.m : a.q < b.q;
    }
    friend bool operator==(const MQ& a, const MQ& b) { return a.m == b.m && a.q == b.q; }
};

class TwistPoly {
public:
    TwistPoly() = default;

    static TwistPoly constant(const Cyclotomic& c) {
        TwistPoly p;
        p.add_term({0, 0}, c);
        return p;
    }
    static TwistPoly constant(const Rational& r) { return constant(Cyclotomic(r)); }
    static TwistPoly monomial(MQ e, const Cyclotomic& c) {
        TwistPoly p;
        p.add_term(e, c);
        return p;
    }

    const std::map<MQ, Cyclotomic>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(MQ e, const Cyclotomic& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Cyclotomic coefficient(MQ e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Cyclotomic::zero() : it->second;
    }

    friend TwistPoly operator+(const TwistPoly& a, const TwistPoly& b) {
        TwistPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend TwistPoly operator-(const TwistPoly& a, const TwistPoly& b) {
        TwistPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend TwistPoly operator-(const TwistPoly& a) {
        TwistPoly r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend TwistPoly operator*(const TwistPoly& a, const TwistPoly& b) {
        TwistPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term({ea.m + eb.m, ea.q + eb.q}, ca * cb);
        return r;
    }
    friend TwistPoly operator*(const TwistPoly& a, const Cyclotomic& c) {
        TwistPoly r;
        for (const auto& [e, x] : a.terms_) r.add_term(e, x * c);
        return r;
    }
    friend TwistPoly operator*(const TwistPoly& a, const Rational& s) { return a * Cyclotomic(s); }

    TwistPoly& operator+=(const TwistPoly& b) { return *this = *this + b; }
    TwistPoly& operator-=(const TwistPoly& b) { return *this = *this - b; }
    TwistPoly& operator*=(const TwistPoly& b) { return *this = *this * b; }

    friend bool operator==(const TwistPoly& a, const TwistPoly& b) {
        return (a - b).is_zero();
    }
    friend bool operator!=(const TwistPoly& a, const TwistPoly& b) { return !(a == b); }

    /// Highest exponent of m with a nonzero coefficient; -1 for the zero
    /// polynomial.
    int degree_m() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.m);
        return d;
    }
    int degree_q() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.q);
        return d;
    }
    /// Highest total degree m+q; -1 for zero.
    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.m + e.q);
        return d;
    }

    bool has_rational_coefficients() const {
        for (const auto& [e, c] : terms_)
            if (!c.is_rational()) return false;
        return true;
    }

    Cyclotomic evaluate(long long m, long long q) const {
        Cyclotomic acc = Cyclotomic::zero();
        for (const auto& [e, c] : terms_) {
            Rational t = 1;
            for (int i = 0; i < e.m; ++i) t *= m;
            for (int i = 0; i < e.q; ++i) t *= q;
            acc += c * t;
        }
        return acc;
    }

    /// Substitute q := rate * m, collapsing to a polynomial in m alone.
    TwistPoly substitute_q(const Rational& rate) const {
        TwistPoly r;
        for (const auto& [e, c] : terms_)
            r.add_term({e.m + e.q, 0}, c * pow_rational(rate, static_cast<unsigned>(e.q)));
        return r;
    }

    /// Keep only the q-free part (evaluation at q = 0).
    TwistPoly at_q_zero() const {
        TwistPoly r;
        for (const auto& [e, c] : terms_)
            if (e.q == 0) r.add_term(e, c);
        return r;
    }

    /// Canonical rendering: descending powers of m, then q; rational
    /// coefficients in lowest terms. Throws on non-rational coefficients.
    std::string to_string() const;

private:
    std::map<MQ, Cyclotomic> terms_;
};

inline std::string TwistPoly::to_string() const {
    if (terms_.empty()) return "0";
    // Descending in m first, then q.
    std::vector<std::pair<MQ, Rational>> items;
    items.reserve(terms_.size());
    for (const auto& [e, c] : terms_) items.push_back({e, c.rational_part()});
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.first.m != b.first.m) return a.first.m > b.first.m;
        return a.first.q > b.first.q;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : items) {
        Rational a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        const bool has_sym = e.m > 0 || e.q > 0;
        if (!has_sym || a != 1) {
            os << orbirr::to_string(a);
            if (has_sym) os << "*";
        }
        if (e.m > 0) {
            os << "m";
            if (e.m > 1) os << "^" << e.m;
            if (e.q > 0) os << "*";
        }
        if (e.q > 0) {
            os << "q";
            if (e.q > 1) os << "^" << e.q;
        }
    }
    return os.str();
}

/// Quasi-polynomial in m: branch r applies to integers m == r (mod period).
/// All arithmetic aligns branches by residue, so products and sums stay
/// exact. A quasi-polynomial with all branches equal collapses to period 1.
class QuasiPoly {
public:
    QuasiPoly() : period_(1), branches_(1) {}
    explicit QuasiPoly(TwistPoly p) : period_(1), branches_{std::move(p)} {}
    QuasiPoly(unsigned period, std::vector<TwistPoly> branches)
        : period_(period), branches_(std::move(branches)) {
        if (period_ == 0 || branches_.size() != period_)
            throw std::invalid_argument("quasi-polynomial needs one branch per residue");
    }

    static QuasiPoly constant(const Rational& r) { return QuasiPoly(TwistPoly::constant(r)); }

    unsigned period() const { return period_; }
    const std::vector<TwistPoly>& branches() const { return branches_; }
    const TwistPoly& branch_for(long long m) const {
        return branches_[static_cast<std::size_t>(floor_mod(m, period_))];
    }

    bool is_zero() const {
        for (const auto& b : branches_)
            if (!b.is_zero()) return false;
        return true;
    }

    bool is_polynomial() const { return period_ == 1; }

    /// The sole branch of a period-1 quasi-polynomial.
    const TwistPoly& polynomial() const {
        if (period_ != 1) throw std::domain_error("quasi-polynomial has period > 1");
        return branches_[0];
    }

    QuasiPoly extended(unsigned new_period) const {
        if (new_period == period_) return *this;
        if (new_period % period_ != 0)
            throw std::invalid_argument("quasi-polynomial period extension must be a multiple");
        std::vector<TwistPoly> b(new_period);
        for (unsigned r = 0; r < new_period; ++r) b[r] = branches_[r % period_];
        return QuasiPoly(new_period, std::move(b));
    }

    /// Shrink the period to the smallest divisor consistent with the data.
    QuasiPoly collapsed() const {
        for (unsigned p = 1; p < period_; ++p) {
            if (period_ % p != 0) continue;
            bool ok = true;
            for (unsigned r = 0; r < period_ && ok; ++r)
                ok = (branches_[r] == branches_[r % p]);
            if (ok) {
                std::vector<TwistPoly> b(branches_.begin(), branches_.begin() + p);
                return QuasiPoly(p, std::move(b));
            }
        }
        return *this;
    }

    friend QuasiPoly operator+(const QuasiPoly& a, const QuasiPoly& b) {
        return zip(a, b, [](const TwistPoly& x, const TwistPoly& y) { return x + y; });
    }
    friend QuasiPoly operator-(const QuasiPoly& a, const QuasiPoly& b) {
        return zip(a, b, [](const TwistPoly& x, const TwistPoly& y) { return x - y; });
    }
    friend QuasiPoly operator*(const QuasiPoly& a, const QuasiPoly& b) {
        return zip(a, b, [](const TwistPoly& x, const TwistPoly& y) { return x * y; });
    }
    friend QuasiPoly operator*(const QuasiPoly& a, const Rational& s) {
        QuasiPoly r = a;
        for (auto& b : r.branches_) b = b * s;
        return r;
    }

    QuasiPoly& operator+=(const QuasiPoly& b) { return *this = *this + b; }

    friend bool operator==(const QuasiPoly& a, const QuasiPoly& b) {
        const unsigned p = static_cast<unsigned>(lcm_u(a.period_, b.period_));
        const QuasiPoly x = a.extended(p), y = b.extended(p);
        for (unsigned r = 0; r < p; ++r)
            if (x.branches_[r] != y.branches_[r]) return false;
        return true;
    }
    friend bool operator!=(const QuasiPoly& a, const QuasiPoly& b) { return !(a == b); }

    int degree_m() const {
        int d = -1;
        for (const auto& b : branches_) d = std::max(d, b.degree_m());
        return d;
    }

    bool has_rational_coefficients() const {
        for (const auto& b : branches_)
            if (!b.has_rational_coefficients()) return false;
        return true;
    }

    /// Exact substitution at integers; requires rational coefficients.
    Rational evaluate_at(long long m, long long q) const {
        return branch_for(m).evaluate(m, q).rational_part();
    }

    QuasiPoly substitute_q(const Rational& rate) const {
        QuasiPoly r = *this;
        for (auto& b : r.branches_) b = b.substitute_q(rate);
        return r;
    }
    QuasiPoly at_q_zero() const {
        QuasiPoly r = *this;
        for (auto& b : r.branches_) b = b.at_q_zero();
        return r;
    }

private:
    template <class F>
    static QuasiPoly zip(const QuasiPoly& a, const QuasiPoly& b, F f) {
        const unsigned p = static_cast<unsigned>(lcm_u(a.period_, b.period_));
        std::vector<TwistPoly> out(p);
        for (unsigned r = 0; r < p; ++r)
            out[r] = f(a.branches_[r % a.period_], b.branches_[r % b.period_]);
        return QuasiPoly(p, std::move(out)).collapsed();
    }

    unsigned period_;
    std::vector<TwistPoly> branches_;
};

}  // namespace orbirr
