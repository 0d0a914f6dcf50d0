#pragma once

#include "polypell/errors.hpp"
#include "polypell/field.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace polypell {

/// Dense univariate polynomial over an exact field F, coefficients stored in
/// ascending degree with no trailing zeros.
///
/// F must provide +, -, *, /, ==, construction from int, and the free
/// functions is_zero(F) and to_string(F).
template <class F>
std::string coefficient_text(const F& c, bool wrap = true);

template <class F>
class UniPoly {
public:
    /// Degree reported for the zero polynomial.
    static constexpr int kZeroDegree = -1;

    UniPoly() = default;
    explicit UniPoly(std::vector<F> ascending) : c_(std::move(ascending)) { trim(); }
    UniPoly(std::initializer_list<F> ascending) : c_(ascending) { trim(); }

    static UniPoly constant(const F& c) { return UniPoly(std::vector<F>{c}); }
    static UniPoly monomial(const F& c, int k) {
        std::vector<F> v(static_cast<std::size_t>(k) + 1, F(0));
        v[k] = c;
        return UniPoly(std::move(v));
    }
    static UniPoly x() { return monomial(F(1), 1); }
    /// X - a
    static UniPoly linear(const F& a) { return UniPoly({-a, F(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const F& lc() const {
        if (c_.empty()) throw Error(ErrorCode::ZeroPolynomial, "leading coefficient of zero polynomial");
        return c_.back();
    }
    F coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return F(0);
        return c_[k];
    }
    const std::vector<F>& coeffs() const { return c_; }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    UniPoly& operator+=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (detail::coeff_is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
    friend UniPoly operator*(const F& s, const UniPoly& p) {
        if (detail::coeff_is_zero(s)) return {};
        UniPoly r = p;
        for (auto& c : r.c_) c = s * c;
        r.trim();
        return r;
    }
    friend UniPoly operator*(const UniPoly& p, const F& s) { return s * p; }
    friend UniPoly operator/(const UniPoly& p, const F& s) { return (F(1) / s) * p; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    F operator()(const F& x) const {
        F acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// p(q(X))
    UniPoly compose(const UniPoly& q) const {
        UniPoly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
        return acc;
    }

    /// p(X + a), i.e. the Taylor coefficients at a.
    UniPoly shift(const F& a) const {
        std::vector<F> r = c_;
        const std::size_t n = r.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j > i; --j) r[j - 1] = r[j - 1] + a * r[j];
        return UniPoly(std::move(r));
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<F> r(c_.size() - 1, F(0));
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = F(static_cast<int>(i)) * c_[i];
        return UniPoly(std::move(r));
    }

    UniPoly monic() const {
        if (is_zero()) return {};
        return (F(1) / lc()) * *this;
    }

    UniPoly pow(unsigned e) const {
        UniPoly r = constant(F(1)), b = *this;
        while (e) {
            if (e & 1u) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    /// Multiplicity of a as a root (0 when p(a) != 0). Undefined for zero p.
    int root_multiplicity(const F& a) const {
        if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "root multiplicity of zero polynomial");
        UniPoly s = shift(a);
        int k = 0;
        while (k < static_cast<int>(s.c_.size()) && detail::coeff_is_zero(s.c_[k])) ++k;
        return k;
    }

    template <class G, class Map>
    UniPoly<G> map(Map&& f) const {
        std::vector<G> r;
        r.reserve(c_.size());
        for (const auto& c : c_) r.push_back(f(c));
        return UniPoly<G>(std::move(r));
    }

    /// Canonical text: descending powers with explicit '*' and '^'.
    std::string to_string(const std::string& var = "X") const;

private:
    void trim() {
        while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<F> c_;
};

template <class F>
struct DivMod {
    UniPoly<F> quotient;
    UniPoly<F> remainder;
};

template <class F>
DivMod<F> poly_divmod(const UniPoly<F>& a, const UniPoly<F>& b) {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZeroPoly, "polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly<F>(), a};
    std::vector<F> rem = a.coeffs();
    const int db = b.degree();
    const F inv = F(1) / b.lc();
    std::vector<F> quo(static_cast<std::size_t>(a.degree() - db) + 1, F(0));
    for (int k = a.degree(); k >= db; --k) {
        if (detail::coeff_is_zero(rem[k])) continue;
        F q = rem[k] * inv;
        quo[k - db] = q;
        for (int j = 0; j <= db; ++j) rem[k - db + j] = rem[k - db + j] - q * b.coeffs()[j];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {UniPoly<F>(std::move(quo)), UniPoly<F>(std::move(rem))};
}

template <class F>
UniPoly<F> operator/(const UniPoly<F>& a, const UniPoly<F>& b) { return poly_divmod(a, b).quotient; }
template <class F>
UniPoly<F> operator%(const UniPoly<F>& a, const UniPoly<F>& b) { return poly_divmod(a, b).remainder; }

/// a / b, throwing InternalVerificationFailure if the division leaves a remainder.
template <class F>
UniPoly<F> exact_quotient(const UniPoly<F>& a, const UniPoly<F>& b) {
    auto qr = poly_divmod(a, b);
    if (!qr.remainder.is_zero())
        throw Error(ErrorCode::InternalVerificationFailure, "expected exact polynomial division");
    return qr.quotient;
}

/// Monic gcd; gcd(0, 0) is rejected.
template <class F>
UniPoly<F> poly_gcd(UniPoly<F> a, UniPoly<F> b) {
    if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "gcd(0, 0)");
    while (!b.is_zero()) {
        UniPoly<F> r = a % b;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

class BigRational;
/// Over Q the gcd runs on primitive integer polynomials (heuristic gcd with a
/// Euclidean fallback); same contract as the generic version.
UniPoly<BigRational> poly_gcd(UniPoly<BigRational> a, UniPoly<BigRational> b);

/// true iff gcd(D, D') is constant.
template <class F>
bool is_squarefree(const UniPoly<F>& d) {
    if (d.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "squarefree test of zero polynomial");
    if (d.degree() <= 1) return true;
    return poly_gcd(d, d.derivative()).degree() == 0;
}

/// Resultant over a field, via the Euclidean remainder sequence.
template <class F>
F resultant(UniPoly<F> a, UniPoly<F> b) {
    if (a.is_zero() || b.is_zero()) return F(0);
    F acc(1);
    while (true) {
        const int da = a.degree(), db = b.degree();
        if (db == 0) {
            F p(1);
            for (int i = 0; i < da; ++i) p = p * b.lc();
            return acc * p;
        }
        if (da < db) {
            if ((da % 2 == 1) && (db % 2 == 1)) acc = -acc;
            std::swap(a, b);
            continue;
        }
        UniPoly<F> r = a % b;
        if (r.is_zero()) return F(0);
        // res(a, b) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
        if ((da % 2 == 1) && (db % 2 == 1)) acc = -acc;
        for (int i = 0; i < da - r.degree(); ++i) acc = acc * b.lc();
        a = std::move(b);
        b = std::move(r);
    }
}

/// Discriminant up to the usual sign/leading-coefficient normalization:
/// zero exactly when d has a repeated root.
template <class F>
F discriminant(const UniPoly<F>& d) {
    return resultant(d, d.derivative());
}

template <class F>
std::string coefficient_text(const F& c, bool wrap) {
    std::string s = detail::coeff_to_string(c);
    if (!wrap) return s;
    bool compound = false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-') compound = true;
    return compound ? "(" + s + ")" : s;
}

template <class F>
std::string UniPoly<F>::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const F& c = c_[k];
        if (detail::coeff_is_zero(c)) continue;
        std::string term;
        std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
        if (k > 0 && c == F(1)) {
            term = mono;
        } else if (k > 0 && c == F(-1)) {
            term = "-" + mono;
        } else {
            term = k == 0 ? coefficient_text(c, false) : coefficient_text(c) + "*" + mono;
        }
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

template <class F>
std::ostream& operator<<(std::ostream& os, const UniPoly<F>& p) { return os << p.to_string(); }

}  // namespace polypell
