#pragma once

#include "polypell/errors.hpp"
#include "polypell/field.hpp"
#include "polypell/poly.hpp"

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <vector>

namespace polypell {

/// Truncated Laurent series in descending powers of X:
///   sum_{k = low}^{top} c_k X^k  +  O(X^(low-1)).
/// Coefficients for every exponent >= low() are exact; nothing is known
/// below. An exact polynomial has low() == kExact.
template <class F>
class LaurentSeries {
public:
    static constexpr int kExact = INT_MIN / 4;

    LaurentSeries() : top_(0), low_(kExact) {}

    /// Coefficients given from exponent `top` downwards; exact to `low`.
    LaurentSeries(int top, std::vector<F> descending, int low) : top_(top), c_(std::move(descending)), low_(low) {
        normalize();
    }

    static LaurentSeries from_poly(const UniPoly<F>& p) {
        if (p.is_zero()) return LaurentSeries();
        std::vector<F> d(p.coeffs().rbegin(), p.coeffs().rend());
        return LaurentSeries(p.degree(), std::move(d), kExact);
    }

    /// True when every retained coefficient is zero.
    bool is_zero() const { return c_.empty(); }
    bool is_exact() const { return low_ == kExact; }
    /// Exponent of the first nonzero retained coefficient.
    int top_degree() const { return top_; }
    int precision() const { return low_; }

    F coeff(int k) const {
        if (k < low_ && !is_exact())
            throw Error(ErrorCode::InvalidArgument, "coefficient below series precision");
        if (c_.empty() || k > top_) return F(0);
        std::size_t i = static_cast<std::size_t>(top_ - k);
        return i < c_.size() ? c_[i] : F(0);
    }

    /// Sum of the terms with nonnegative exponent (the polynomial part).
    UniPoly<F> polynomial_part() const {
        if (c_.empty() || top_ < 0) return {};
        if (low_ > 0) throw Error(ErrorCode::InvalidArgument, "series too short for its polynomial part");
        std::vector<F> v(static_cast<std::size_t>(top_) + 1, F(0));
        for (int k = 0; k <= top_; ++k) v[k] = coeff(k);
        return UniPoly<F>(std::move(v));
    }

    /// Same series with fewer retained terms.
    LaurentSeries truncate(int low) const {
        if (low <= low_) return *this;
        std::vector<F> d;
        for (int k = top_; k >= low && !c_.empty(); --k) d.push_back(coeff(k));
        return LaurentSeries(top_, std::move(d), low);
    }

    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return a.add(b, false); }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a.add(b, true); }

    /// Product. The known range of a product is limited by the first unknown
    /// term of either factor times the other factor's leading term.
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        int low = kExact;
        if (!a.is_exact()) low = std::max(low, a.low_ + (b.is_zero() ? 0 : b.top_));
        if (!b.is_exact()) low = std::max(low, b.low_ + (a.is_zero() ? 0 : a.top_));
        if (a.is_zero() || b.is_zero()) return LaurentSeries(0, {}, low);
        const int top = a.top_ + b.top_;
        const int n = low == kExact ? static_cast<int>(a.c_.size() + b.c_.size()) - 1 : top - low + 1;
        if (n <= 0) return LaurentSeries(top, {}, low);
        std::vector<F> r(static_cast<std::size_t>(n), F(0));
        for (std::size_t i = 0; i < a.c_.size() && static_cast<int>(i) < n; ++i) {
            if (detail::coeff_is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size() && static_cast<int>(i + j) < n; ++j)
                r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return LaurentSeries(top, std::move(r), low);
    }

    friend LaurentSeries operator*(const F& s, const LaurentSeries& a) {
        LaurentSeries r = a;
        for (auto& c : r.c_) c = s * c;
        r.normalize();
        return r;
    }

    /// Multiplicative inverse keeping the same relative precision.
    LaurentSeries inverse() const {
        if (c_.empty()) throw Error(ErrorCode::DivisionByZero, "inverse of a series that is zero to precision");
        if (is_exact()) throw Error(ErrorCode::InvalidArgument, "truncate an exact series before inverting it");
        const int rel = top_ - low_;  // known terms after the leading one
        const int len = rel + 1;
        std::vector<F> r(static_cast<std::size_t>(len), F(0));
        const F inv = F(1) / c_[0];
        r[0] = inv;
        for (int k = 1; k < len; ++k) {
            F acc(0);
            for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j) acc = acc + c_[j] * r[k - j];
            r[k] = -(acc * inv);
        }
        const int top = -top_;
        return LaurentSeries(top, std::move(r), top - rel);
    }

    std::string to_string(const std::string& var = "X") const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (detail::coeff_is_zero(c_[i])) continue;
            int k = top_ - static_cast<int>(i);
            std::string term = coefficient_text(c_[i]);
            if (k != 0) term += "*" + var + "^" + std::to_string(k);
            if (!out.empty() && term[0] != '-') out += "+";
            out += term;
        }
        if (out.empty()) out = "0";
        if (!is_exact()) out += "+O(" + var + "^" + std::to_string(low_ - 1) + ")";
        return out;
    }

private:
    LaurentSeries add(const LaurentSeries& b, bool negate) const {
        const int low = std::max(low_, b.low_);
        int top;
        if (c_.empty() && b.c_.empty()) return LaurentSeries(0, {}, low);
        if (c_.empty()) top = b.top_;
        else if (b.c_.empty()) top = top_;
        else top = std::max(top_, b.top_);
        int bottom = low;
        if (low == kExact) {
            bottom = INT_MAX;
            if (!c_.empty()) bottom = std::min(bottom, top_ - static_cast<int>(c_.size()) + 1);
            if (!b.c_.empty()) bottom = std::min(bottom, b.top_ - static_cast<int>(b.c_.size()) + 1);
        }
        std::vector<F> r;
        for (int k = top; k >= bottom; --k) {
            F x = coeff_or_zero(k);
            F y = b.coeff_or_zero(k);
            r.push_back(negate ? x - y : x + y);
        }
        return LaurentSeries(top, std::move(r), low);
    }

    F coeff_or_zero(int k) const {
        if (c_.empty() || k > top_) return F(0);
        if (k < top_ - static_cast<int>(c_.size()) + 1) return F(0);
        return c_[static_cast<std::size_t>(top_ - k)];
    }

    void normalize() {
        // drop known-zero leading terms, and anything below the precision
        std::size_t lead = 0;
        while (lead < c_.size() && detail::coeff_is_zero(c_[lead])) ++lead;
        if (lead == c_.size()) {
            c_.clear();
            top_ = 0;
            return;
        }
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
            top_ -= static_cast<int>(lead);
        }
        if (!is_exact()) {
            const int keep = top_ - low_ + 1;
            if (keep <= 0) {
                c_.clear();
                top_ = 0;
                return;
            }
            if (static_cast<int>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
        }
        while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
        if (c_.empty()) top_ = 0;
    }

    int top_;
    std::vector<F> c_;
    int low_;
};

/// Square root of a polynomial of even degree 2d whose leading coefficient
/// is a square, as a Laurent series with top exponent d, exact for all
/// exponents >= low. The leading coefficient is the canonical root.
template <class F>
LaurentSeries<F> sqrt_series(const UniPoly<F>& d, int low) {
    if (d.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "square root of zero");
    if (d.degree() % 2 != 0) throw Error(ErrorCode::OddDegree, "square root series needs even degree");
    auto lead = sqrt_in_field(d.lc());
    if (!lead) throw Error(ErrorCode::LeadingCoefficientNotASquare, "leading coefficient " + to_string(d.lc()));
    const int half = d.degree() / 2;
    const int n = std::max(half - low + 1, 1);
    // s = sum_{i>=0} r_i X^(half - i); s^2 = D gives
    // 2 r_0 r_k = D_{2half-k} - sum_{i=1}^{k-1} r_i r_{k-i}
    std::vector<F> r(static_cast<std::size_t>(n), F(0));
    r[0] = *lead;
    const F inv2r0 = F(1) / (F(2) * r[0]);
    for (int k = 1; k < n; ++k) {
        F acc = d.coeff(d.degree() - k);
        for (int i = 1; i < k; ++i) acc = acc - r[i] * r[k - i];
        r[k] = acc * inv2r0;
    }
    return LaurentSeries<F>(half, std::move(r), std::min(low, half));
}

/// Polynomial square root, when p is a perfect square (canonical sign on the
/// leading coefficient).
template <class F>
std::optional<UniPoly<F>> exact_poly_sqrt(const UniPoly<F>& p) {
    if (p.is_zero()) return UniPoly<F>();
    if (p.degree() % 2 != 0) return std::nullopt;
    if (!sqrt_in_field(p.lc())) return std::nullopt;
    UniPoly<F> r = sqrt_series(p, 0).polynomial_part();
    if (r * r == p) return r;
    return std::nullopt;
}

/// Branch of sqrt(D) near X = x0 with value y0 != 0 there, as a power series
/// in u = X - x0: coefficients [y_0, y_1, ..., y_{n-1}].
template <class F>
std::vector<F> local_sqrt_branch(const UniPoly<F>& d, const F& x0, const F& y0, int n) {
    UniPoly<F> ds = d.shift(x0);
    std::vector<F> y(static_cast<std::size_t>(std::max(n, 1)), F(0));
    y[0] = y0;
    const F inv = F(1) / (F(2) * y0);
    for (int k = 1; k < n; ++k) {
        F acc = ds.coeff(k);
        for (int i = 1; i < k; ++i) acc = acc - y[i] * y[k - i];
        y[k] = acc * inv;
    }
    y.resize(static_cast<std::size_t>(std::max(n, 0)));
    return y;
}

}  // namespace polypell
