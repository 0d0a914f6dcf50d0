#pragma once

#include "polypell/cfrac.hpp"
#include "polypell/errors.hpp"
#include "polypell/laurent.hpp"
#include "polypell/poly.hpp"
#include "polypell/quad.hpp"

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polypell {

/// Square roots in the working field. Over K(sqrt(delta)) base-field values
/// are tagged with delta first, so c*sqrt(delta) is found.
template <class F>
struct FieldExt {
    std::optional<F> sqrt(const F& v) const { return sqrt_in_field(v); }
};

template <class K>
struct FieldExt<Quad<K>> {
    std::shared_ptr<const K> delta;
    std::optional<Quad<K>> sqrt(const Quad<K>& v) const {
        if (delta && v.in_base()) return sqrt_in_field(Quad<K>(v.rational_part(), K(0), delta));
        return sqrt_in_field(v);
    }
};

/// Nonsingular model of Y^2 = D(X), deg D = 2d >= 4, with points inf+ and inf-.
/// inf+ is the branch on which Y = -s, s the canonical series root of D.
template <class F>
class HyperCurve {
public:
    explicit HyperCurve(UniPoly<F> d, FieldExt<F> ext = {}) : d_(std::move(d)), ext_(std::move(ext)) {
        check_radicand(d_, 4);
    }

    const UniPoly<F>& D() const { return d_; }
    int half_degree() const { return d_.degree() / 2; }
    int genus() const { return half_degree() - 1; }
    const FieldExt<F>& ext() const { return ext_; }
    std::optional<F> sqrt(const F& v) const { return ext_.sqrt(v); }

    /// s = sqrt(D) at infinity, exact for exponents >= low.
    LaurentSeries<F> branch(int low) const { return sqrt_series(d_, low); }

private:
    UniPoly<F> d_;
    FieldExt<F> ext_;
};

enum class PointKind { Finite, InfPlus, InfMinus };

/// Point of the curve. Finite points carry x, delta = D(x) and a sign: the
/// "+" point has y equal to the canonical root of delta (which may live in
/// K(sqrt(delta)) only), sign 0 marks a Weierstrass point.
template <class F>
struct CurvePoint {
    PointKind kind = PointKind::InfPlus;
    F x = F(0);
    F delta = F(0);
    int sign = 0;
    std::optional<F> root;

    static CurvePoint inf_plus() { return CurvePoint{}; }
    static CurvePoint inf_minus() {
        CurvePoint p;
        p.kind = PointKind::InfMinus;
        return p;
    }
    static CurvePoint finite(F x, F delta, int sign, std::optional<F> root) {
        CurvePoint p;
        p.kind = PointKind::Finite;
        p.x = std::move(x);
        p.delta = std::move(delta);
        p.sign = sign;
        p.root = std::move(root);
        return p;
    }

    bool is_finite() const { return kind == PointKind::Finite; }
    bool is_weierstrass() const { return is_finite() && sign == 0; }
    /// Coordinates lie in the working field.
    bool is_rational() const { return !is_finite() || sign == 0 || root.has_value(); }
    std::optional<F> y() const {
        if (!is_finite()) return std::nullopt;
        if (sign == 0) return F(0);
        if (!root) return std::nullopt;
        return sign > 0 ? *root : -*root;
    }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
        if (a.kind != b.kind) return false;
        if (a.kind != PointKind::Finite) return true;
        return a.sign == b.sign && a.x == b.x;
    }

    std::string to_string() const {
        if (kind == PointKind::InfPlus) return "inf+";
        if (kind == PointKind::InfMinus) return "inf-";
        std::string ys;
        if (sign == 0) {
            ys = "0";
        } else if (root) {
            ys = detail::coeff_to_string(sign > 0 ? *root : -*root);
        } else {
            ys = std::string(sign > 0 ? "" : "-") + "sqrt(" + detail::coeff_to_string(delta) + ")";
        }
        return "(" + detail::coeff_to_string(x) + ", " + ys + ")";
    }
};

template <class F>
CurvePoint<F> involution(const CurvePoint<F>& p) {
    if (p.kind == PointKind::InfPlus) return CurvePoint<F>::inf_minus();
    if (p.kind == PointKind::InfMinus) return CurvePoint<F>::inf_plus();
    CurvePoint<F> q = p;
    q.sign = -p.sign;
    return q;
}

/// One Weierstrass point, or the pair (+, -) above x.
template <class F>
std::vector<CurvePoint<F>> points_above(const HyperCurve<F>& c, const F& x) {
    F delta = c.D()(x);
    if (detail::coeff_is_zero(delta)) return {CurvePoint<F>::finite(x, delta, 0, std::nullopt)};
    auto r = c.sqrt(delta);
    return {CurvePoint<F>::finite(x, delta, 1, r), CurvePoint<F>::finite(x, delta, -1, r)};
}

/// Formal sum of points, plus the zeros at places whose x-coordinate is not
/// in the field, known only through their norm: residual_zeros /
/// residual_poles, both monic and coprime.
template <class F>
class Divisor {
public:
    using Term = std::pair<CurvePoint<F>, long>;

    Divisor() : zeros_(UniPoly<F>::constant(F(1))), poles_(UniPoly<F>::constant(F(1))) {}

    void add(const CurvePoint<F>& p, long c) {
        if (c == 0) return;
        for (auto it = terms_.begin(); it != terms_.end(); ++it) {
            if (it->first == p) {
                it->second += c;
                if (it->second == 0) terms_.erase(it);
                return;
            }
        }
        terms_.emplace_back(p, c);
    }

    long coefficient(const CurvePoint<F>& p) const {
        for (const auto& [q, c] : terms_)
            if (q == p) return c;
        return 0;
    }

    const std::vector<Term>& terms() const { return terms_; }
    const UniPoly<F>& residual_zeros() const { return zeros_; }
    const UniPoly<F>& residual_poles() const { return poles_; }
    bool has_residual() const { return zeros_.degree() > 0 || poles_.degree() > 0; }

    void multiply_residual(const UniPoly<F>& zeros, const UniPoly<F>& poles) {
        UniPoly<F> z = zeros_ * zeros.monic(), p = poles_ * poles.monic();
        UniPoly<F> g = poly_gcd(z, p);
        zeros_ = exact_quotient(z, g);
        poles_ = exact_quotient(p, g);
    }

    long degree() const {
        long s = 0;
        for (const auto& t : terms_) s += t.second;
        return s + zeros_.degree() - poles_.degree();
    }
    bool is_zero() const { return terms_.empty() && !has_residual(); }

    Divisor operator-() const { return scaled(-1); }
    Divisor scaled(long k) const {
        Divisor r;
        if (k == 0) return r;
        for (const auto& [p, c] : terms_) r.add(p, k * c);
        const unsigned e = static_cast<unsigned>(k < 0 ? -k : k);
        if (k > 0) r.multiply_residual(zeros_.pow(e), poles_.pow(e));
        else r.multiply_residual(poles_.pow(e), zeros_.pow(e));
        return r;
    }
    friend Divisor operator+(const Divisor& a, const Divisor& b) {
        Divisor r = a;
        for (const auto& [p, c] : b.terms_) r.add(p, c);
        r.multiply_residual(b.zeros_, b.poles_);
        return r;
    }
    friend Divisor operator-(const Divisor& a, const Divisor& b) { return a + (-b); }
    friend Divisor operator*(long k, const Divisor& d) { return d.scaled(k); }

    friend bool operator==(const Divisor& a, const Divisor& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (const auto& [p, c] : a.terms_)
            if (b.coefficient(p) != c) return false;
        return a.zeros_ == b.zeros_ && a.poles_ == b.poles_;
    }

    std::string to_string() const {
        std::string out;
        auto put = [&out](long c, const std::string& what) {
            const long a = c < 0 ? -c : c;
            std::string body = (a == 1 ? "" : std::to_string(a) + "*") + what;
            if (out.empty()) out = (c < 0 ? "-" : "") + body;
            else out += (c < 0 ? " - " : " + ") + body;
        };
        for (const auto& [p, c] : terms_) put(c, p.to_string());
        if (zeros_.degree() > 0) put(1, "zeros(" + zeros_.to_string() + ")");
        if (poles_.degree() > 0) put(-1, "zeros(" + poles_.to_string() + ")");
        return out.empty() ? "0" : out;
    }

private:
    std::vector<Term> terms_;
    UniPoly<F> zeros_, poles_;
};

template <class F>
Divisor<F> involution(const Divisor<F>& d) {
    Divisor<F> r;
    for (const auto& [p, c] : d.terms()) r.add(involution(p), c);
    r.multiply_residual(d.residual_zeros(), d.residual_poles());
    return r;
}

/// Divisor of X - x: both points above x (or twice the Weierstrass point) minus inf+ and inf-.
template <class F>
Divisor<F> divisor_of_line(const HyperCurve<F>& c, const F& x) {
    Divisor<F> r;
    auto pts = points_above(c, x);
    for (const auto& p : pts) r.add(p, pts.size() == 1 ? 2 : 1);
    r.add(CurvePoint<F>::inf_plus(), -1);
    r.add(CurvePoint<F>::inf_minus(), -1);
    return r;
}

namespace detail {

constexpr int kInfiniteOrder = INT_MAX;

template <class F>
int order_at(const UniPoly<F>& p, const F& x) {
    return p.is_zero() ? kInfiniteOrder : p.root_multiplicity(x);
}

}  // namespace detail

/// Pole orders at infinity: {deg(R - sS), deg(R + sS)}, i.e. the orders of
/// R + YS at inf+ and inf- are the negatives.
template <class F>
std::pair<int, int> degrees_at_infinity(const HyperCurve<F>& c, const UniPoly<F>& r, const UniPoly<F>& s) {
    const int d = c.half_degree();
    const UniPoly<F> n = r * r - c.D() * s * s;
    const int m = std::max(r.degree(), s.is_zero() ? r.degree() : s.degree() + d);
    if (n.degree() == 2 * m) return {m, m};
    // exactly one side cancels at X^m: the one with R_m + sign * r0 * S_{m-d} = 0
    const F r0 = *sqrt_in_field(c.D().lc());
    const F top_minus = r.coeff(m) - r0 * s.coeff(m - d);
    const int low = n.degree() - m;
    return detail::coeff_is_zero(top_minus) ? std::pair{low, m} : std::pair{m, low};
}

/// Divisor of (R + YS) / prod (X - x_j)^k_j. Finite places with x in the
/// field are found among the roots of the norm R^2 - DS^2 (constant roots
/// only over Q(t)), the denominator points and `hints`; the remaining zeros
/// go to the residual.
template <class F>
Divisor<F> divisor_of_function(const HyperCurve<F>& c, const UniPoly<F>& r, const UniPoly<F>& s,
                               const std::vector<std::pair<F, int>>& denominator = {},
                               const std::vector<F>& hints = {}) {
    if (r.is_zero() && s.is_zero()) throw Error(ErrorCode::ZeroFunction, "divisor of the zero function");
    const UniPoly<F> n = r * r - c.D() * s * s;
    if (n.is_zero()) throw Error(ErrorCode::InternalVerificationFailure, "norm of a nonzero function vanished");

    std::vector<F> xs;
    auto note = [&](const F& x) {
        for (const auto& y : xs)
            if (y == x) return;
        xs.push_back(x);
    };
    for (const auto& x : roots_in_field(n)) note(x);
    for (const auto& [x, k] : denominator) note(x);
    for (const auto& x : hints) note(x);

    Divisor<F> out;
    UniPoly<F> rest = n.monic();
    int total_den = 0;
    for (const auto& x : xs) {
        int k = 0;
        for (const auto& [y, e] : denominator)
            if (y == x) k += e;
        total_den += k;
        const int on = n.root_multiplicity(x);
        if (on > 0) rest = exact_quotient(rest, UniPoly<F>::linear(x).pow(static_cast<unsigned>(on)));
        auto pts = points_above(c, x);
        if (pts.size() == 1) {
            const int orr = detail::order_at(r, x), os = detail::order_at(s, x);
            const long a = orr == detail::kInfiniteOrder ? LONG_MAX : 2L * orr;
            const long b = os == detail::kInfiniteOrder ? LONG_MAX : 1L + 2L * os;
            const long ord = std::min(a, b);
            if (ord != on) throw Error(ErrorCode::InternalVerificationFailure, "Weierstrass order disagrees with the norm");
            out.add(pts[0], ord - 2L * k);
            continue;
        }
        if (!pts[0].root) {
            const int ord = std::min(detail::order_at(r, x), detail::order_at(s, x));
            if (2 * ord != on) throw Error(ErrorCode::InternalVerificationFailure, "conjugate orders disagree with the norm");
            out.add(pts[0], ord - k);
            out.add(pts[1], ord - k);
            continue;
        }
        const int prec = on + 1;
        const UniPoly<F> rs = r.shift(x), ss = s.shift(x);
        std::vector<long> ords;
        for (const auto& p : pts) {
            std::vector<F> y = local_sqrt_branch(c.D(), x, *p.y(), prec);
            int ord = -1;
            for (int j = 0; j < prec && ord < 0; ++j) {
                F acc = rs.coeff(j);
                for (int i = 0; i <= j; ++i) acc = acc + y[i] * ss.coeff(j - i);
                if (!detail::coeff_is_zero(acc)) ord = j;
            }
            if (ord < 0) throw Error(ErrorCode::InternalVerificationFailure, "local order exceeds the norm bound");
            ords.push_back(ord);
        }
        if (ords[0] + ords[1] != on) throw Error(ErrorCode::InternalVerificationFailure, "local orders disagree with the norm");
        out.add(pts[0], ords[0] - k);
        out.add(pts[1], ords[1] - k);
    }
    const auto [dplus, dminus] = degrees_at_infinity(c, r, s);
    out.add(CurvePoint<F>::inf_plus(), -dplus + total_den);
    out.add(CurvePoint<F>::inf_minus(), -dminus + total_den);
    if (rest.degree() > 0) out.multiply_residual(rest, UniPoly<F>::constant(F(1)));
    if (out.degree() != 0) throw Error(ErrorCode::InternalVerificationFailure, "divisor of a function has nonzero degree");
    return out;
}

/// Product of R1 + Y S1 and R2 + Y S2 on Y^2 = D.
template <class F>
std::pair<UniPoly<F>, UniPoly<F>> multiply_functions(const UniPoly<F>& d, const std::pair<UniPoly<F>, UniPoly<F>>& a,
                                                     const std::pair<UniPoly<F>, UniPoly<F>>& b) {
    return {a.first * b.first + d * a.second * b.second, a.first * b.second + a.second * b.first};
}

}  // namespace polypell
