#pragma once

#include "polypell/errors.hpp"
#include "polypell/field.hpp"
#include "polypell/poly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace polypell {

/// Element a + b*sqrt(delta) of K(sqrt(delta)), delta a non-square of the
/// base field K. Elements with b = 0 may leave delta unset; they behave as
/// elements of K and combine with any extension. Mixing two different
/// deltas is rejected (no nested extensions).
template <class K>
class Quad {
public:
    using Base = K;
    using DeltaPtr = std::shared_ptr<const K>;

    Quad() : a_(0), b_(0) {}
    Quad(int c) : a_(c), b_(0) {}
    Quad(const K& a) : a_(a), b_(0) {}
    Quad(K a, K b, DeltaPtr delta) : a_(std::move(a)), b_(std::move(b)), delta_(std::move(delta)) {
        if (!is_zero(b_) && !delta_) throw Error(ErrorCode::InvalidArgument, "irrational part without delta");
    }

    static Quad root(DeltaPtr delta) { return Quad(K(0), K(1), std::move(delta)); }

    const K& rational_part() const { return a_; }
    const K& irrational_part() const { return b_; }
    const DeltaPtr& delta() const { return delta_; }
    bool in_base() const { return is_zero(b_); }

    Quad operator-() const { return Quad(-a_, -b_, delta_, 0); }
    friend Quad operator+(const Quad& x, const Quad& y) { return Quad(x.a_ + y.a_, x.b_ + y.b_, join(x, y), 0); }
    friend Quad operator-(const Quad& x, const Quad& y) { return Quad(x.a_ - y.a_, x.b_ - y.b_, join(x, y), 0); }
    friend Quad operator*(const Quad& x, const Quad& y) {
        if (x.in_base() && y.in_base()) return Quad(x.a_ * y.a_, K(0), join(x, y), 0);
        if (y.in_base()) return Quad(x.a_ * y.a_, x.b_ * y.a_, join(x, y), 0);
        if (x.in_base()) return Quad(x.a_ * y.a_, x.a_ * y.b_, join(x, y), 0);
        DeltaPtr d = join(x, y);
        return Quad(x.a_ * y.a_ + *d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d, 0);
    }
    friend Quad operator/(const Quad& x, const Quad& y) {
        if (y.in_base()) {
            if (is_zero(y.a_)) throw Error(ErrorCode::DivisionByZero, "division by zero in quadratic extension");
            return Quad(x.a_ / y.a_, x.b_ / y.a_, join(x, y), 0);
        }
        DeltaPtr d = join(x, y);
        K norm = y.a_ * y.a_ - *d * y.b_ * y.b_;
        Quad conj(y.a_ / norm, -y.b_ / norm, d, 0);
        return x * conj;
    }
    Quad& operator+=(const Quad& o) { return *this = *this + o; }
    Quad& operator-=(const Quad& o) { return *this = *this - o; }
    Quad& operator*=(const Quad& o) { return *this = *this * o; }

    friend bool operator==(const Quad& x, const Quad& y) {
        if (!(x.a_ == y.a_) || !(x.b_ == y.b_)) return false;
        if (x.in_base()) return true;
        return x.delta_ == y.delta_ || *x.delta_ == *y.delta_;
    }

    Quad conjugate() const { return Quad(a_, -b_, delta_, 0); }
    K norm() const { return in_base() ? a_ * a_ : a_ * a_ - *delta_ * b_ * b_; }

    std::string to_string() const {
        using polypell::to_string;
        if (in_base()) return to_string(a_);
        std::string root = "sqrt(" + to_string(*delta_) + ")";
        std::string irr = b_ == K(1) ? root : (b_ == K(-1) ? "-" + root : coefficient_text(b_) + "*" + root);
        if (is_zero(a_)) return irr;
        return to_string(a_) + (irr[0] == '-' ? "" : "+") + irr;
    }

private:
    Quad(K a, K b, DeltaPtr delta, int) : a_(std::move(a)), b_(std::move(b)), delta_(std::move(delta)) {}

    static DeltaPtr join(const Quad& x, const Quad& y) {
        if (!x.delta_) return y.delta_;
        if (!y.delta_ || x.delta_ == y.delta_) return x.delta_;
        if (!(*x.delta_ == *y.delta_))
            throw Error(ErrorCode::NestedExtension, "mixing two quadratic extensions");
        return x.delta_;
    }

    K a_;
    K b_;
    DeltaPtr delta_;
};

template <class K>
bool is_zero(const Quad<K>& x) { return is_zero(x.rational_part()) && is_zero(x.irrational_part()); }

template <class K>
std::string to_string(const Quad<K>& x) { return x.to_string(); }

template <class K>
int canonical_sign(const Quad<K>& x) {
    if (!is_zero(x.rational_part())) return canonical_sign(x.rational_part());
    return canonical_sign(x.irrational_part());
}

template <class K>
std::size_t size_hint(const Quad<K>& x) { return size_hint(x.rational_part()) + size_hint(x.irrational_part()); }

/// Square root inside K(sqrt(delta)), canonical sign as decided by
/// canonical_sign; elements of K that are delta times a square of K map to
/// c*sqrt(delta) with c the canonical root in K.
template <class K>
std::optional<Quad<K>> sqrt_in_field(const Quad<K>& x) {
    const K& a = x.rational_part();
    const K& b = x.irrational_part();
    if (is_zero(b)) {
        if (auto r = sqrt_in_field(a)) return Quad<K>(*r);
        if (!x.delta() || is_zero(a)) return std::nullopt;
        if (auto c = sqrt_in_field(a / *x.delta())) return Quad<K>(K(0), *c, x.delta());
        return std::nullopt;
    }
    auto n = sqrt_in_field(x.norm());
    if (!n) return std::nullopt;
    for (const K& cand : {(a + *n) / K(2), (a - *n) / K(2)}) {
        auto u = sqrt_in_field(cand);
        if (!u || is_zero(*u)) continue;
        Quad<K> r(*u, b / (K(2) * *u), x.delta());
        if (canonical_sign(r) < 0) r = -r;
        if (r * r == x) return r;
    }
    return std::nullopt;
}

template <class K>
UniPoly<Quad<K>> embed_poly(const UniPoly<K>& p) {
    return p.template map<Quad<K>>([](const K& c) { return Quad<K>(c); });
}

/// Splits p = p1 + sqrt(delta) p2 into its two base-field components.
template <class K>
std::pair<UniPoly<K>, UniPoly<K>> split_components(const UniPoly<Quad<K>>& p) {
    return {p.template map<K>([](const Quad<K>& c) { return c.rational_part(); }),
            p.template map<K>([](const Quad<K>& c) { return c.irrational_part(); })};
}

/// Roots of p lying in the base field K (the only roots the curve code needs).
template <class K>
std::vector<Quad<K>> roots_in_field(const UniPoly<Quad<K>>& p) {
    auto [p1, p2] = split_components(p);
    UniPoly<K> g = p2.is_zero() ? p1 : (p1.is_zero() ? p2 : poly_gcd(p1, p2));
    std::vector<Quad<K>> out;
    if (g.is_zero()) return out;
    for (const K& r : roots_in_field(g)) out.emplace_back(r);
    return out;
}

}  // namespace polypell
