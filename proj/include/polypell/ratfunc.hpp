#pragma once

#include "polypell/poly.hpp"
#include "polypell/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polypell {

using QPoly = UniPoly<BigRational>;

/// Element of Q(t): numerator / denominator with gcd 1 and a monic denominator.
class RatFunc {
public:
    RatFunc() : den_(QPoly::constant(1)) {}
    RatFunc(int c) : num_(QPoly::constant(c)), den_(QPoly::constant(1)) {}
    RatFunc(const BigRational& c) : num_(QPoly::constant(c)), den_(QPoly::constant(1)) {}
    explicit RatFunc(QPoly num) : num_(std::move(num)), den_(QPoly::constant(1)) {}
    RatFunc(QPoly num, QPoly den);

    static RatFunc t() { return RatFunc(QPoly::x()); }

    const QPoly& numerator() const { return num_; }
    const QPoly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    /// Constant in t.
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    BigRational constant_value() const;

    /// Value at t = t0, or nullopt when the denominator vanishes there.
    std::optional<BigRational> evaluate(const BigRational& t0) const;

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    std::string to_string() const;

private:
    void normalize();

    QPoly num_;
    QPoly den_;
};

inline bool is_zero(const RatFunc& x) { return x.is_zero(); }
inline std::string to_string(const RatFunc& x) { return x.to_string(); }
std::optional<RatFunc> sqrt_in_field(const RatFunc& x);
/// Sign of the leading rational coefficient of the numerator.
int canonical_sign(const RatFunc& x);
std::size_t size_hint(const RatFunc& x);

/// Distinct roots in Q of p, found by the rational root theorem.
std::vector<BigRational> roots_in_field(const UniPoly<BigRational>& p);
/// Distinct roots of p lying in Q (constants of Q(t)). Roots depending on t are not
/// searched for; callers that know such roots pass them explicitly.
std::vector<RatFunc> roots_in_field(const UniPoly<RatFunc>& p);

/// Substitute t = t0 into every coefficient; nullopt if a denominator vanishes.
std::optional<UniPoly<BigRational>> specialize_poly(const UniPoly<RatFunc>& p, const BigRational& t0);

inline UniPoly<RatFunc> lift_to_ratfunc(const UniPoly<BigRational>& p) {
    return p.map<RatFunc>([](const BigRational& c) { return RatFunc(c); });
}

/// Degree in t of a polynomial in X over Q(t) whose coefficients are polynomials in t.
int t_degree(const UniPoly<RatFunc>& p);

}  // namespace polypell
