#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace polypell {

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator (GMP canonicalizes after every operation).
class BigRational {
public:
    BigRational() = default;
    BigRational(long v) : v_(v) {}
    BigRational(int v) : v_(v) {}
    BigRational(const mpz_class& num) : v_(num) {}
    BigRational(const mpz_class& num, const mpz_class& den);
    explicit BigRational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    /// Parses "a", "-a" or "a/b".
    static BigRational parse(const std::string& text);

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    const mpq_class& value() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    /// max(|a|, |b|) for a/b in lowest terms.
    mpz_class height() const;

    BigRational operator-() const { return BigRational(mpq_class(-v_)); }
    BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
    BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
    BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
    BigRational& operator/=(const BigRational& o);

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string to_string() const { return v_.get_str(); }

private:
    mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.to_string(); }

/// All a/b in lowest terms with max(|a|, |b|) <= bound, ordered by
/// (height, numerator, denominator).
std::vector<BigRational> rationals_of_height_up_to(long bound);

/// Exact integer square root, if any.
std::optional<mpz_class> exact_sqrt(const mpz_class& n);

// Field interface used by the generic polynomial/series/linear-algebra code.
inline bool is_zero(const BigRational& x) { return x.is_zero(); }
inline std::string to_string(const BigRational& x) { return x.to_string(); }
/// Canonical square root: the nonnegative one.
std::optional<BigRational> sqrt_in_field(const BigRational& x);
/// Sign used to pick canonical representatives (e.g. positive leading terms).
inline int canonical_sign(const BigRational& x) { return x.sign(); }
/// Rough bit size, used to choose small pivots.
std::size_t size_hint(const BigRational& x);

}  // namespace polypell
