#include "polypell/rational.hpp"

#include "polypell/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace polypell {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::DivisionByZeroPoly: return "DivisionByZeroPoly";
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::OddDegree: return "OddDegree";
        case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
        case ErrorCode::LeadingCoefficientNotASquare: return "LeadingCoefficientNotASquare";
        case ErrorCode::NotSquarefree: return "NotSquarefree";
        case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
        case ErrorCode::ZeroFunction: return "ZeroFunction";
        case ErrorCode::UnsupportedSupport: return "UnsupportedSupport";
        case ErrorCode::InternalVerificationFailure: return "InternalVerificationFailure";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::NotASolution: return "NotASolution";
        case ErrorCode::TrivialSolution: return "TrivialSolution";
        case ErrorCode::NotARelation: return "NotARelation";
        case ErrorCode::ParityViolation: return "ParityViolation";
        case ErrorCode::NonSplitTarget: return "NonSplitTarget";
        case ErrorCode::NestedExtension: return "NestedExtension";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

BigRational::BigRational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

BigRational BigRational::parse(const std::string& text) {
    auto slash = text.find('/');
    auto parse_int = [&](const std::string& s) {
        if (s.empty()) throw Error(ErrorCode::ParseError, "empty integer in '" + text + "'");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
        return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
    };
    if (slash == std::string::npos) return BigRational(parse_int(text));
    return BigRational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

mpz_class BigRational::height() const {
    mpz_class a = abs(v_.get_num());
    mpz_class b = v_.get_den();
    return a > b ? a : b;
}

BigRational& BigRational::operator/=(const BigRational& o) {
    if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
    v_ /= o.v_;
    return *this;
}

std::optional<mpz_class> exact_sqrt(const mpz_class& n) {
    if (n < 0) return std::nullopt;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r != n) return std::nullopt;
    return r;
}

std::optional<BigRational> sqrt_in_field(const BigRational& x) {
    auto n = exact_sqrt(x.numerator());
    if (!n) return std::nullopt;
    auto d = exact_sqrt(x.denominator());
    if (!d) return std::nullopt;
    return BigRational(*n, *d);
}

std::size_t size_hint(const BigRational& x) {
    return mpz_sizeinbase(x.value().get_num_mpz_t(), 2) + mpz_sizeinbase(x.value().get_den_mpz_t(), 2);
}

std::vector<BigRational> rationals_of_height_up_to(long bound) {
    if (bound < 1) throw Error(ErrorCode::InvalidArgument, "height bound must be at least 1");
    std::vector<BigRational> out;
    for (long h = 1; h <= bound; ++h) {
        std::vector<BigRational> level;
        if (h == 1) level.emplace_back(0);
        // |a| = h with b <= h, or b = h with |a| < h
        for (long b = 1; b <= h; ++b)
            if (std::gcd(h, b) == 1)
                for (long a : {h, -h}) level.emplace_back(mpz_class(a), mpz_class(b));
        for (long a = -(h - 1); a <= h - 1; ++a)
            if (a != 0 && std::gcd(a, h) == 1) level.emplace_back(mpz_class(a), mpz_class(h));
        std::sort(level.begin(), level.end(), [](const BigRational& x, const BigRational& y) {
            if (x.numerator() != y.numerator()) return x.numerator() < y.numerator();
            return x.denominator() < y.denominator();
        });
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

}  // namespace polypell
