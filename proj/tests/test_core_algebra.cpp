#include "doctest.h"
#include "test_util.hpp"

#include "polypell/laurent.hpp"
#include "polypell/quad.hpp"
#include "polypell/ratfunc.hpp"

using namespace polypell;
using namespace polypell::testing;

TEST_CASE("polyDivMod examples") {
    auto [q1, r1] = poly_divmod(qpoly({-1, 0, 1}), qpoly({-1, 1}));
    CHECK(q1 == qpoly({1, 1}));
    CHECK(r1.is_zero());

    auto [q2, r2] = poly_divmod(QP::x(), qpoly({0, 0, 1}));
    CHECK(q2.is_zero());
    CHECK(r2 == QP::x());

    // (X^6+X) / (2X^2): long division by hand gives 1/2 X^4, remainder X
    QP a = qpoly({0, 1, 0, 0, 0, 0, 1});
    QP b = qpoly({0, 0, 2});
    auto [q3, r3] = poly_divmod(a, b);
    CHECK(q3 == QP::monomial(Q(1) / Q(2), 4));
    CHECK(r3 == QP::x());
    CHECK(q3 * b + r3 == a);

    CHECK_THROWS_AS(poly_divmod(a, QP()), Error);
}

TEST_CASE("polyDivMod reconstruction on random inputs") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        QP a = random_poly(rng, static_cast<int>(rng() % 9), false);
        QP b = random_poly(rng, static_cast<int>(rng() % 5), false);
        auto [q, r] = poly_divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("polyGcd examples and properties") {
    QP xm1 = qpoly({-1, 1});
    CHECK(poly_gcd(xm1 * xm1, xm1 * qpoly({1, 1})) == xm1);
    CHECK(poly_gcd(qpoly({0, 1, 0, 0, 0, 0, 1}), qpoly({1, 0, 0, 0, 0, 6})) == qpoly({1}));
    CHECK(poly_gcd(QP(), qpoly({0, 2})) == QP::x());
    CHECK_THROWS_AS(poly_gcd(QP(), QP()), Error);

    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        QP common = random_poly(rng, static_cast<int>(rng() % 3), true);
        QP a = common * random_poly(rng, static_cast<int>(rng() % 4), false);
        QP b = common * random_poly(rng, static_cast<int>(rng() % 4), false);
        QP g = poly_gcd(a, b);
        CHECK(g.lc() == Q(1));
        CHECK((a % g).is_zero());
        CHECK((b % g).is_zero());
        CHECK(g.degree() >= common.degree());
    }
}

TEST_CASE("isSquarefree") {
    CHECK(is_squarefree(qpoly({-1, 0, 1})));
    QP xm1 = qpoly({-1, 1});
    CHECK_FALSE(is_squarefree(xm1 * xm1 * qpoly({2, 1})));
    CHECK_THROWS_AS(is_squarefree(QP()), Error);

    // (X - t)(X^7 - X^3 - 1) over Q(t): the resultant of D and D' is a nonzero
    // element of Q(t), which certifies squarefreeness independently of the gcd.
    using RP = UniPoly<RatFunc>;
    RP g = lift_to_ratfunc(qpoly({-1, 0, 0, -1, 0, 0, 0, 1}));
    RP d = RP({-RatFunc::t(), RatFunc(1)}) * g;
    CHECK(is_squarefree(d));
    CHECK_FALSE(is_zero(resultant(d, d.derivative())));
    CHECK_FALSE(is_squarefree(d * RP({-RatFunc::t(), RatFunc(1)})));
}

TEST_CASE("sqrtSeries examples") {
    auto s1 = sqrt_series(qpoly({0, 0, 1}), -5);
    CHECK(s1.polynomial_part() == QP::x());
    CHECK(is_zero(s1.coeff(-1)));
    CHECK(is_zero(s1.coeff(-5)));

    auto s2 = sqrt_series(qpoly({1, 2, 1}), -5);
    CHECK(s2.polynomial_part() == qpoly({1, 1}));
    CHECK(is_zero(s2.coeff(-3)));

    // X^3 sqrt(1 + X^-5) = X^3 + 1/2 X^-2 - 1/8 X^-7 + 1/16 X^-12 - ...
    auto s3 = sqrt_series(qpoly({0, 1, 0, 0, 0, 0, 1}), -12);
    CHECK(s3.top_degree() == 3);
    CHECK(s3.coeff(3) == Q(1));
    CHECK(s3.coeff(-2) == Q(1) / Q(2));
    CHECK(s3.coeff(-7) == Q(-1) / Q(8));
    CHECK(s3.coeff(-12) == Q(1) / Q(16));
    CHECK(is_zero(s3.coeff(0)));
    CHECK(s3.polynomial_part() == QP::monomial(Q(1), 3));

    CHECK_THROWS_AS(sqrt_series(qpoly({0, 1, 0, 1}), -3), Error);
    CHECK_THROWS_AS(sqrt_series(qpoly({1, 0, 2}), -3), Error);
}

TEST_CASE("sqrtSeries squared agrees with D on retained exponents") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 200; ++i) {
        int deg = 4 + 2 * static_cast<int>(rng() % 3);
        QP d = random_poly(rng, deg, true);
        const int low = -10;
        auto s = sqrt_series(d, low);
        auto sq = s * s;
        // s is exact down to `low`; s*s is then exact down to low + deg/2
        CHECK(sq.precision() == low + deg / 2);
        for (int k = deg; k >= sq.precision(); --k) CHECK(sq.coeff(k) == d.coeff(k));
    }
}

TEST_CASE("polynomialPart") {
    LaurentSeries<Q> s(3, {Q(1), Q(0), Q(0), Q(0), Q(0), Q(1) / Q(2)}, -4);
    CHECK(s.polynomial_part() == QP::monomial(Q(1), 3));
    LaurentSeries<Q> inv(-1, {Q(1)}, -3);
    CHECK(inv.polynomial_part().is_zero());
}

TEST_CASE("Laurent inverse property") {
    std::mt19937 rng(99);
    for (int i = 0; i < 100; ++i) {
        QP p = random_poly(rng, 1 + static_cast<int>(rng() % 5), false);
        auto s = LaurentSeries<Q>::from_poly(p).truncate(-15);
        auto one = s * s.inverse();
        CHECK(one.coeff(0) == Q(1));
        for (int k = -1; k >= one.precision(); --k) CHECK(is_zero(one.coeff(k)));
    }
}

TEST_CASE("squareRootInField") {
    CHECK(*sqrt_in_field(Q(4)) == Q(2));
    CHECK_FALSE(sqrt_in_field(Q(2)).has_value());
    CHECK(*sqrt_in_field(Q(9) / Q(4)) == Q(3) / Q(2));
    RatFunc t = RatFunc::t();
    CHECK(*sqrt_in_field(t * t) == t);
    CHECK_FALSE(sqrt_in_field(t).has_value());
    RatFunc sq = (t + RatFunc(1)) * (t + RatFunc(1)) / (RatFunc(4) * t * t);
    CHECK(*sqrt_in_field(sq) == (t + RatFunc(1)) / (RatFunc(2) * t));
}

TEST_CASE("rational functions stay reduced with monic denominators") {
    RatFunc t = RatFunc::t();
    RatFunc a = (t * t - RatFunc(1)) / (RatFunc(2) * t - RatFunc(2));
    CHECK(a == (t + RatFunc(1)) / RatFunc(2));
    CHECK(a.denominator() == qpoly({1}));
    RatFunc b = RatFunc(1) / (RatFunc(3) * t);
    CHECK(b.denominator() == QP::x());
    CHECK(b.numerator() == QP::constant(Q(1) / Q(3)));
    CHECK((b * RatFunc(3) * t) == RatFunc(1));
}

TEST_CASE("quadratic extension norm identity") {
    auto delta = std::make_shared<const Q>(2);
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        Q a = small_rational(rng), b = small_rational(rng);
        Quad<Q> x(a, b, delta);
        Quad<Q> y(a, -b, delta);
        CHECK(x * y == Quad<Q>(a * a - Q(2) * b * b));
        if (!is_zero(x)) CHECK(x / x == Quad<Q>(1));
    }
    Quad<Q> r = Quad<Q>::root(delta);
    REQUIRE(sqrt_in_field(Quad<Q>(Q(8), Q(0), delta)).has_value());
    CHECK(*sqrt_in_field(Quad<Q>(Q(8), Q(0), delta)) == Quad<Q>(Q(0), Q(2), delta));
    CHECK_FALSE(sqrt_in_field(Quad<Q>(8)).has_value());
    CHECK(*sqrt_in_field(r * r) == r);
    Quad<Q> u(Q(3), Q(2), delta);  // (1 + sqrt 2)^2
    CHECK(*sqrt_in_field(u) == Quad<Q>(Q(1), Q(1), delta));
    CHECK_FALSE(sqrt_in_field(Quad<Q>(Q(3), Q(0), delta)).has_value());
    auto other = std::make_shared<const Q>(3);
    CHECK_THROWS_AS(r * Quad<Q>::root(other), Error);
}

TEST_CASE("rational roots") {
    auto roots = roots_in_field(qpoly({0, 1, 0, 0, 0, 0, 1}));
    CHECK(roots == std::vector<Q>{Q(-1), Q(0)});
    QP f = QP({Q(1), Q(4)}) * qpoly({-2, 3});  // (4X+1)(3X-2)
    CHECK(roots_in_field(f) == std::vector<Q>{Q(-1) / Q(4), Q(2) / Q(3)});
    CHECK(roots_in_field(qpoly({-2, 0, 1})).empty());
}

TEST_CASE("canonical printing") {
    QP p = QP({Q(1), Q(0), Q(-3) / Q(2), Q(0), Q(1)});
    CHECK(p.to_string() == "X^4-3/2*X^2+1");
    using RP = UniPoly<RatFunc>;
    RP d = RP({RatFunc::t(), RatFunc(1), RatFunc(0), RatFunc(0), RatFunc(0), RatFunc(0), RatFunc(1)});
    CHECK(d.to_string() == "X^6+X+t");
    RP e = RP({RatFunc(0), RatFunc::t() + RatFunc(1), RatFunc(1)});
    CHECK(e.to_string() == "X^2+(t+1)*X");
}

TEST_CASE("gcd over Q agrees with the Euclidean algorithm") {
    std::mt19937 rng(5);
    for (int i = 0; i < 150; ++i) {
        QP common = random_poly(rng, static_cast<int>(rng() % 4), false, 9);
        QP a = common * random_poly(rng, static_cast<int>(rng() % 6), false, 9);
        QP b = common * random_poly(rng, static_cast<int>(rng() % 6), false, 9);
        CHECK(poly_gcd(a, b) == poly_gcd<BigRational>(a, b));
    }
    // large coefficients push the evaluation point up
    QP big = qpoly({1, 1}) * QP::constant(Q(mpz_class("123456789012345678901234567890")));
    QP c = big * qpoly({3, 0, 1});
    CHECK(poly_gcd(c, big * qpoly({-5, 2})) == qpoly({1, 1}));
}
