#include "doctest.h"

#include "polypell/jacobian.hpp"
#include "test_util.hpp"

using namespace polypell;
using namespace polypell::testing;

namespace {

using QQ = Quad<BigRational>;
using Fn = std::pair<QP, QP>;

Divisor<Q> inf_difference() {
    Divisor<Q> d;
    d.add(CurvePoint<Q>::inf_plus(), 1);
    d.add(CurvePoint<Q>::inf_minus(), -1);
    return d;
}

template <class F>
bool proportional(const UniPoly<F>& a, const UniPoly<F>& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a * b.lc() == b * a.lc();
}

/// D = V^2 + c U W with U split over Q, so V + Y has rational zeros.
struct SplitCurve {
    HyperCurve<Q> curve;
    QP v;
    std::vector<Q> roots;  // of D, rational ones
};

SplitCurve split_curve(std::mt19937& rng, int half) {
    std::uniform_int_distribution<int> pick(-3, 3);
    for (;;) {
        QP v = random_int_poly(rng, half, 2);
        const int du = 2 * half - 1;
        QP u = QP::constant(Q(1));
        for (int i = 0; i < du; ++i) u = u * QP::linear(Q(pick(rng)));
        int c = pick(rng);
        if (c == 0) c = -1;
        QP d = v * v + Q(c) * u;
        if (d.degree() != 2 * half || !is_squarefree(d)) continue;
        return {HyperCurve<Q>(d), v, roots_in_field(d)};
    }
}

/// Function with every zero and pole above rational x: a product of V +- Y,
/// lines, Y when D splits, over a power of a line.
std::pair<Fn, std::vector<std::pair<Q, int>>> split_function(std::mt19937& rng, const SplitCurve& sc) {
    std::uniform_int_distribution<int> e(0, 2), x(-4, 4), coin(0, 1);
    const QP& d = sc.curve.D();
    Fn f{QP::constant(Q(1)), QP()};
    for (int k = e(rng); k > 0; --k) f = multiply_functions(d, f, {sc.v, QP::constant(Q(coin(rng) ? 1 : -1))});
    for (int k = e(rng); k > 0; --k) f = multiply_functions(d, f, {QP::linear(Q(x(rng))), QP()});
    if (static_cast<int>(sc.roots.size()) == d.degree() && coin(rng)) f = multiply_functions(d, f, {QP(), QP::constant(Q(1))});
    std::vector<std::pair<Q, int>> den;
    if (coin(rng)) den.emplace_back(Q(x(rng)), 1 + coin(rng));
    return {f, den};
}

}  // namespace

TEST_CASE("kernel by elimination") {
    detail::Matrix<Q> m{{Q(1), Q(2), Q(3)}, {Q(2), Q(4), Q(6)}};
    auto k = detail::kernel(m, 3);
    CHECK(k.size() == 2);
    for (const auto& v : k) CHECK(v[0] + Q(2) * v[1] + Q(3) * v[2] == Q(0));
    CHECK(detail::kernel(detail::Matrix<Q>{{Q(1), Q(0)}, {Q(0), Q(1)}}, 2).empty());
}

TEST_CASE("Hermite normal form") {
    CHECK(hermite_normal_form({{10}, {15}}, 1) == std::vector<std::vector<long>>{{5}});
    CHECK(hermite_normal_form({{2, 4}, {3, 6}}, 2) == std::vector<std::vector<long>>{{1, 2}});
    CHECK(hermite_normal_form({{2, 1}, {0, 3}}, 2) == std::vector<std::vector<long>>{{2, 1}, {0, 3}});
    CHECK(hermite_normal_form({{2, 5}, {0, 3}}, 2) == std::vector<std::vector<long>>{{2, 2}, {0, 3}});
    CHECK(hermite_normal_form({{-4, 0}, {0, 0}}, 2) == std::vector<std::vector<long>>{{4, 0}});
    CHECK(hermite_normal_form({}, 3).empty());
}

TEST_CASE("principal divisors of lines") {
    HyperCurve<Q> c(P("X^6+X"));
    for (long a : {0L, -1L, 2L}) {
        auto cert = is_principal(c, divisor_of_line(c, Q(a)));
        REQUIRE(cert);
        CHECK(proportional(cert->R, QP::linear(Q(a))));
        CHECK(cert->S.is_zero());
        CHECK(cert->denominator.empty());
    }
    // symmetric pair with y outside Q
    auto cert = is_principal(c, divisor_of_line(c, Q(1)));
    REQUIRE(cert);
    CHECK(proportional(cert->R, P("X-1")));
}

TEST_CASE("infinity difference on X^6+X") {
    HyperCurve<Q> c(P("X^6+X"));
    const Divisor<Q> q = inf_difference();
    for (int k = 1; k <= 4; ++k) CHECK_FALSE(is_principal(c, q.scaled(k)));
    auto cert = is_principal(c, q.scaled(5));
    REQUIRE(cert);
    CHECK(cert->R == P("2*X^5+1"));
    CHECK(cert->S == P("2*X^2"));
    auto conj = is_principal(c, q.scaled(-5));
    REQUIRE(conj);
    CHECK(conj->S == P("-2*X^2"));

    auto rep = order_of_class(c, q, 12);
    REQUIRE(rep.order);
    CHECK(*rep.order == 5);
    CHECK(*order_of_class(c, Divisor<Q>(), 3).order == 1);
    Divisor<Q> odd = divisor_of_line(c, Q(2));
    odd.add(CurvePoint<Q>::inf_plus(), 1);
    CHECK_THROWS_AS(is_principal(c, odd), Error);
}

TEST_CASE("Weierstrass points and denominators") {
    HyperCurve<Q> c(P("X*(X-1)*(X+1)*(X-2)*(X+2)*(X-3)"));
    auto w0 = points_above(c, Q(0))[0], w1 = points_above(c, Q(1))[0], w2 = points_above(c, Q(2))[0];
    Divisor<Q> d;
    d.add(w0, 2);
    d.add(w1, -2);
    auto cert = is_principal(c, d);
    REQUIRE(cert);
    CHECK(cert->denominator == std::vector<std::pair<Q, int>>{{Q(1), 1}});
    CHECK(proportional(cert->R, P("X")));
    // w0 + w1 - inf+ - inf- has order 2
    Divisor<Q> e;
    e.add(w0, 1);
    e.add(w1, 1);
    e.add(CurvePoint<Q>::inf_plus(), -1);
    e.add(CurvePoint<Q>::inf_minus(), -1);
    CHECK_FALSE(is_principal(c, e));
    CHECK(*order_of_class(c, e, 4).order == 2);
    // div Y = sum of the six Weierstrass points - 3 inf+ - 3 inf-
    Divisor<Q> y = divisor_of_function(c, QP(), QP::constant(Q(1)));
    auto cy = is_principal(c, y);
    REQUIRE(cy);
    CHECK(cy->R.is_zero());
    CHECK(cy->S == QP::constant(Q(1)));
    Divisor<Q> f;
    f.add(w2, 1);
    f.add(w1, -1);
    CHECK(*order_of_class(c, f, 4).order == 2);
}

TEST_CASE("relation lattices") {
    HyperCurve<Q> c(P("X^6+X"));
    auto zero = relation_lattice(c, {Divisor<Q>()}, {3});
    CHECK(zero.generators == std::vector<std::vector<long>>{{1}});
    auto five = relation_lattice(c, {inf_difference()}, {6});
    CHECK(five.generators == std::vector<std::vector<long>>{{5}});
    CHECK(five.tested == 6);

    HyperCurve<Q> c1(P("X^6+X+1"));
    auto none = relation_lattice(c1, {inf_difference()}, {10});
    CHECK(none.generators.empty());

    // two classes: Q and 2Q - the relations are spanned by (2, -1) and (5, 0)
    auto two = relation_lattice(c, {inf_difference(), inf_difference().scaled(2)}, {5, 5});
    CHECK(two.generators == std::vector<std::vector<long>>{{1, 2}, {0, 5}});
    auto first = relation_lattice(c, {inf_difference(), inf_difference().scaled(2)}, {5, 5}, kDefaultBoxCap, true);
    CHECK(first.relations.size() == 1);

    CHECK_THROWS_AS(relation_lattice(c, {inf_difference(), inf_difference(), inf_difference()}, {40, 40, 40}), Error);
}

TEST_CASE("order over Q(t)") {
    HyperCurve<RatFunc> c(PT("X^6+X+t"));
    Divisor<RatFunc> q;
    q.add(CurvePoint<RatFunc>::inf_plus(), 1);
    q.add(CurvePoint<RatFunc>::inf_minus(), -1);
    auto rep = order_of_class(c, q, 10);
    CHECK_FALSE(rep.order);
    CHECK(rep.max_order == 10);
    // X^2 - Y has norm -t, a unit, on Y^2 = X^4 + t
    HyperCurve<RatFunc> c4(PT("X^4+t"));
    Divisor<RatFunc> q4;
    q4.add(CurvePoint<RatFunc>::inf_plus(), 1);
    q4.add(CurvePoint<RatFunc>::inf_minus(), -1);
    auto r4 = order_of_class(c4, q4, 6);
    REQUIRE(r4.order);
    CHECK(*r4.order == 2);
}

TEST_CASE("promotion to a quadratic extension") {
    // D = 2 X^4 - (X-1)(X-2)(X+1)(X-3): sqrt(2) X^2 + Y vanishes at four points
    // whose y lies in Q(sqrt 2)
    HyperCurve<Q> c(P("2*X^4-(X-1)*(X-2)*(X+1)*(X-3)"));
    Divisor<Q> d;
    for (long x : {1L, 2L, -1L, 3L}) d.add(points_above(c, Q(x))[1], 1);
    d.add(CurvePoint<Q>::inf_plus(), -2);
    d.add(CurvePoint<Q>::inf_minus(), -2);
    CHECK_THROWS_AS(is_principal(c, d), Error);
    auto delta = extension_needed<Q>({d});
    REQUIRE(delta);
    CHECK(*delta == Q(2));
    auto pr = promote(c, {d}, *delta);
    auto cert = is_principal(pr.curve, pr.divisors[0]);
    REQUIRE(cert);
    CHECK(cert->R == embed_poly<Q>(P("X^2")));
    auto r2 = std::make_shared<const Q>(2);
    CHECK(cert->S == UniPoly<QQ>::constant(QQ(Q(0), Q(1, 2), r2)));
    CHECK_FALSE(extension_needed<Q>({divisor_of_line(c, Q(1))}));
}

TEST_CASE("round trip on functions with split divisors") {
    std::mt19937 rng(424242);
    int nonzero = 0;
    for (int trial = 0; trial < 200; ++trial) {
        SplitCurve sc = split_curve(rng, 2 + trial % 3);
        auto [f, den] = split_function(rng, sc);
        Divisor<Q> d = divisor_of_function(sc.curve, f.first, f.second, den);
        REQUIRE_FALSE(d.has_residual());
        auto cert = is_principal(sc.curve, d);
        REQUIRE(cert);
        CHECK(cert->divisor == d);
        if (!d.is_zero()) ++nonzero;
        // linearity
        auto [g, den2] = split_function(rng, sc);
        Divisor<Q> e = divisor_of_function(sc.curve, g.first, g.second, den2);
        CHECK(is_principal(sc.curve, d + e));
    }
    CHECK(nonzero > 150);
}

TEST_CASE("order search is consistent") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 12; ++trial) {
        SplitCurve sc = split_curve(rng, 2 + trial % 2);
        auto pts = points_above(sc.curve, Q(std::uniform_int_distribution<int>(-3, 3)(rng)));
        Divisor<Q> d;
        d.add(pts[0], 1);
        d.add(CurvePoint<Q>::inf_minus(), -1);
        if (!pts[0].is_rational()) continue;
        auto rep = order_of_class(sc.curve, d, 6);
        if (!rep.order) continue;
        for (int j = 1; j < *rep.order; ++j) CHECK_FALSE(is_principal(sc.curve, d.scaled(j)));
        CHECK(is_principal(sc.curve, d.scaled(*rep.order)));
    }
}
