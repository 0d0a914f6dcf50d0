#include "doctest.h"
#include "test_util.hpp"

#include "polypell/cfrac.hpp"

using namespace polypell;
using namespace polypell::testing;

using RP = UniPoly<RatFunc>;

TEST_CASE("expand: X^2-1 has period one") {
    auto e = expand(P("X^2-1"), 3);
    REQUIRE(e.steps.size() == 3);
    CHECK(e.steps[0].a == P("X"));
    CHECK(e.steps[1].Q.degree() == 0);
    CHECK(e.steps[0].norm == P("1"));
}

TEST_CASE("expand: X^6+X reaches a constant complete quotient") {
    auto e = expand(P("X^6+X"), 10);
    CHECK(e.steps[0].a == P("X^3"));
    CHECK(e.half_degree == 3);
    bool found = false;
    for (std::size_t n = 1; n < e.steps.size(); ++n) found = found || e.steps[n].Q.degree() == 0;
    CHECK(found);
    // hand recursion: P1 = X^3, Q1 = X, a1 = 2X^2, Q2 = 1
    CHECK(e.steps[1].Q == P("X"));
    CHECK(e.steps[1].a == P("2*X^2"));
    CHECK(e.steps[2].Q == P("1"));
}

TEST_CASE("expand over Q(t): X^6+X+t never reaches a constant Q in 12 steps") {
    auto e = expand(PT("X^6+X+t"), 12);
    for (std::size_t n = 1; n < e.steps.size(); ++n) CHECK(e.steps[n].Q.degree() > 0);
}

TEST_CASE("expand rejects bad radicands") {
    CHECK_THROWS_WITH_AS(expand(P("(X-1)^2*(X+2)*X"), 3), doctest::Contains("squarefree"), Error);
    CHECK_THROWS_AS(expand(P("X^5+1"), 3), Error);
    CHECK_THROWS_AS(expand(P("2*X^4+1"), 3), Error);
    try {
        expand(P("2*X^4+1"), 3);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LeadingCoefficientNotASquare);
    }
    try {
        expand(P("X^3+1"), 3);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OddDegree);
    }
}

TEST_CASE("solvePell examples") {
    auto r1 = solve_pell(P("X^2-1"), 5);
    REQUIRE(r1.pellian());
    CHECK(r1.solution->A == P("X"));
    CHECK(r1.solution->B == P("1"));

    auto r2 = solve_pell(P("X^6+X"), 10);
    REQUIRE(r2.pellian());
    CHECK(r2.solution->A == P("2*X^5+1"));
    CHECK(r2.solution->B == P("2*X^2"));
    CHECK(r2.solution->step <= 10);

    // period constant -2 is not a square: the squared unit is returned
    auto r3 = solve_pell(P("X^2+2"), 5);
    REQUIRE(r3.pellian());
    CHECK(r3.solution->A == P("X^2+1"));
    CHECK(r3.solution->B == P("X"));

    auto r4 = solve_pell(PT("X^6+X+t"), 12);
    CHECK_FALSE(r4.pellian());
    CHECK(r4.max_steps == 12);
}

TEST_CASE("solveAlmostPell examples") {
    const QP d = P("X*(X^7-X^3-1)");
    auto r = solve_almost_pell(d, P("4*X+1"), 12);
    REQUIRE(r.status == AlmostPellStatus::Exact);
    // the printed (2X^4+1, 2) does not satisfy the identity; the sign of 1 is flipped
    CHECK(r.A == P("2*X^4-1"));
    CHECK(r.B == P("2"));
    CHECK(r.A * r.A - d * r.B * r.B == P("4*X+1"));
    CHECK((P("2*X^4+1").pow(2) - d * P("4")) == P("8*X^4+4*X+1"));

    // X^4+X: (X^2)^2 - D = -X, so F = -2X is reached only up to the constant 1/2
    auto u = solve_almost_pell(P("X^4+X"), P("-2*X"), 8);
    REQUIRE(u.status == AlmostPellStatus::UpToConstant);
    CHECK(u.c == Q(1, 2));
    CHECK(u.A * u.A - P("X^4+X") * u.B * u.B == u.c * P("-2*X"));

    try {
        solve_almost_pell(P("X^2-1"), P("1"), 4);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegreeTooSmall);
    }
    try {
        solve_almost_pell(PT("X^6+X+t"), PT("-X^6-X"), 4);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegreeTooLarge);
    }
    CHECK_THROWS_AS(solve_almost_pell(P("X^4+X"), QP(), 4), Error);
}

TEST_CASE("solveAlmostPell finds non-coprime solutions") {
    // (X^4)^2 - (X^8+X) = -X; scaling the pair by X+1 solves F = -X (X+1)^2
    auto r = solve_almost_pell(P("X^8+X"), P("-X*(X+1)^2"), 6);
    REQUIRE(r.status == AlmostPellStatus::Exact);
    CHECK(r.A == P("X^5+X^4"));
    CHECK(r.B == P("X+1"));
}

TEST_CASE("solveAlmostPell over Q(t): the generic family has no solving convergent") {
    auto r = solve_almost_pell(PT("(X-t)*(X^7-X^3-1)"), PT("4*X+1"), 12);
    CHECK(r.status == AlmostPellStatus::NotWithin);
}

TEST_CASE("specialization screening over Q(t)") {
    auto pell = solve_pell(PT("X^6+X+t"), 12);
    CHECK_FALSE(pell.pellian());
    CHECK_FALSE(pell.screened_at.empty());
    auto almost = solve_almost_pell(PT("(X-t)*(X^7-X^3-1)"), PT("4*X+1"), 12);
    CHECK(almost.status == AlmostPellStatus::NotWithin);
    CHECK_FALSE(almost.screened_at.empty());
    // t0 = 0 is the special fibre and must not be the certificate on its own
    CHECK(almost.screened_at != std::vector<BigRational>{Q(0)});

    // generically Pellian: screening cannot certify, the exact recursion finds the unit
    CHECK_FALSE(screen_by_specialization(PT("X^4+t"), 4, 0));
    auto unit = solve_pell(PT("X^4+t"), 4);
    REQUIRE(unit.pellian());
    const RP tinv = RP::constant(RatFunc(QPoly::constant(1), QPoly::x()));
    CHECK(unit.solution->A == PT("2*X^4") * tinv + PT("1"));
    CHECK(unit.solution->B == PT("2*X^2") * tinv);
}

TEST_CASE("coefficient budget stops runaway expansions") {
    try {
        expand(PT("(X-t)*(X^7-X^3-1)"), 12, 20000);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BudgetExceeded);
    }
}

TEST_CASE("proveNotIdenticallySolvable") {
    auto a = prove_not_identically_solvable(PT("(X-t)*(X^7-X^3-1)"), P("4*X+1"));
    CHECK(a.verdict == NonSolvability::Proven);
    auto b = prove_not_identically_solvable(PT("X^6+X+t"), P("1"));
    CHECK(b.verdict == NonSolvability::Proven);
    auto c = prove_not_identically_solvable(PT("X^4+t^2*X+1"), P("1"));
    CHECK(c.verdict == NonSolvability::Inconclusive);

    // clearing 1/t gives t^2 X^6 + t^2 X + t, of even t-degree
    RP d = PT("X^6+X") + RP::constant(RatFunc(QPoly::constant(1), QPoly::x()));
    CHECK(prove_not_identically_solvable(d, P("1")).verdict == NonSolvability::Inconclusive);
    // deg F > d-1 and t-independent D fall outside the criterion
    CHECK(prove_not_identically_solvable(PT("X^6+X+t"), P("X^3")).verdict == NonSolvability::Inconclusive);
    CHECK(prove_not_identically_solvable(PT("X^6+X+1"), P("1")).verdict == NonSolvability::Inconclusive);
    // odd t-degree but D(0, X) = X^4 is a square
    CHECK(prove_not_identically_solvable(PT("X^4+t*X+t"), P("1")).verdict == NonSolvability::Inconclusive);
}

namespace {

QP random_radicand(std::mt19937& rng, int degree) {
    while (true) {
        QP d = random_int_poly(rng, degree, 3);
        if (is_squarefree(d)) return d;
    }
}

}  // namespace

TEST_CASE("expansion invariants on random radicands") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 60; ++i) {
        const int degree = 4 + 2 * static_cast<int>(rng() % 3);
        QP d = random_radicand(rng, degree);
        const int half = degree / 2;
        auto e = expand(d, 8);
        QP p_prev = P("1"), q_prev;
        for (std::size_t n = 0; n < e.steps.size(); ++n) {
            const auto& s = e.steps[n];
            CHECK((d - s.P * s.P) % s.Q == QP());
            if (n >= 1) CHECK(s.a.degree() >= 1);
            QP det = s.p * q_prev - p_prev * s.q;
            CHECK(det.degree() == 0);
            CHECK((det.lc() == Q(1) || det.lc() == Q(-1)));
            QP norm = s.p * s.p - d * s.q * s.q;
            CHECK(norm == s.norm);
            CHECK(norm.degree() <= half - 1);
            p_prev = s.p;
            q_prev = s.q;
        }
    }
}

TEST_CASE("witnesses always satisfy their identity") {
    std::mt19937 rng(99);
    int solved = 0;
    for (int i = 0; i < 80; ++i) {
        const int degree = 4 + 2 * static_cast<int>(rng() % 2);
        // D = A^2 - F guarantees the convergent A/1
        QP a = random_int_poly(rng, degree / 2, 2);
        QP f = random_poly(rng, static_cast<int>(rng() % (degree / 2)), false, 2);
        QP d = a * a - f;
        if (!is_squarefree(d)) continue;
        auto r = solve_almost_pell(d, f, 16);
        REQUIRE(r.status != AlmostPellStatus::NotWithin);
        CHECK(r.A * r.A - d * r.B * r.B == r.c * f);
        if (r.status == AlmostPellStatus::Exact) CHECK(r.c == Q(1));
        ++solved;
        auto pell = solve_pell(d, 16);
        if (pell.pellian()) CHECK(pell.solution->A * pell.solution->A - d * pell.solution->B * pell.solution->B == P("1"));
    }
    CHECK(solved > 40);
}
