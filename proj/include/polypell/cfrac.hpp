#pragma once

#include "polypell/errors.hpp"
#include "polypell/laurent.hpp"
#include "polypell/poly.hpp"
#include "polypell/ratfunc.hpp"

#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace polypell {

/// Gate shared by the engines: D nonzero, even degree >= min_degree, square
/// leading coefficient, squarefree.
template <class F>
void check_radicand(const UniPoly<F>& d, int min_degree) {
    if (d.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "D is zero");
    if (d.degree() % 2 != 0) throw Error(ErrorCode::OddDegree, "D has odd degree " + std::to_string(d.degree()));
    if (d.degree() < min_degree)
        throw Error(ErrorCode::DegreeTooSmall,
                    "D has degree " + std::to_string(d.degree()) + ", need at least " + std::to_string(min_degree));
    if (!sqrt_in_field(d.lc()))
        throw Error(ErrorCode::LeadingCoefficientNotASquare, "leading coefficient " + to_string(d.lc()));
    if (!is_squarefree(d)) throw Error(ErrorCode::NotSquarefree, "D is not squarefree");
}

/// One step of the expansion of sqrt(D): complete quotient (P + sqrt(D))/Q,
/// partial quotient a, convergent p/q and its norm p^2 - D q^2.
template <class F>
struct CFracStep {
    UniPoly<F> a, P, Q, p, q, norm;
};

template <class F>
struct CFracExpansion {
    UniPoly<F> D;
    int half_degree = 0;
    std::vector<CFracStep<F>> steps;
};

/// Coefficient-size budget (in size_hint units) for one complete quotient.
inline constexpr std::size_t kDefaultSizeBudget = 4000000;

/// Lazy expansion; next() yields step 0, 1, 2, ... Convergents are carried
/// along only when tracking is on; convergent(n) rebuilds them on demand.
template <class F>
class CFracIterator {
public:
    explicit CFracIterator(UniPoly<F> d, int min_degree = 2, bool track = true,
                           std::size_t size_budget = kDefaultSizeBudget)
        : d_(std::move(d)), track_(track), budget_(size_budget) {
        check_radicand(d_, min_degree);
        floor_ = sqrt_series(d_, 0).polynomial_part();
        Q_ = UniPoly<F>::constant(F(1));
        p_prev_ = UniPoly<F>::constant(F(1));
        q_prev2_ = UniPoly<F>::constant(F(1));
    }

    const UniPoly<F>& D() const { return d_; }
    int steps_done() const { return static_cast<int>(a_.size()); }

    CFracStep<F> next() {
        CFracStep<F> s;
        s.P = P_;
        s.Q = Q_;
        s.a = (P_ + floor_) / Q_;
        if (track_) {
            s.p = s.a * p_prev_ + p_prev2_;
            s.q = s.a * q_prev_ + q_prev2_;
            p_prev2_ = std::move(p_prev_);
            q_prev2_ = std::move(q_prev_);
            p_prev_ = s.p;
            q_prev_ = s.q;
        }
        UniPoly<F> P1 = s.a * Q_ - P_;
        UniPoly<F> Q1 = exact_quotient(d_ - P1 * P1, Q_);
        // p_n^2 - D q_n^2 = (-1)^(n+1) Q_{n+1}
        s.norm = a_.size() % 2 == 0 ? -Q1 : Q1;
        P_ = std::move(P1);
        Q_ = std::move(Q1);
        a_.push_back(s.a);
        std::size_t size = 0;
        for (const auto& c : Q_.coeffs()) size += size_hint(c);
        if (size > budget_)
            throw Error(ErrorCode::BudgetExceeded,
                        "complete quotient " + std::to_string(a_.size()) + " exceeds the coefficient size budget");
        return s;
    }

    /// (p_n, q_n) for a step already produced.
    std::pair<UniPoly<F>, UniPoly<F>> convergent(int n) const {
        UniPoly<F> p2, q2 = UniPoly<F>::constant(F(1));
        UniPoly<F> p1 = UniPoly<F>::constant(F(1)), q1;
        for (int k = 0; k <= n; ++k) {
            UniPoly<F> p = a_[k] * p1 + p2, q = a_[k] * q1 + q2;
            p2 = std::move(p1);
            q2 = std::move(q1);
            p1 = std::move(p);
            q1 = std::move(q);
        }
        return {p1, q1};
    }

private:
    UniPoly<F> d_, floor_, P_, Q_, p_prev_, q_prev_, p_prev2_, q_prev2_;
    std::vector<UniPoly<F>> a_;
    bool track_;
    std::size_t budget_;
};

template <class F>
CFracExpansion<F> expand(const UniPoly<F>& d, int max_steps, std::size_t size_budget = kDefaultSizeBudget) {
    CFracIterator<F> it(d, 2, true, size_budget);
    CFracExpansion<F> e{d, d.degree() / 2, {}};
    for (int n = 0; n < max_steps; ++n) e.steps.push_back(it.next());
    return e;
}

/// Certificate that none of the first `steps` convergents p/q of sqrt(D) over
/// Q(t) has deg(p^2 - D q^2) <= max_norm_degree, read off specializations.
///
/// A degree k is the degree of some convergent denominator iff the k-th
/// Hankel determinant of the fractional part of sqrt(D) is nonzero. Where the
/// coefficients of D and 1/sqrt(lc D) are defined at t0, the series
/// specializes coefficientwise, so every convergent degree found at t0 is a
/// convergent degree of the generic expansion. Between consecutive generic
/// degrees k < k' the partial quotient has degree k' - k and the norm of the
/// convergent of degree k has degree d - (k' - k). Returns the t0 values used,
/// or nullopt when the specializations tried leave a gap of width
/// >= d - max_norm_degree within the first `steps` degrees.
std::optional<std::vector<BigRational>> screen_by_specialization(const UniPoly<RatFunc>& d, int steps,
                                                                 int max_norm_degree);

/// Flip signs so both leading coefficients are canonically positive.
template <class F>
void normalize_signs(UniPoly<F>& a, UniPoly<F>& b) {
    if (!a.is_zero() && canonical_sign(a.lc()) < 0) a = -a;
    if (!b.is_zero() && canonical_sign(b.lc()) < 0) b = -b;
}

template <class F>
struct PellSolution {
    UniPoly<F> A, B;
    int step = 0;  // index of the convergent used
};

/// solution empty means NotPellianWithin(max_steps), a semi-decision.
template <class F>
struct PellReport {
    std::optional<PellSolution<F>> solution;
    int max_steps = 0;
    /// Specialization points that certified the negative answer, if any.
    std::vector<BigRational> screened_at;
    bool pellian() const { return solution.has_value(); }
};

template <class F>
PellReport<F> solve_pell(const UniPoly<F>& d, int max_steps, std::size_t size_budget = kDefaultSizeBudget) {
    CFracIterator<F> it(d, 2, false, size_budget);
    PellReport<F> rep;
    rep.max_steps = max_steps;
    if constexpr (std::is_same_v<F, RatFunc>) {
        if (auto at = screen_by_specialization(d, max_steps, 0)) {
            rep.screened_at = *at;
            return rep;
        }
    }
    for (int n = 0; n < max_steps; ++n) {
        CFracStep<F> s = it.next();
        if (s.norm.degree() != 0) continue;
        const F c = s.norm.lc();
        auto [p, q] = it.convergent(n);
        UniPoly<F> A, B;
        if (auto r = sqrt_in_field(c)) {
            A = p / *r;
            B = q / *r;
        } else {
            A = (p * p + d * q * q) / c;
            B = (F(2) * p * q) / c;
        }
        normalize_signs(A, B);
        if (A * A - d * B * B != UniPoly<F>::constant(F(1)))
            throw Error(ErrorCode::InternalVerificationFailure, "Pell witness fails A^2-DB^2=1");
        rep.solution = PellSolution<F>{std::move(A), std::move(B), n};
        return rep;
    }
    return rep;
}

enum class AlmostPellStatus { Exact, UpToConstant, NotWithin };

/// Exact: A^2 - D B^2 = F.  UpToConstant: A^2 - D B^2 = c F, c a non-square.
template <class F>
struct AlmostPellReport {
    AlmostPellStatus status = AlmostPellStatus::NotWithin;
    UniPoly<F> A, B;
    F c = F(1);
    int step = -1;
    int max_steps = 0;
    std::vector<BigRational> screened_at;
};

template <class F>
AlmostPellReport<F> solve_almost_pell(const UniPoly<F>& d, const UniPoly<F>& f, int max_steps,
                                      std::size_t size_budget = kDefaultSizeBudget) {
    CFracIterator<F> it(d, 4, false, size_budget);
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "F is zero");
    const int half = d.degree() / 2;
    if (f.degree() > half - 1)
        throw Error(ErrorCode::DegreeTooLarge,
                    "deg F = " + std::to_string(f.degree()) + " exceeds d-1 = " + std::to_string(half - 1));
    AlmostPellReport<F> rep;
    rep.max_steps = max_steps;
    if constexpr (std::is_same_v<F, RatFunc>) {
        if (auto at = screen_by_specialization(d, max_steps, f.degree())) {
            rep.screened_at = *at;
            return rep;
        }
    }
    for (int n = 0; n < max_steps; ++n) {
        CFracStep<F> s = it.next();
        if (s.norm.degree() > f.degree()) continue;
        auto qr = poly_divmod(f, s.norm);
        if (!qr.remainder.is_zero()) continue;
        // F = k g^2 N with k constant
        const F k = qr.quotient.lc();
        auto g = exact_poly_sqrt(qr.quotient.monic());
        if (!g) continue;
        auto [p, q] = it.convergent(n);
        UniPoly<F> A = *g * p, B = *g * q;
        if (auto r = sqrt_in_field(k)) {
            A = *r * A;
            B = *r * B;
            rep.status = AlmostPellStatus::Exact;
            rep.c = F(1);
        } else {
            rep.status = AlmostPellStatus::UpToConstant;
            rep.c = F(1) / k;
        }
        normalize_signs(A, B);
        if (A * A - d * B * B != rep.c * f)
            throw Error(ErrorCode::InternalVerificationFailure, "almost-Pell witness fails its identity");
        rep.A = std::move(A);
        rep.B = std::move(B);
        rep.step = n;
        return rep;
    }
    return rep;
}

enum class NonSolvability { Proven, Inconclusive };

struct NonSolvabilityReport {
    NonSolvability verdict = NonSolvability::Inconclusive;
    std::string reason;
};

/// Certifies that A^2 - D_t B^2 = F has no solution with B != 0 over the
/// algebraic closure of Q(t).
///
/// Scale D_t by v(t)^2 (v the lcm of the t-denominators) so its coefficients
/// lie in Q[t]; call the result D and m = deg_t D. A solution clears to
/// A'^2 - D B'^2 = E(t)^2 F with A', B' in Qbar[t][X].
///   E constant: deg_t A'^2 is even, deg_t D B'^2 = m + 2 deg_t B' is odd, so
///   the left side has t-degree >= m > 0 while the right side has none.
///   E(t0) = 0: then A'(t0)^2 = D(t0) B'(t0)^2. If D(t0, X) is never a square
///   in Qbar[X], both A'(t0) and B'(t0) vanish, (t - t0) divides A', B', E and
///   dividing it out lowers deg E; descend to the constant case.
/// With lc_X(D) a square constant, D(t0, X) is a square iff it equals the
/// square of its own polynomial part, and that part specializes coefficient-
/// wise (the series recursion only divides by constants). So "never a square"
/// means the coefficients of D - floor(sqrt D)^2 have no common root.
NonSolvabilityReport prove_not_identically_solvable(const UniPoly<RatFunc>& d, const UniPoly<BigRational>& f);

}  // namespace polypell
