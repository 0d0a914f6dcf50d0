#pragma once

#include "polypell/bridge.hpp"
#include "polypell/cfrac.hpp"
#include "polypell/poly.hpp"
#include "polypell/ratfunc.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polypell {

/// A^2 - D_t B^2 = F over Q(t), with D_t squarefree of even X-degree >= 4 and
/// square leading coefficient.
class Family {
public:
    Family(UniPoly<RatFunc> d, UniPoly<RatFunc> f);

    const UniPoly<RatFunc>& D() const { return d_; }
    const UniPoly<RatFunc>& F() const { return f_; }
    int x_degree() const { return d_.degree(); }
    const RatFunc& discriminant() const { return disc_; }
    /// disc_X(D_t) * lc numerator * lcm of the denominators of D_t and F.
    const UniPoly<BigRational>& degeneracy_polynomial() const { return bad_; }
    /// Rational roots of the degeneracy polynomial.
    const std::vector<BigRational>& degenerate_points() const { return bad_points_; }
    /// F as a polynomial over Q when it does not involve t.
    std::optional<UniPoly<BigRational>> constant_F() const;

private:
    UniPoly<RatFunc> d_, f_;
    RatFunc disc_;
    UniPoly<BigRational> bad_;
    std::vector<BigRational> bad_points_;
};

enum class DegenerateReason { DenominatorVanishes, DegreeDrops, NotSquarefree, LeadingCoefficientNotASquare, ZeroF };
std::string_view degenerate_name(DegenerateReason r);

struct Specialization {
    UniPoly<BigRational> D, F;
    std::optional<DegenerateReason> degenerate;
};

Specialization specialize(const Family& family, const BigRational& t0);

enum class ScanStatus { Solvable, NotWithinBudget, Degenerate };
std::string_view scan_status_name(ScanStatus s);

enum class EngineVerdict { Solved, NotWithin, NotApplicable, BudgetExceeded, Skipped };
std::string_view engine_verdict_name(EngineVerdict v);

struct EngineRun {
    EngineVerdict verdict = EngineVerdict::Skipped;
    std::string note;
};

/// A^2 - D0 B^2 = c F0. A witness over Q(sqrt(delta)) sits in the ext_*
/// fields instead, with A and B empty.
struct ScanWitness {
    std::string engine;
    UniPoly<BigRational> A, B;
    BigRational c = BigRational(1);
    std::optional<BigRational> delta;
    UniPoly<Quad<BigRational>> ext_A, ext_B;
    Quad<BigRational> ext_c = Quad<BigRational>(1);
    bool exact() const { return !delta && c == BigRational(1); }
};

struct ScanEntry {
    BigRational t0;
    ScanStatus status = ScanStatus::NotWithinBudget;
    std::optional<DegenerateReason> degenerate;
    UniPoly<BigRational> D, F;
    EngineRun cfrac, jacobian;
    std::optional<ScanWitness> witness;
};

struct ScanBudgets {
    int max_steps = 64;
    /// Negative means 2d + 10.
    long l_bound = -1;
    /// 0 means one per hardware thread.
    unsigned threads = 0;
    bool run_jacobian = true;
};

struct ScanReport {
    long height_bound = 0;
    ScanBudgets budgets;
    std::optional<NonSolvabilityReport> generic;
    std::vector<BigRational> degenerate_points;
    std::vector<ScanEntry> entries;
};

/// Runs both engines at every t0 of height <= height_bound, in parallel; the
/// entries follow the height order.
ScanReport scan(const Family& family, long height_bound, ScanBudgets budgets = {});

/// Both engines on one specialization.
ScanEntry scan_point(const Family& family, const BigRational& t0, const ScanBudgets& budgets);

/// Re-checks the polynomial identity of a Solvable entry.
bool witness_verifies(const ScanEntry& e);

/// p(X^k).
UniPoly<BigRational> substitute_power(const UniPoly<BigRational>& p, unsigned k);

/// X1^4 + X1^2 + t0 X1, the image of X^12 + X^4 + t0 under X1 = X^4, Y1 = X^2 Y.
UniPoly<BigRational> transformed_D(const BigRational& t0);

/// From A1^2 - (X1^4 + X1^2 + t0 X1) B1^2 = c (X1 - 1) to
/// (A1(X^4))^2 - (X^12 + X^4 + t0)(X^2 B1(X^4))^2 = c (X^4 - 1).
std::pair<UniPoly<BigRational>, UniPoly<BigRational>> beta_pullback(const UniPoly<BigRational>& a1,
                                                                    const UniPoly<BigRational>& b1,
                                                                    const BigRational& t0,
                                                                    const BigRational& c = BigRational(1));

/// The substitution identity behind beta_pullback, checked over Q(t):
/// Dtilde(X^4) = X^4 (X^12 + X^4 + t) and Ftilde(X^4) = X^4 - 1.
bool beta_identity_holds();

}  // namespace polypell
