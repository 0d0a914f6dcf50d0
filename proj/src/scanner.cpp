#include "polypell/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace polypell {

namespace {

QPoly lcm(const QPoly& a, const QPoly& b) { return exact_quotient(a * b, poly_gcd(a, b)).monic(); }

QPoly denominator_lcm(const UniPoly<RatFunc>& p) {
    QPoly l = QPoly::constant(1);
    for (const auto& c : p.coeffs()) l = lcm(l, c.denominator());
    return l;
}

bool verifies(const QPoly& d, const QPoly& f, const QPoly& a, const QPoly& b, const BigRational& c) {
    return !b.is_zero() && a * a - d * b * b == QPoly::constant(c) * f;
}

using QQ = Quad<BigRational>;

bool verifies(const QPoly& d, const QPoly& f, const UniPoly<QQ>& a, const UniPoly<QQ>& b, const QQ& c) {
    return !b.is_zero() && a * a - embed_poly<BigRational>(d) * b * b == UniPoly<QQ>::constant(c) * embed_poly<BigRational>(f);
}

EngineRun failed(const Error& e) {
    switch (e.code()) {
        case ErrorCode::BudgetExceeded: return {EngineVerdict::BudgetExceeded, e.what()};
        case ErrorCode::DegreeTooLarge:
        case ErrorCode::NonSplitTarget:
        case ErrorCode::UnsupportedSupport:
        case ErrorCode::InvalidArgument: return {EngineVerdict::NotApplicable, e.what()};
        default: throw;
    }
}

/// cfrac engine: Pell for constant F, the convergent criterion otherwise.
std::optional<ScanWitness> run_cfrac(const QPoly& d, const QPoly& f, int max_steps, EngineRun& run) {
    try {
        ScanWitness w;
        w.engine = "cfrac";
        if (f.degree() == 0) {
            auto rep = solve_pell(d, max_steps);
            if (!rep.solution) {
                run = {EngineVerdict::NotWithin, "no solving convergent in " + std::to_string(max_steps) + " steps"};
                return std::nullopt;
            }
            w.A = rep.solution->A;
            w.B = rep.solution->B;
            w.c = BigRational(1) / f.lc();
            if (auto r = sqrt_in_field(f.lc())) {
                w.A = *r * w.A;
                w.B = *r * w.B;
                w.c = BigRational(1);
            }
            run = {EngineVerdict::Solved, "convergent " + std::to_string(rep.solution->step)};
            return w;
        }
        auto rep = solve_almost_pell(d, f, max_steps);
        if (rep.status == AlmostPellStatus::NotWithin) {
            run = {EngineVerdict::NotWithin, "no solving convergent in " + std::to_string(max_steps) + " steps"};
            return std::nullopt;
        }
        w.A = rep.A;
        w.B = rep.B;
        w.c = rep.c;
        run = {EngineVerdict::Solved, "convergent " + std::to_string(rep.step)};
        return w;
    } catch (const Error& e) {
        run = failed(e);
        return std::nullopt;
    }
}

std::optional<ScanWitness> run_jacobian(const QPoly& d, const QPoly& f, long l_bound, EngineRun& run) {
    try {
        auto sol = jacobian_almost_pell(d, f, l_bound);
        if (!sol.found()) {
            run = {EngineVerdict::NotWithin, "no relation with |l| <= " + std::to_string(l_bound) + " (" +
                                                 std::to_string(sol.tested) + " tested)"};
            return std::nullopt;
        }
        ScanWitness w;
        w.engine = "jacobian";
        if (sol.extended) {
            w.delta = sol.delta;
            w.ext_A = sol.extended_A;
            w.ext_B = sol.extended_B;
            w.ext_c = sol.extended_c;
        } else {
            w.A = sol.A;
            w.B = sol.B;
            w.c = sol.c;
        }
        run = {EngineVerdict::Solved, "l = " + std::to_string(sol.relation.l)};
        return w;
    } catch (const Error& e) {
        run = failed(e);
        return std::nullopt;
    }
}

int rank(const ScanWitness& w) { return w.exact() ? 0 : (w.delta ? 2 : 1); }

}  // namespace

Family::Family(UniPoly<RatFunc> d, UniPoly<RatFunc> f) : d_(std::move(d)), f_(std::move(f)) {
    if (f_.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "F is zero");
    if (d_.degree() % 2 != 0) throw Error(ErrorCode::OddDegree, "D_t has odd degree in X");
    if (d_.degree() < 4) throw Error(ErrorCode::DegreeTooSmall, "D_t needs degree at least 4 in X");
    if (!sqrt_in_field(d_.lc())) throw Error(ErrorCode::LeadingCoefficientNotASquare, "lc_X(D_t) = " + d_.lc().to_string());
    if (!is_squarefree(d_)) throw Error(ErrorCode::NotSquarefree, "D_t is not squarefree over Q(t)");
    disc_ = polypell::discriminant(d_);
    bad_ = disc_.numerator() * d_.lc().numerator() * lcm(denominator_lcm(d_), denominator_lcm(f_));
    bad_points_ = roots_in_field(bad_);
    std::sort(bad_points_.begin(), bad_points_.end());
}

std::optional<QPoly> Family::constant_F() const {
    for (const auto& c : f_.coeffs())
        if (!c.is_constant()) return std::nullopt;
    return f_.map<BigRational>([](const RatFunc& c) { return c.constant_value(); });
}

std::string_view degenerate_name(DegenerateReason r) {
    switch (r) {
        case DegenerateReason::DenominatorVanishes: return "DenominatorVanishes";
        case DegenerateReason::DegreeDrops: return "DegreeDrops";
        case DegenerateReason::NotSquarefree: return "NotSquarefree";
        case DegenerateReason::LeadingCoefficientNotASquare: return "LeadingCoefficientNotASquare";
        case DegenerateReason::ZeroF: return "ZeroF";
    }
    return "?";
}

std::string_view scan_status_name(ScanStatus s) {
    switch (s) {
        case ScanStatus::Solvable: return "Solvable";
        case ScanStatus::NotWithinBudget: return "NotWithinBudget";
        case ScanStatus::Degenerate: return "Degenerate";
    }
    return "?";
}

std::string_view engine_verdict_name(EngineVerdict v) {
    switch (v) {
        case EngineVerdict::Solved: return "solved";
        case EngineVerdict::NotWithin: return "not-within";
        case EngineVerdict::NotApplicable: return "not-applicable";
        case EngineVerdict::BudgetExceeded: return "budget-exceeded";
        case EngineVerdict::Skipped: return "skipped";
    }
    return "?";
}

Specialization specialize(const Family& family, const BigRational& t0) {
    Specialization s;
    auto d = specialize_poly(family.D(), t0);
    auto f = specialize_poly(family.F(), t0);
    if (!d || !f) {
        s.degenerate = DegenerateReason::DenominatorVanishes;
        return s;
    }
    s.D = std::move(*d);
    s.F = std::move(*f);
    if (s.D.degree() != family.x_degree()) s.degenerate = DegenerateReason::DegreeDrops;
    else if (s.F.is_zero()) s.degenerate = DegenerateReason::ZeroF;
    else if (!is_squarefree(s.D)) s.degenerate = DegenerateReason::NotSquarefree;
    else if (!sqrt_in_field(s.D.lc())) s.degenerate = DegenerateReason::LeadingCoefficientNotASquare;
    return s;
}

ScanEntry scan_point(const Family& family, const BigRational& t0, const ScanBudgets& budgets) {
    ScanEntry e;
    e.t0 = t0;
    Specialization s = specialize(family, t0);
    e.D = s.D;
    e.F = s.F;
    if (s.degenerate) {
        e.status = ScanStatus::Degenerate;
        e.degenerate = s.degenerate;
        return e;
    }
    const long l_bound = budgets.l_bound < 0 ? default_l_bound(e.D.degree() / 2) : budgets.l_bound;
    std::vector<ScanWitness> found;
    if (auto w = run_cfrac(e.D, e.F, budgets.max_steps, e.cfrac)) found.push_back(std::move(*w));
    if (budgets.run_jacobian)
        if (auto w = run_jacobian(e.D, e.F, l_bound, e.jacobian)) found.push_back(std::move(*w));
    if (found.empty()) return e;
    std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return rank(a) < rank(b); });
    e.status = ScanStatus::Solvable;
    e.witness = std::move(found.front());
    if (!witness_verifies(e))
        throw Error(ErrorCode::InternalVerificationFailure, "scan witness at t0 = " + t0.to_string() + " fails its identity");
    return e;
}

bool witness_verifies(const ScanEntry& e) {
    if (!e.witness) return false;
    const auto& w = *e.witness;
    if (w.delta) return verifies(e.D, e.F, w.ext_A, w.ext_B, w.ext_c);
    return verifies(e.D, e.F, w.A, w.B, w.c);
}

ScanReport scan(const Family& family, long height_bound, ScanBudgets budgets) {
    ScanReport rep;
    rep.height_bound = height_bound;
    rep.budgets = budgets;
    rep.degenerate_points = family.degenerate_points();
    if (auto f = family.constant_F()) rep.generic = prove_not_identically_solvable(family.D(), *f);

    const std::vector<BigRational> ts = rationals_of_height_up_to(height_bound);
    rep.entries.resize(ts.size());
    unsigned n = budgets.threads ? budgets.threads : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, static_cast<unsigned>(ts.size()));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < n; ++k)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < ts.size();) {
                    try {
                        rep.entries[i] = scan_point(family, ts[i], budgets);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            });
    }
    if (error) std::rethrow_exception(error);
    return rep;
}

QPoly substitute_power(const QPoly& p, unsigned k) {
    if (p.is_zero()) return p;
    std::vector<BigRational> v(static_cast<std::size_t>(p.degree()) * k + 1);
    for (int i = 0; i <= p.degree(); ++i) v[static_cast<std::size_t>(i) * k] = p.coeffs()[static_cast<std::size_t>(i)];
    return QPoly(std::move(v));
}

QPoly transformed_D(const BigRational& t0) {
    return QPoly({BigRational(0), t0, BigRational(1), BigRational(0), BigRational(1)});
}

std::pair<QPoly, QPoly> beta_pullback(const QPoly& a1, const QPoly& b1, const BigRational& t0, const BigRational& c) {
    if (b1.is_zero()) throw Error(ErrorCode::NotASolution, "B1 = 0 is the trivial solution");
    const QPoly f1 = QPoly({BigRational(-1), BigRational(1)});
    if (c.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero constant");
    if (a1 * a1 - transformed_D(t0) * b1 * b1 != QPoly::constant(c) * f1)
        throw Error(ErrorCode::NotASolution, "A1^2 - (X^4+X^2+t0*X) B1^2 != c (X - 1)");
    QPoly a = substitute_power(a1, 4);
    QPoly b = QPoly::monomial(BigRational(1), 2) * substitute_power(b1, 4);
    const QPoly d = QPoly::monomial(BigRational(1), 12) + QPoly::monomial(BigRational(1), 4) + QPoly::constant(t0);
    const QPoly f = QPoly::monomial(BigRational(1), 4) - QPoly::constant(BigRational(1));
    if (a * a - d * b * b != QPoly::constant(c) * f) throw Error(ErrorCode::InternalVerificationFailure, "pulled-back witness fails its identity");
    return {std::move(a), std::move(b)};
}

bool beta_identity_holds() {
    using P = UniPoly<RatFunc>;
    const RatFunc t = RatFunc::t();
    const P x = P::monomial(RatFunc(1), 1);
    const P x4 = P::monomial(RatFunc(1), 4);
    const P dt = x * x * x * x + x * x + P::constant(t) * x;
    const P ft = x - P::constant(RatFunc(1));
    const P d = P::monomial(RatFunc(1), 12) + x4 + P::constant(t);
    // A1(X^4)^2 - D (X^2 B1(X^4))^2 = (A1^2 - Dtilde B1^2)(X^4) needs X^4 D = Dtilde(X^4)
    return dt.compose(x4) == x4 * d && ft.compose(x4) == x4 - P::constant(RatFunc(1));
}

}  // namespace polypell
