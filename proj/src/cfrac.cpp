#include "polypell/cfrac.hpp"

namespace polypell {

namespace {

NonSolvabilityReport inconclusive(std::string why) { return {NonSolvability::Inconclusive, std::move(why)}; }

/// Degrees of the convergent denominators q_0, ..., q_steps at one specialization.
std::vector<int> specialized_degrees(const UniPoly<RatFunc>& d, const BigRational& t0, int steps) {
    auto d0 = specialize_poly(d, t0);
    if (!d0 || d0->degree() != d.degree() || !is_squarefree(*d0)) return {};
    auto r0 = sqrt_in_field(d.lc());
    if (!r0 || !r0->evaluate(t0) || r0->evaluate(t0)->is_zero()) return {};
    try {
        CFracIterator<BigRational> it(*d0, 2, false);
        std::vector<int> degs{0};
        int k = 0;
        for (int n = 0; n < steps; ++n) {
            CFracStep<BigRational> s = it.next();
            if (n > 0) degs.push_back(k += s.a.degree());
        }
        degs.push_back(k + it.next().a.degree());
        return degs;
    } catch (const Error&) {
        return {};
    }
}

}  // namespace

std::optional<std::vector<BigRational>> screen_by_specialization(const UniPoly<RatFunc>& d, int steps,
                                                                 int max_norm_degree) {
    const int half = d.degree() / 2;
    const int max_gap = half - max_norm_degree - 1;
    if (max_gap < 1 || steps < 1) return std::nullopt;
    std::vector<bool> seen;
    std::vector<BigRational> used;
    int tried = 0;
    for (const BigRational& t0 : rationals_of_height_up_to(4)) {
        std::vector<int> degs = specialized_degrees(d, t0, steps);
        if (degs.empty()) continue;
        used.push_back(t0);
        for (int k : degs) {
            if (k >= static_cast<int>(seen.size())) seen.resize(static_cast<std::size_t>(k) + 1, false);
            seen[k] = true;
        }
        // walk the known degrees from 0 while the gaps stay below max_gap + 1
        int count = 1, last = 0;
        for (int k = 1; k < static_cast<int>(seen.size()); ++k) {
            if (!seen[k]) continue;
            if (k - last > max_gap) break;
            last = k;
            ++count;
        }
        if (count - 1 >= steps) return used;
        if (++tried == 3) break;
    }
    return std::nullopt;
}

NonSolvabilityReport prove_not_identically_solvable(const UniPoly<RatFunc>& d, const UniPoly<BigRational>& f) {
    if (d.is_zero() || d.degree() % 2 != 0 || d.degree() < 4) return inconclusive("D needs even X-degree >= 4");
    if (f.is_zero()) return inconclusive("F is zero");
    const int half = d.degree() / 2;
    if (f.degree() > half - 1) return inconclusive("deg F exceeds d-1");
    if (!is_squarefree(d)) return inconclusive("D is not squarefree");

    QPoly v = QPoly::constant(1);
    for (const auto& c : d.coeffs()) v = v * exact_quotient(c.denominator(), poly_gcd(v, c.denominator()));
    const RatFunc v2(v * v);
    UniPoly<RatFunc> dc = d.map<RatFunc>([&](const RatFunc& c) { return c * v2; });

    const int m = t_degree(dc);
    if (m % 2 == 0) return inconclusive("t-degree " + std::to_string(m) + " of the cleared D is even");
    if (!dc.lc().is_constant()) return inconclusive("leading X-coefficient depends on t");
    if (!sqrt_in_field(dc.lc().constant_value())) return inconclusive("leading X-coefficient is not a square");

    UniPoly<RatFunc> fl = sqrt_series(dc, 0).polynomial_part();
    UniPoly<RatFunc> rho = dc - fl * fl;
    if (rho.is_zero()) return inconclusive("D is a square");
    QPoly g;
    for (const auto& c : rho.coeffs()) {
        if (!c.is_polynomial()) return inconclusive("non-polynomial remainder coefficient");
        if (c.numerator().is_zero()) continue;
        g = g.is_zero() ? c.numerator() : poly_gcd(g, c.numerator());
    }
    if (g.degree() > 0) return inconclusive("D(t0, X) is a square for roots t0 of " + g.to_string("t"));
    return {NonSolvability::Proven,
            "odd t-degree " + std::to_string(m) + " and no specialization of D is a square"};
}

}  // namespace polypell
