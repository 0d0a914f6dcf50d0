#pragma once

#include "polypell/cfrac.hpp"
#include "polypell/jacobian.hpp"

#include <algorithm>
#include <optional>
#include <type_traits>
#include <vector>

namespace polypell {

template <class F>
struct CommonRootReduction {
    UniPoly<F> reduced;
    /// (g, k): F was divided by g^2 k times, g the product of the common roots concerned.
    std::vector<std::pair<UniPoly<F>, int>> removed;
};

/// Divides F by (X - a)^2 while a is a root of D and a multiple root of F.
template <class F>
CommonRootReduction<F> reduce_common_roots(const UniPoly<F>& d, const UniPoly<F>& f) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "F is zero");
    CommonRootReduction<F> out{f, {}};
    for (;;) {
        UniPoly<F> g = poly_gcd(d, out.reduced);
        if (g.degree() <= 0) break;
        UniPoly<F> twice = poly_gcd(g, exact_quotient(out.reduced, g));
        if (twice.degree() <= 0) break;
        out.reduced = exact_quotient(out.reduced, twice * twice);
        auto it = std::find_if(out.removed.begin(), out.removed.end(), [&](const auto& r) { return r.first == twice; });
        if (it == out.removed.end()) out.removed.emplace_back(twice, 1);
        else ++it->second;
    }
    return out;
}

/// F = beta prod (X - alpha_i)^a_i with D(alpha_i) != 0 exactly for i < split_rank.
template <class F>
struct FactoredTarget {
    F beta = F(1);
    std::vector<std::pair<F, int>> factors;
    int split_rank = 0;

    UniPoly<F> polynomial() const {
        UniPoly<F> p = UniPoly<F>::constant(beta);
        for (const auto& [a, e] : factors) p = p * UniPoly<F>::linear(a).pow(static_cast<unsigned>(e));
        return p;
    }
    std::vector<int> exponents() const {
        std::vector<int> e;
        for (const auto& f : factors) e.push_back(f.second);
        return e;
    }
};

template <class F>
FactoredTarget<F> factor_target(const UniPoly<F>& d, const UniPoly<F>& f) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "F is zero");
    FactoredTarget<F> t;
    UniPoly<F> rest = f;
    std::vector<std::pair<F, int>> weierstrass;
    for (const F& a : roots_in_field(f)) {
        const int e = f.root_multiplicity(a);
        rest = exact_quotient(rest, UniPoly<F>::linear(a).pow(static_cast<unsigned>(e)));
        (detail::coeff_is_zero(d(a)) ? weierstrass : t.factors).emplace_back(a, e);
    }
    if (rest.degree() > 0) throw Error(ErrorCode::NonSplitTarget, "F has the factor " + rest.to_string() + " without roots in the field");
    t.beta = rest.lc();
    t.split_rank = static_cast<int>(t.factors.size());
    t.factors.insert(t.factors.end(), weierstrass.begin(), weierstrass.end());
    return t;
}

/// P_i = [alpha_i^+ - inf-] (or [alpha_i - inf-] at a root of D), Q = [inf+ - inf-].
template <class F>
struct PellPointsSetup {
    HyperCurve<F> curve;
    FactoredTarget<F> target;
    std::vector<CurvePoint<F>> alpha;
    std::vector<Divisor<F>> P;
    Divisor<F> Q;
};

template <class F>
PellPointsSetup<F> build_points(const HyperCurve<F>& c, const FactoredTarget<F>& target) {
    PellPointsSetup<F> s{c, target, {}, {}, {}};
    s.Q.add(CurvePoint<F>::inf_plus(), 1);
    s.Q.add(CurvePoint<F>::inf_minus(), -1);
    for (std::size_t i = 0; i < target.factors.size(); ++i) {
        const auto& [a, e] = target.factors[i];
        auto pts = points_above(c, a);
        const bool weier = pts.size() == 1;
        if (weier != (static_cast<int>(i) >= target.split_rank))
            throw Error(ErrorCode::InvalidArgument, "factors are not ordered by D(alpha) != 0");
        if (weier && e != 1) throw Error(ErrorCode::InvalidArgument, "common root of D and F with multiplicity > 1");
        Divisor<F> p;
        p.add(pts[0], 1);
        p.add(CurvePoint<F>::inf_minus(), -1);
        // [alpha+ - inf-] = -[alpha- - inf+] through div(X - alpha)
        Divisor<F> back;
        back.add(weier ? pts[0] : pts[1], 1);
        back.add(CurvePoint<F>::inf_plus(), -1);
        if (!(p + back == divisor_of_line(c, a)))
            throw Error(ErrorCode::InternalVerificationFailure, "conjugation identity fails above " + detail::coeff_to_string(a));
        s.alpha.push_back(pts[0]);
        s.P.push_back(std::move(p));
    }
    return s;
}

template <class K>
PellPointsSetup<Quad<K>> promote_setup(const PellPointsSetup<K>& s, const K& delta) {
    auto pr = promote(s.curve, s.P, delta);
    PellPointsSetup<Quad<K>> out{pr.curve, {}, {}, std::move(pr.divisors), promote_divisor(pr.curve, s.Q)};
    out.target.beta = Quad<K>(s.target.beta);
    out.target.split_rank = s.target.split_rank;
    for (const auto& [a, e] : s.target.factors) out.target.factors.emplace_back(Quad<K>(a), e);
    for (const auto& p : s.alpha) out.alpha.push_back(promote_point(out.curve, p));
    return out;
}

struct RelationVector {
    std::vector<long> g;
    long l = 0;
    bool is_zero() const {
        return l == 0 && std::all_of(g.begin(), g.end(), [](long x) { return x == 0; });
    }
    friend bool operator==(const RelationVector&, const RelationVector&) = default;
};

/// A^2 - D B^2 = beta prod (X - alpha_i)^exponents_i, B != 0.
template <class F>
struct SolutionWitness {
    UniPoly<F> A, B;
    F beta = F(1);
    std::vector<int> exponents;
};

template <class F>
Divisor<F> relation_divisor(const PellPointsSetup<F>& s, const RelationVector& r) {
    if (r.g.size() != s.P.size()) throw Error(ErrorCode::InvalidArgument, "relation has the wrong length");
    Divisor<F> d = s.Q.scaled(r.l);
    for (std::size_t i = 0; i < r.g.size(); ++i)
        if (r.g[i] != 0) d = d + s.P[i].scaled(r.g[i]);
    return d;
}

/// Principality, moving to K(sqrt(delta)) when the divisor needs it.
template <class F>
bool principal_with_extension(const HyperCurve<F>& c, const Divisor<F>& d) {
    if constexpr (std::is_same_v<F, BigRational> || std::is_same_v<F, RatFunc>) {
        if (auto delta = extension_needed<F>({d})) {
            auto pr = promote(c, {d}, *delta);
            return is_principal(pr.curve, pr.divisors[0]).has_value();
        }
    }
    return is_principal(c, d).has_value();
}

template <class F>
RelationVector solution_to_relation(const PellPointsSetup<F>& s, const UniPoly<F>& a, const UniPoly<F>& b) {
    const UniPoly<F>& d = s.curve.D();
    if (b.is_zero()) throw Error(ErrorCode::TrivialSolution, "B = 0");
    if (a * a - d * b * b != s.target.polynomial()) throw Error(ErrorCode::NotASolution, "A^2 - D B^2 differs from F");
    std::vector<F> hints;
    for (const auto& f : s.target.factors) hints.push_back(f.first);
    Divisor<F> div = divisor_of_function(s.curve, a, b, {}, hints);
    RelationVector r;
    long minus_sum = 0;
    for (std::size_t i = 0; i < s.alpha.size(); ++i) {
        const int ai = s.target.factors[i].second;
        if (static_cast<int>(i) < s.target.split_rank) {
            const long bp = div.coefficient(s.alpha[i]), bm = div.coefficient(involution(s.alpha[i]));
            if (bp + bm != ai) throw Error(ErrorCode::InternalVerificationFailure, "b+ + b- differs from the multiplicity");
            r.g.push_back(bp - bm);
            minus_sum += bm;
        } else {
            if (div.coefficient(s.alpha[i]) != ai) throw Error(ErrorCode::InternalVerificationFailure, "order at a root of D");
            r.g.push_back(ai);
        }
    }
    r.l = div.coefficient(CurvePoint<F>::inf_plus()) + minus_sum;
    if (r.is_zero()) throw Error(ErrorCode::InternalVerificationFailure, "solution produced the zero relation");
    if (!principal_with_extension(s.curve, relation_divisor(s, r)))
        throw Error(ErrorCode::InternalVerificationFailure, "relation from a solution is not principal");
    return r;
}

/// Needs every point of the relation rational over F (promote_setup first otherwise).
template <class F>
SolutionWitness<F> relation_to_solution(const PellPointsSetup<F>& s, const RelationVector& r) {
    if (r.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero relation");
    for (std::size_t i = static_cast<std::size_t>(s.target.split_rank); i < r.g.size(); ++i)
        if (r.g[i] % 2 == 0 && r.g[i] != 0)
            throw Error(ErrorCode::ParityViolation, "coefficient " + std::to_string(r.g[i]) + " at a root of D");
    auto cert = is_principal(s.curve, relation_divisor(s, r));
    if (!cert) throw Error(ErrorCode::NotARelation, "the combination is not principal");

    // f+ = f * prod_{e_i < 0} (X - alpha_i)^|e_i|, f = (R + YS) / den
    UniPoly<F> num = UniPoly<F>::constant(F(1)), den = UniPoly<F>::constant(F(1)), norm = UniPoly<F>::constant(F(1));
    SolutionWitness<F> w;
    for (std::size_t i = 0; i < r.g.size(); ++i) {
        const F& a = s.target.factors[i].first;
        const unsigned e = static_cast<unsigned>(r.g[i] < 0 ? -r.g[i] : r.g[i]);
        if (r.g[i] < 0) num = num * UniPoly<F>::linear(a).pow(e);
        norm = norm * UniPoly<F>::linear(a).pow(e);
        w.exponents.push_back(static_cast<int>(e));
    }
    for (const auto& [x, k] : cert->denominator) den = den * UniPoly<F>::linear(x).pow(static_cast<unsigned>(k));
    auto qa = poly_divmod(cert->R * num, den), qb = poly_divmod(cert->S * num, den);
    if (!qa.remainder.is_zero() || !qb.remainder.is_zero())
        throw Error(ErrorCode::InternalVerificationFailure, "f+ has a finite pole");
    w.A = std::move(qa.quotient);
    w.B = std::move(qb.quotient);
    if (w.B.is_zero()) throw Error(ErrorCode::InternalVerificationFailure, "relation gave B = 0");
    auto qr = poly_divmod(w.A * w.A - s.curve.D() * w.B * w.B, norm);
    if (!qr.remainder.is_zero() || qr.quotient.degree() != 0)
        throw Error(ErrorCode::InternalVerificationFailure, "A^2 - D B^2 is not beta prod (X - alpha_i)^|e_i|");
    w.beta = qr.quotient.lc();
    return w;
}

template <class F>
struct JacobianAlmostPellReport {
    AlmostPellStatus status = AlmostPellStatus::NotWithin;
    /// Witness for the whole target: exponents are the a_i, beta equals the
    /// target's beta when status is Exact.
    std::optional<SolutionWitness<F>> witness;
    /// Witness that needs sqrt(delta); set instead of `witness`.
    std::optional<SolutionWitness<Quad<F>>> extended;
    std::optional<F> delta;
    RelationVector relation;
    long l_bound = 0;
    std::size_t tested = 0;
};

namespace detail {

/// Scales a witness for exponents |e_i| up to the target: pads with
/// (X - alpha_i)^((a_i - |e_i|)/2) and divides out sqrt(beta'/beta) when it exists.
template <class W, class Sqrt>
bool complete_witness(SolutionWitness<W>& w, const FactoredTarget<W>& t, const UniPoly<W>& d, Sqrt sqrt) {
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
        const int pad = (t.factors[i].second - w.exponents[i]) / 2;
        const UniPoly<W> lin = UniPoly<W>::linear(t.factors[i].first).pow(static_cast<unsigned>(pad));
        w.A = w.A * lin;
        w.B = w.B * lin;
        w.exponents[i] = t.factors[i].second;
    }
    bool exact = false;
    if (auto r = sqrt(w.beta / t.beta)) {
        w.A = w.A / *r;
        w.B = w.B / *r;
        w.beta = t.beta;
        exact = true;
    }
    normalize_signs(w.A, w.B);
    if (w.A * w.A - d * w.B * w.B != UniPoly<W>::constant(w.beta / t.beta) * t.polynomial())
        throw Error(ErrorCode::InternalVerificationFailure, "rescaled witness fails its identity");
    return exact;
}

template <class K>
std::optional<SolutionWitness<K>> demote(const SolutionWitness<Quad<K>>& w) {
    auto down = [](const UniPoly<Quad<K>>& p) -> std::optional<UniPoly<K>> {
        std::vector<K> v;
        for (const auto& c : p.coeffs()) {
            if (!c.in_base()) return std::nullopt;
            v.push_back(c.rational_part());
        }
        return UniPoly<K>(std::move(v));
    };
    auto a = down(w.A), b = down(w.B);
    if (!a || !b || !w.beta.in_base()) return std::nullopt;
    return SolutionWitness<K>{*a, *b, w.beta.rational_part(), w.exponents};
}

/// Admissible (g, l) in search order: |l| ascending, g lexicographic, first
/// nonzero coordinate positive.
template <class W>
std::optional<std::pair<RelationVector, SolutionWitness<W>>> search_relations(const PellPointsSetup<W>& s, long l_bound,
                                                                               std::size_t& tested) {
    const std::size_t m = s.P.size();
    std::vector<std::vector<long>> choices(m);
    for (std::size_t i = 0; i < m; ++i) {
        const int a = s.target.factors[i].second;
        if (static_cast<int>(i) >= s.target.split_rank) choices[i] = {-1, 1};
        else
            for (long g = -a; g <= a; g += 2) choices[i].push_back(g);
    }
    for (long step = 0; step <= 2 * l_bound; ++step) {
        const long l = step % 2 == 0 ? step / 2 : -(step + 1) / 2;
        std::vector<std::size_t> idx(m, 0);
        for (;;) {
            RelationVector r;
            for (std::size_t i = 0; i < m; ++i) r.g.push_back(choices[i][idx[i]]);
            r.l = l;
            auto nz = std::find_if(r.g.begin(), r.g.end(), [](long x) { return x != 0; });
            const long lead = nz != r.g.end() ? *nz : l;
            if (lead > 0) {
                ++tested;
                if (is_principal(s.curve, relation_divisor(s, r))) return std::pair{r, relation_to_solution(s, r)};
            }
            std::size_t i = m;
            while (i > 0 && ++idx[i - 1] == choices[i - 1].size()) idx[--i] = 0;
            if (i == 0) break;
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline long default_l_bound(int half_degree) { return 2L * half_degree + 10; }

/// Searches the admissible relations sum g_i P_i + l Q = 0 with |l| <= l_bound
/// and turns the first one into a witness for F. F must be split and reduced
/// (reduce_common_roots). Works over Q and Q(t).
template <class F>
JacobianAlmostPellReport<F> solve_almost_pell_via_jacobian(const HyperCurve<F>& c, const FactoredTarget<F>& target,
                                                           long l_bound) {
    static_assert(std::is_same_v<F, BigRational> || std::is_same_v<F, RatFunc>, "base field expected");
    if (l_bound < 0) throw Error(ErrorCode::InvalidArgument, "negative l bound");
    PellPointsSetup<F> s = build_points(c, target);
    JacobianAlmostPellReport<F> rep;
    rep.l_bound = l_bound;
    std::optional<F> delta;
    for (std::size_t i = 0; i < s.alpha.size(); ++i) {
        if (s.alpha[i].is_rational()) continue;
        if (!delta) delta = s.alpha[i].delta;
        else if (!sqrt_in_field(s.alpha[i].delta / *delta))
            throw Error(ErrorCode::UnsupportedSupport, "roots of F give points over two different quadratic extensions");
    }
    if (!delta) {
        auto hit = detail::search_relations(s, l_bound, rep.tested);
        if (!hit) return rep;
        auto& w = hit->second;
        const bool exact = detail::complete_witness(w, s.target, c.D(), [&](const F& v) { return c.sqrt(v); });
        rep.status = exact ? AlmostPellStatus::Exact : AlmostPellStatus::UpToConstant;
        rep.relation = hit->first;
        rep.witness = std::move(w);
        return rep;
    }
    rep.delta = delta;
    PellPointsSetup<Quad<F>> qs = promote_setup(s, *delta);
    auto hit = detail::search_relations(qs, l_bound, rep.tested);
    if (!hit) return rep;
    auto& w = hit->second;
    const bool exact = detail::complete_witness(w, qs.target, qs.curve.D(), [&](const Quad<F>& v) { return qs.curve.sqrt(v); });
    rep.status = exact ? AlmostPellStatus::Exact : AlmostPellStatus::UpToConstant;
    rep.relation = hit->first;
    if (auto down = detail::demote(w)) rep.witness = std::move(*down);
    else rep.extended = std::move(w);
    return rep;
}

/// Jacobian engine on a full F: squared common roots with D are stripped,
/// the rest must split. A^2 - D B^2 = c F for the witness found, over the
/// base field or over K(sqrt(delta)).
template <class F>
struct JacobianSolution {
    AlmostPellStatus status = AlmostPellStatus::NotWithin;
    UniPoly<F> A, B;
    F c = F(1);
    std::optional<F> delta;
    bool extended = false;
    UniPoly<Quad<F>> extended_A, extended_B;
    Quad<F> extended_c = Quad<F>(1);
    RelationVector relation;
    long l_bound = 0;
    std::size_t tested = 0;
    bool found() const { return status != AlmostPellStatus::NotWithin; }
};

template <class F>
JacobianSolution<F> jacobian_almost_pell(const UniPoly<F>& d, const UniPoly<F>& f, long l_bound) {
    HyperCurve<F> c(d);
    auto red = reduce_common_roots(d, f);
    FactoredTarget<F> target = factor_target(d, red.reduced);
    auto rep = solve_almost_pell_via_jacobian(c, target, l_bound);
    JacobianSolution<F> out;
    out.status = rep.status;
    out.delta = rep.delta;
    out.relation = rep.relation;
    out.l_bound = rep.l_bound;
    out.tested = rep.tested;
    if (!out.found()) return out;
    UniPoly<F> lift = UniPoly<F>::constant(F(1));
    for (const auto& [g, k] : red.removed) lift = lift * g.pow(static_cast<unsigned>(k));
    if (rep.witness) {
        out.A = rep.witness->A * lift;
        out.B = rep.witness->B * lift;
        out.c = rep.witness->beta / target.beta;
        if (out.A * out.A - d * out.B * out.B != UniPoly<F>::constant(out.c) * f)
            throw Error(ErrorCode::InternalVerificationFailure, "Jacobian witness fails A^2-DB^2=cF");
    } else {
        const auto ql = embed_poly<F>(lift);
        out.extended = true;
        out.extended_A = rep.extended->A * ql;
        out.extended_B = rep.extended->B * ql;
        out.extended_c = rep.extended->beta / Quad<F>(target.beta);
        const auto qd = embed_poly<F>(d);
        if (out.extended_A * out.extended_A - qd * out.extended_B * out.extended_B !=
            UniPoly<Quad<F>>::constant(out.extended_c) * embed_poly<F>(f))
            throw Error(ErrorCode::InternalVerificationFailure, "extended Jacobian witness fails A^2-DB^2=cF");
    }
    return out;
}

inline constexpr std::size_t kDefaultExponentBoxCap = 4096;

/// Exponent vectors a (0 <= a_i <= max_exponents_i) for which
/// A^2 - D B^2 = prod (X - roots_i)^a_i has a solution with B != 0 found by
/// the relation search, counting solutions up to a constant or over
/// K(sqrt(delta)). Vectors come out in lexicographic order.
template <class F>
std::vector<std::vector<int>> solvable_exponents(const HyperCurve<F>& c, const std::vector<F>& roots,
                                                 const std::vector<int>& max_exponents, long l_bound,
                                                 std::size_t max_volume = kDefaultExponentBoxCap) {
    if (roots.size() != max_exponents.size()) throw Error(ErrorCode::InvalidArgument, "one bound per root is required");
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (roots[i] == roots[j]) throw Error(ErrorCode::InvalidArgument, "roots must be distinct");
    double volume = 1;
    for (int e : max_exponents) {
        if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent bound");
        volume *= e + 1;
    }
    if (volume > static_cast<double>(max_volume)) throw Error(ErrorCode::BudgetExceeded, "exponent box too large");
    std::vector<std::vector<int>> out;
    std::vector<int> a(roots.size(), 0);
    for (;;) {
        UniPoly<F> f = UniPoly<F>::constant(F(1));
        for (std::size_t i = 0; i < roots.size(); ++i) f = f * UniPoly<F>::linear(roots[i]).pow(static_cast<unsigned>(a[i]));
        auto red = reduce_common_roots(c.D(), f);
        auto rep = solve_almost_pell_via_jacobian(c, factor_target(c.D(), red.reduced), l_bound);
        if (rep.status != AlmostPellStatus::NotWithin) out.push_back(a);
        std::size_t i = a.size();
        while (i > 0 && ++a[i - 1] > max_exponents[i - 1]) a[--i] = 0;
        if (i == 0) break;
    }
    return out;
}

}  // namespace polypell
