#include "polypell/poly.hpp"
#include "polypell/rational.hpp"

#include <cstdlib>

namespace polypell {

namespace {

using ZPoly = std::vector<mpz_class>;  // ascending, no trailing zeros

void trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Primitive integer multiple of p with positive leading coefficient.
ZPoly primitive_integer(const UniPoly<BigRational>& p) {
    mpz_class l = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
    ZPoly z;
    mpz_class g = 0;
    for (const auto& c : p.coeffs()) {
        z.push_back(c.numerator() * (l / c.denominator()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
    }
    if (z.back() < 0) g = -g;
    for (auto& c : z) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return z;
}

mpz_class max_norm(const ZPoly& p) {
    mpz_class m = 0;
    for (const auto& c : p)
        if (abs(c) > m) m = abs(c);
    return m;
}

mpz_class evaluate(const ZPoly& p, const mpz_class& x) {
    mpz_class acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Symmetric xi-adic digits of v.
ZPoly reconstruct(mpz_class v, const mpz_class& xi) {
    ZPoly g;
    const mpz_class half = xi / 2;
    while (v != 0) {
        mpz_class d;
        mpz_fdiv_r(d.get_mpz_t(), v.get_mpz_t(), xi.get_mpz_t());
        if (d > half) d -= xi;
        g.push_back(d);
        v = (v - d) / xi;
    }
    return g;
}

bool divides(const ZPoly& b, ZPoly a) {
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size()) return a.empty();
    for (std::size_t k = a.size(); k-- > db;) {
        if (a[k] == 0) continue;
        if (!mpz_divisible_p(a[k].get_mpz_t(), b.back().get_mpz_t())) return false;
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a[k].get_mpz_t(), b.back().get_mpz_t());
        for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= q * b[j];
    }
    trim(a);
    return a.empty();
}

std::optional<ZPoly> heuristic_gcd(const ZPoly& a, const ZPoly& b) {
    const std::size_t deg = std::max(a.size(), b.size());
    mpz_class xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) * deg > 4000000) return std::nullopt;
        mpz_class g;
        mpz_class va = evaluate(a, xi), vb = evaluate(b, xi);
        mpz_gcd(g.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
        ZPoly r = reconstruct(g, xi);
        trim(r);
        if (!r.empty()) {
            mpz_class c = 0;
            for (const auto& x : r) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
            if (r.back() < 0) c = -c;
            for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
            if (divides(r, a) && divides(r, b)) return r;
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

}  // namespace

UniPoly<BigRational> poly_gcd(UniPoly<BigRational> a, UniPoly<BigRational> b) {
    using QP = UniPoly<BigRational>;
    if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "gcd(0, 0)");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return QP::constant(BigRational(1));
    if (auto g = heuristic_gcd(primitive_integer(a), primitive_integer(b))) {
        std::vector<BigRational> v;
        for (const auto& c : *g) v.emplace_back(c);
        return QP(std::move(v)).monic();
    }
    return poly_gcd<BigRational>(std::move(a), std::move(b));
}

}  // namespace polypell
