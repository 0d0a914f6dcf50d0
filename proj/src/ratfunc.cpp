#include "polypell/ratfunc.hpp"

#include "polypell/laurent.hpp"

#include <algorithm>
#include <set>

namespace polypell {

RatFunc::RatFunc(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = QPoly::constant(1);
        return;
    }
    if (den_.degree() > 0) {
        QPoly g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_quotient(num_, g);
            den_ = exact_quotient(den_, g);
        }
    }
    if (!den_.lc().is_one()) {
        BigRational inv = BigRational(1) / den_.lc();
        num_ = inv * num_;
        den_ = inv * den_;
    }
}

BigRational RatFunc::constant_value() const {
    if (!is_constant()) throw Error(ErrorCode::InvalidArgument, "rational function depends on t");
    return num_.coeff(0);
}

std::optional<BigRational> RatFunc::evaluate(const BigRational& t0) const {
    BigRational d = den_(t0);
    if (d.is_zero()) return std::nullopt;
    return num_(t0) / d;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

namespace {

RatFunc make_reduced(QPoly num, QPoly den) { return RatFunc(std::move(num), std::move(den)); }

}  // namespace

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        if (a.den_.degree() == 0) return RatFunc(a.num_ + b.num_);
        return make_reduced(a.num_ + b.num_, a.den_);
    }
    return make_reduced(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.den_.degree() == 0 && b.den_.degree() == 0) return RatFunc(a.num_ * b.num_);
    // cross-cancel first to keep the gcds small
    QPoly g1 = poly_gcd(a.num_, b.den_);
    QPoly g2 = poly_gcd(b.num_, a.den_);
    QPoly n = exact_quotient(a.num_, g1) * exact_quotient(b.num_, g2);
    QPoly d = exact_quotient(a.den_, g2) * exact_quotient(b.den_, g1);
    RatFunc r;
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    if (!r.den_.lc().is_one()) {
        BigRational inv = BigRational(1) / r.den_.lc();
        r.num_ = inv * r.num_;
        r.den_ = inv * r.den_;
    }
    return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function division by zero");
    return a * RatFunc(b.den_, b.num_);
}

std::string RatFunc::to_string() const {
    std::string n = num_.to_string("t");
    if (den_.degree() == 0) return n;
    return "(" + n + ")/(" + den_.to_string("t") + ")";
}

std::optional<RatFunc> sqrt_in_field(const RatFunc& x) {
    if (x.is_zero()) return RatFunc();
    auto n = exact_poly_sqrt(x.numerator());
    if (!n) return std::nullopt;
    auto d = exact_poly_sqrt(x.denominator());
    if (!d) return std::nullopt;
    return RatFunc(*n, *d);
}

int canonical_sign(const RatFunc& x) {
    if (x.is_zero()) return 0;
    return x.numerator().lc().sign();
}

std::size_t size_hint(const RatFunc& x) {
    std::size_t s = 0;
    for (const auto& c : x.numerator().coeffs()) s += size_hint(c) + 8;
    for (const auto& c : x.denominator().coeffs()) s += size_hint(c) + 8;
    return s;
}

namespace {

using QP = UniPoly<BigRational>;

QP scaled_positive(const QP& p) {
    BigRational lc = p.lc();
    if (lc.sign() < 0) lc = -lc;
    return p * QP::constant(BigRational(1) / lc);
}

std::vector<QP> sturm_chain(const QP& p) {
    std::vector<QP> chain{scaled_positive(p), scaled_positive(p.derivative())};
    while (chain.back().degree() > 0) {
        QP r = chain[chain.size() - 2] % chain.back();
        if (r.is_zero()) break;
        chain.push_back(scaled_positive(-r));
    }
    return chain;
}

int sign_changes(const std::vector<QP>& chain, const BigRational& x) {
    int changes = 0, last = 0;
    for (const auto& q : chain) {
        const int s = q(x).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

mpz_class floor_of(const BigRational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.numerator().get_mpz_t(), x.denominator().get_mpz_t());
    return q;
}

}  // namespace

// Rational roots of a squarefree primitive integer polynomial have denominators
// dividing its leading coefficient a, so an isolating interval of width below
// 1/a holds at most one candidate.
std::vector<BigRational> roots_in_field(const UniPoly<BigRational>& p) {
    std::vector<BigRational> roots;
    if (p.degree() <= 0) return roots;
    std::size_t low = 0;
    while (p.coeff(static_cast<int>(low)).is_zero()) ++low;
    if (low > 0) roots.emplace_back(0);
    QP q(std::vector<BigRational>(p.coeffs().begin() + static_cast<std::ptrdiff_t>(low), p.coeffs().end()));
    if (q.degree() <= 0) return roots;
    q = exact_quotient(q, poly_gcd(q, q.derivative()));
    if (q.degree() == 1) {
        roots.push_back(-q.coeff(0) / q.coeff(1));
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    mpz_class lcm = 1;
    for (const auto& c : q.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
    mpz_class content = 0;
    for (const auto& c : q.coeffs()) {
        mpz_class z = c.numerator() * (lcm / c.denominator());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
    }
    mpz_class lead = q.lc().numerator() * (lcm / q.lc().denominator()) / content;
    lead = abs(lead);

    BigRational cauchy = 0;
    for (int i = 0; i < q.degree(); ++i) {
        BigRational r = q.coeff(i) / q.lc();
        if (r.sign() < 0) r = -r;
        if (cauchy < r) cauchy = r;
    }
    BigRational bound = 1;
    while (bound <= cauchy + 1) bound *= 2;

    const auto chain = sturm_chain(q);
    const BigRational width(mpz_class(1), lead);
    struct Interval {
        BigRational lo, hi;
        int vlo, vhi;
    };
    std::vector<Interval> todo{{-bound, bound, sign_changes(chain, -bound), sign_changes(chain, bound)}};
    std::set<BigRational> found;
    while (!todo.empty()) {
        Interval iv = todo.back();
        todo.pop_back();
        const int count = iv.vlo - iv.vhi;  // roots in (lo, hi]
        if (count == 0) continue;
        if (count == 1 && iv.hi - iv.lo < width) {
            const mpz_class y = floor_of(iv.hi * BigRational(lead));
            const BigRational cand(y, lead);
            if (iv.lo < cand && q(cand).is_zero()) found.insert(cand);
            continue;
        }
        const BigRational mid = (iv.lo + iv.hi) / BigRational(2);
        const int vm = sign_changes(chain, mid);
        todo.push_back({iv.lo, mid, iv.vlo, vm});
        todo.push_back({mid, iv.hi, vm, iv.vhi});
    }
    roots.insert(roots.end(), found.begin(), found.end());
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<RatFunc> roots_in_field(const UniPoly<RatFunc>& p) {
    std::vector<RatFunc> out;
    if (p.degree() <= 0) return out;
    // clear t-denominators, then a constant root must kill every t-slice
    QPoly common = QPoly::constant(1);
    for (const auto& c : p.coeffs()) common = common * exact_quotient(c.denominator(), poly_gcd(common, c.denominator()));
    std::vector<QPoly> cleared;
    int tdeg = 0;
    for (const auto& c : p.coeffs()) {
        cleared.push_back(c.numerator() * exact_quotient(common, c.denominator()));
        tdeg = std::max(tdeg, cleared.back().degree());
    }
    QPoly g;
    for (int j = 0; j <= tdeg; ++j) {
        std::vector<BigRational> slice;
        for (const auto& c : cleared) slice.push_back(c.coeff(j));
        QPoly s(std::move(slice));
        if (s.is_zero()) continue;
        g = g.is_zero() ? s : poly_gcd(g, s);
    }
    if (g.is_zero()) return out;
    for (const auto& r : roots_in_field(g)) out.emplace_back(r);
    return out;
}

std::optional<UniPoly<BigRational>> specialize_poly(const UniPoly<RatFunc>& p, const BigRational& t0) {
    std::vector<BigRational> v;
    for (const auto& c : p.coeffs()) {
        auto e = c.evaluate(t0);
        if (!e) return std::nullopt;
        v.push_back(*e);
    }
    return UniPoly<BigRational>(std::move(v));
}

int t_degree(const UniPoly<RatFunc>& p) {
    int d = 0;
    for (const auto& c : p.coeffs()) {
        if (!c.is_polynomial()) throw Error(ErrorCode::InvalidArgument, "coefficient is not a polynomial in t");
        d = std::max(d, c.numerator().degree());
    }
    return d;
}

}  // namespace polypell
