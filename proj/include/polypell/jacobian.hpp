#pragma once

#include "polypell/curve.hpp"
#include "polypell/quad.hpp"
#include "polypell/ratfunc.hpp"
#include "polypell/rational.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <type_traits>
#include <vector>

namespace polypell {

/// f = (R + YS) / prod (X - x)^k with div f equal to the queried divisor.
template <class F>
struct PrincipalityCertificate {
    UniPoly<F> R, S;
    std::vector<std::pair<F, int>> denominator;
    Divisor<F> divisor;
};

namespace detail {

template <class F>
using Matrix = std::vector<std::vector<F>>;

/// Kernel basis of m (rows of length cols) by Gauss-Jordan elimination,
/// pivoting on the smallest entry.
template <class F>
std::vector<std::vector<F>> kernel(Matrix<F> m, int cols) {
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int c = 0; c < cols && r < m.size(); ++c) {
        std::size_t best = m.size();
        for (std::size_t i = r; i < m.size(); ++i) {
            if (coeff_is_zero(m[i][c])) continue;
            if (best == m.size() || size_hint(m[i][c]) < size_hint(m[best][c])) best = i;
        }
        if (best == m.size()) continue;
        std::swap(m[r], m[best]);
        const F inv = F(1) / m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || coeff_is_zero(m[i][c])) continue;
            const F f = m[i][c];
            for (int j = c; j < cols; ++j)
                if (!coeff_is_zero(m[r][j])) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<std::vector<F>> basis;
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<F> v(static_cast<std::size_t>(cols), F(0));
        v[free] = F(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline bool full_column_rank(const Matrix<BigRational>& m, int cols) { return kernel(m, cols).empty(); }

/// Rank can only drop under t -> t0, so full column rank at one t0 proves
/// the generic kernel trivial.
inline bool full_rank_at_specialization(const Matrix<RatFunc>& m, int cols) {
    int tried = 0;
    for (const BigRational& t0 : rationals_of_height_up_to(4)) {
        Matrix<BigRational> s;
        bool ok = true;
        for (const auto& row : m) {
            std::vector<BigRational> v;
            for (const auto& e : row) {
                auto x = e.evaluate(t0);
                if (!x) {
                    ok = false;
                    break;
                }
                v.push_back(*x);
            }
            if (!ok) break;
            s.push_back(std::move(v));
        }
        if (!ok) continue;
        if (full_column_rank(s, cols)) return true;
        if (++tried == 3) break;
    }
    return false;
}

/// a + b sqrt(delta) acting on u1 + u2 sqrt(delta), as a base-field block matrix.
inline Matrix<RatFunc> realify(const Matrix<Quad<RatFunc>>& m, int cols) {
    std::shared_ptr<const RatFunc> delta;
    for (const auto& row : m)
        for (const auto& e : row)
            if (!delta && e.delta()) delta = e.delta();
    Matrix<RatFunc> out;
    for (const auto& row : m) {
        std::vector<RatFunc> re(2 * cols), im(2 * cols);
        for (int j = 0; j < cols; ++j) {
            const RatFunc& a = row[j].rational_part();
            const RatFunc& b = row[j].irrational_part();
            re[j] = a;
            re[cols + j] = delta ? *delta * b : RatFunc(0);
            im[j] = b;
            im[cols + j] = a;
        }
        out.push_back(std::move(re));
        out.push_back(std::move(im));
    }
    return out;
}

template <class F>
bool provably_full_rank(const Matrix<F>& m, int cols) {
    if constexpr (std::is_same_v<F, RatFunc>) return full_rank_at_specialization(m, cols);
    else if constexpr (std::is_same_v<F, Quad<RatFunc>>) return full_rank_at_specialization(realify(m, cols), 2 * cols);
    else return false;
}

/// T[i][j] = coefficient of u^j in (x + u)^i, j < width.
template <class F>
std::vector<std::vector<F>> taylor_table(const F& x, int max_i, int width) {
    std::vector<std::vector<F>> t(static_cast<std::size_t>(max_i) + 1, std::vector<F>(width, F(0)));
    if (width == 0) return t;
    t[0][0] = F(1);
    for (int i = 1; i <= max_i; ++i)
        for (int j = 0; j < width; ++j) t[i][j] = x * t[i - 1][j] + (j > 0 ? t[i - 1][j - 1] : F(0));
    return t;
}

template <class F>
struct Site {
    F x;
    F delta;
    bool weierstrass = false;
    std::optional<F> root;
    long plus = 0, minus = 0;
    int k = 0;
    long e_plus = 0, e_minus = 0;
};

}  // namespace detail

/// Decides whether the degree-0 divisor is principal. Every finite point
/// must lie above an x in the field; a pair of conjugate points with
/// y outside the field must carry equal coefficients (see promote()).
/// Returns a certificate re-verified by divisor_of_function, or nullopt.
template <class F>
std::optional<PrincipalityCertificate<F>> is_principal(const HyperCurve<F>& c, const Divisor<F>& delta) {
    if (delta.has_residual()) throw Error(ErrorCode::UnsupportedSupport, "divisor has places outside the field");
    if (delta.degree() != 0) throw Error(ErrorCode::InvalidArgument, "divisor has degree " + std::to_string(delta.degree()));
    const int d = c.half_degree();

    std::vector<detail::Site<F>> sites;
    long inf_plus = 0, inf_minus = 0;
    for (const auto& [p, coef] : delta.terms()) {
        if (p.kind == PointKind::InfPlus) {
            inf_plus += coef;
            continue;
        }
        if (p.kind == PointKind::InfMinus) {
            inf_minus += coef;
            continue;
        }
        if (!(c.D()(p.x) == p.delta)) throw Error(ErrorCode::InvalidArgument, "point " + p.to_string() + " is not on the curve");
        auto it = std::find_if(sites.begin(), sites.end(), [&](const auto& s) { return s.x == p.x; });
        if (it == sites.end()) {
            detail::Site<F> s;
            s.x = p.x;
            s.delta = p.delta;
            s.weierstrass = p.is_weierstrass();
            s.root = p.root;
            sites.push_back(s);
            it = sites.end() - 1;
        }
        (p.sign >= 0 ? it->plus : it->minus) += coef;
    }

    long total_k = 0;
    for (auto& s : sites) {
        if (s.weierstrass) {
            s.k = s.plus < 0 ? static_cast<int>((-s.plus + 1) / 2) : 0;
            s.e_plus = s.plus + 2L * s.k;
        } else {
            if (!s.root && s.plus != s.minus)
                throw Error(ErrorCode::UnsupportedSupport,
                            "conjugate points above " + detail::coeff_to_string(s.x) + " have unequal coefficients");
            s.k = static_cast<int>(std::max(0L, -std::min(s.plus, s.minus)));
            s.e_plus = s.plus + s.k;
            s.e_minus = s.minus + s.k;
        }
        total_k += s.k;
    }
    const long n_plus = total_k - inf_plus, n_minus = total_k - inf_minus;
    const long big_m = std::max(n_plus, n_minus);
    const int nr = static_cast<int>(big_m) + 1;
    const int ns = static_cast<int>(std::max(0L, big_m - d + 1));
    const int cols = nr + ns;

    detail::Matrix<F> rows;
    auto blank = [&] { return std::vector<F>(static_cast<std::size_t>(cols), F(0)); };

    // pole orders at infinity: coefficients of R -+ sS above n+- vanish
    const long lowest = std::min(n_plus, n_minus) + 1 - (ns > 0 ? ns - 1 : 0);
    LaurentSeries<F> s = c.branch(static_cast<int>(std::min<long>(lowest, d)));
    for (int side : {1, -1}) {
        const long n = side > 0 ? n_plus : n_minus;
        for (long j = n + 1; j <= big_m; ++j) {
            auto row = blank();
            if (j >= 0) row[j] = F(1);
            for (int k = 0; k < ns; ++k) {
                const long e = j - k;
                if (e > d) continue;
                const F sc = s.coeff(static_cast<int>(e));
                row[nr + k] = side > 0 ? -sc : sc;
            }
            rows.push_back(std::move(row));
        }
    }

    // vanishing at the finite support
    for (const auto& st : sites) {
        const long need = std::max(st.e_plus, st.e_minus);
        if (need <= 0) continue;
        auto tt = detail::taylor_table(st.x, static_cast<int>(big_m), static_cast<int>(need));
        auto taylor_rows = [&](int offset, int count, long upto) {
            for (long j = 0; j < upto; ++j) {
                auto row = blank();
                for (int i = 0; i < count; ++i) row[offset + i] = tt[i][j];
                rows.push_back(std::move(row));
            }
        };
        if (st.weierstrass) {
            taylor_rows(0, nr, (st.e_plus + 1) / 2);
            taylor_rows(nr, ns, st.e_plus / 2);
        } else if (!st.root) {
            taylor_rows(0, nr, st.e_plus);
            taylor_rows(nr, ns, st.e_plus);
        } else {
            for (int side : {1, -1}) {
                const long e = side > 0 ? st.e_plus : st.e_minus;
                if (e <= 0) continue;
                auto y = local_sqrt_branch(c.D(), st.x, side > 0 ? *st.root : -*st.root, static_cast<int>(e));
                for (long j = 0; j < e; ++j) {
                    auto row = blank();
                    for (int i = 0; i < nr; ++i) row[i] = tt[i][j];
                    for (int k = 0; k < ns; ++k) {
                        F acc(0);
                        for (long m = 0; m <= j; ++m) acc = acc + y[m] * tt[k][j - m];
                        row[nr + k] = acc;
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
    }

    if (static_cast<int>(rows.size()) >= cols && detail::provably_full_rank(rows, cols)) return std::nullopt;
    auto ker = detail::kernel(rows, cols);
    if (ker.empty()) return std::nullopt;
    if (ker.size() > 1)
        throw Error(ErrorCode::InternalVerificationFailure,
                    "function space of a degree-0 divisor has dimension " + std::to_string(ker.size()));
    std::vector<F> v = std::move(ker[0]);
    auto first = std::find_if(v.begin(), v.end(), [](const F& x) { return !detail::coeff_is_zero(x); });
    const F scale = F(1) / *first;
    for (auto& x : v) x = x * scale;

    PrincipalityCertificate<F> cert;
    cert.R = UniPoly<F>(std::vector<F>(v.begin(), v.begin() + nr));
    cert.S = UniPoly<F>(std::vector<F>(v.begin() + nr, v.end()));
    std::vector<F> hints;
    for (const auto& st : sites) {
        if (st.k > 0) cert.denominator.emplace_back(st.x, st.k);
        hints.push_back(st.x);
    }
    cert.divisor = divisor_of_function(c, cert.R, cert.S, cert.denominator, hints);
    if (!(cert.divisor == delta))
        throw Error(ErrorCode::InternalVerificationFailure,
                    "certificate has divisor " + cert.divisor.to_string() + ", expected " + delta.to_string());
    return cert;
}

struct OrderReport {
    std::optional<int> order;  // empty: not torsion within max_order
    int max_order = 0;
};

/// Least k in 1..max_order with k * delta principal.
template <class F>
OrderReport order_of_class(const HyperCurve<F>& c, const Divisor<F>& delta, int max_order) {
    if (max_order < 1) throw Error(ErrorCode::InvalidArgument, "order bound must be positive");
    OrderReport rep;
    rep.max_order = max_order;
    for (int k = 1; k <= max_order; ++k) {
        if (is_principal(c, delta.scaled(k))) {
            rep.order = k;
            break;
        }
    }
    return rep;
}

/// Row-style Hermite normal form of the lattice spanned by the rows: upper
/// echelon, positive pivots, entries above a pivot reduced into [0, pivot).
std::vector<std::vector<long>> hermite_normal_form(const std::vector<std::vector<long>>& rows, std::size_t width);

inline constexpr std::size_t kDefaultBoxCap = 200000;

struct RelationLattice {
    std::vector<std::vector<long>> generators;  // Hermite normal form
    std::vector<long> box;
    std::size_t tested = 0;
    std::vector<std::vector<long>> relations;  // every relation found, in enumeration order
};

/// Exhaustive search of sum a_i classes_i = 0 over |a_i| <= box_i, first
/// nonzero coordinate positive, in lexicographic order. stop_at_first ends
/// the search at the first relation.
template <class F>
RelationLattice relation_lattice(const HyperCurve<F>& c, const std::vector<Divisor<F>>& classes,
                                 const std::vector<long>& box, std::size_t max_volume = kDefaultBoxCap,
                                 bool stop_at_first = false) {
    if (box.size() != classes.size()) throw Error(ErrorCode::InvalidArgument, "one bound per class is required");
    for (const auto& cl : classes)
        if (cl.degree() != 0) throw Error(ErrorCode::InvalidArgument, "class of nonzero degree");
    double volume = 1;
    for (long b : box) {
        if (b < 0) throw Error(ErrorCode::InvalidArgument, "negative box bound");
        volume *= static_cast<double>(2 * b + 1);
    }
    if (volume > static_cast<double>(max_volume))
        throw Error(ErrorCode::BudgetExceeded, "search box of volume " + std::to_string(static_cast<long long>(volume)) +
                                                   " exceeds the cap " + std::to_string(max_volume));
    RelationLattice out;
    out.box = box;
    const std::size_t n = classes.size();
    std::vector<long> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = -box[i];
    bool done = n == 0;
    while (!done) {
        auto nz = std::find_if(a.begin(), a.end(), [](long x) { return x != 0; });
        if (nz != a.end() && *nz > 0) {
            Divisor<F> sum;
            for (std::size_t i = 0; i < n; ++i)
                if (a[i] != 0) sum = sum + classes[i].scaled(a[i]);
            ++out.tested;
            if (is_principal(c, sum)) {
                out.relations.push_back(a);
                if (stop_at_first) break;
            }
        }
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (a[i] < box[i]) {
                ++a[i];
                break;
            }
            a[i] = -box[i];
            if (i == 0) done = true;
        }
    }
    out.generators = hermite_normal_form(out.relations, n);
    return out;
}

/// Data moved to K(sqrt(delta)) so that conjugate points become rational.
template <class K>
struct Promoted {
    HyperCurve<Quad<K>> curve;
    std::vector<Divisor<Quad<K>>> divisors;
};

template <class K>
CurvePoint<Quad<K>> promote_point(const HyperCurve<Quad<K>>& c, const CurvePoint<K>& p) {
    if (!p.is_finite()) return p.kind == PointKind::InfPlus ? CurvePoint<Quad<K>>::inf_plus() : CurvePoint<Quad<K>>::inf_minus();
    const Quad<K> dx(p.delta);
    std::optional<Quad<K>> root;
    if (p.sign != 0) root = c.sqrt(dx);
    return CurvePoint<Quad<K>>::finite(Quad<K>(p.x), dx, p.sign, root);
}

template <class K>
Divisor<Quad<K>> promote_divisor(const HyperCurve<Quad<K>>& c, const Divisor<K>& d) {
    if (d.has_residual()) throw Error(ErrorCode::UnsupportedSupport, "divisor has places outside the field");
    Divisor<Quad<K>> out;
    for (const auto& [p, coef] : d.terms()) out.add(promote_point(c, p), coef);
    return out;
}

/// The delta to adjoin when some divisor has conjugate points with unequal
/// coefficients; nullopt when the base field suffices. All such points must
/// share one square class. Symmetric pairs stay as they are after promotion.
template <class K>
std::optional<K> extension_needed(const std::vector<Divisor<K>>& divisors) {
    std::optional<K> delta;
    for (const auto& d : divisors) {
        for (const auto& [p, coef] : d.terms()) {
            if (!p.is_finite() || p.is_rational() || d.coefficient(involution(p)) == coef) continue;
            if (!delta) delta = p.delta;
            else if (!sqrt_in_field(p.delta / *delta))
                throw Error(ErrorCode::UnsupportedSupport, "points over two different quadratic extensions");
        }
    }
    return delta;
}

template <class K>
Promoted<K> promote(const HyperCurve<K>& c, const std::vector<Divisor<K>>& divisors, const K& delta) {
    auto dp = std::make_shared<const K>(delta);
    HyperCurve<Quad<K>> qc(embed_poly<K>(c.D()), FieldExt<Quad<K>>{dp});
    std::vector<Divisor<Quad<K>>> ds;
    for (const auto& d : divisors) ds.push_back(promote_divisor(qc, d));
    return {std::move(qc), std::move(ds)};
}

}  // namespace polypell
