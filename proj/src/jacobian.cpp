#include "polypell/jacobian.hpp"

#include <gmpxx.h>

namespace polypell {

std::vector<std::vector<long>> hermite_normal_form(const std::vector<std::vector<long>>& rows, std::size_t width) {
    std::vector<std::vector<mpz_class>> a;
    for (const auto& r : rows) {
        if (r.size() != width) throw Error(ErrorCode::InvalidArgument, "row of the wrong width");
        a.emplace_back(r.begin(), r.end());
    }
    std::size_t top = 0;
    for (std::size_t c = 0; c < width && top < a.size(); ++c) {
        for (;;) {
            std::size_t best = a.size();
            for (std::size_t i = top; i < a.size(); ++i)
                if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c]))) best = i;
            if (best == a.size()) break;
            std::swap(a[top], a[best]);
            bool clean = true;
            for (std::size_t i = top + 1; i < a.size(); ++i) {
                if (a[i][c] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[top][c].get_mpz_t());
                for (std::size_t j = c; j < width; ++j) a[i][j] -= q * a[top][j];
                if (a[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (top == a.size() || a[top][c] == 0) continue;
        if (a[top][c] < 0)
            for (auto& x : a[top]) x = -x;
        for (std::size_t i = 0; i < top; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[top][c].get_mpz_t());
            for (std::size_t j = c; j < width; ++j) a[i][j] -= q * a[top][j];
        }
        ++top;
    }
    std::vector<std::vector<long>> out;
    for (std::size_t i = 0; i < top; ++i) {
        std::vector<long> r;
        for (const auto& x : a[i]) {
            if (!x.fits_slong_p()) throw Error(ErrorCode::BudgetExceeded, "Hermite form entry overflows");
            r.push_back(x.get_si());
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace polypell
