#include "tautring/matrix.hpp"

#include <stdexcept>

namespace tautring {

RatMatrix RatMatrix::identity(size_t n) {
    RatMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

size_t mat_rank(const RatMatrix& m) {
    size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    // Clear denominators row by row, then run Bareiss.
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (size_t r = 0; r < rows; ++r) {
        mpz_class lcm = 1;
        for (size_t c = 0; c < cols; ++c)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.at(r, c).den().get_mpz_t());
        for (size_t c = 0; c < cols; ++c)
            a[r][c] = m.at(r, c).num() * (lcm / m.at(r, c).den());
    }

    mpz_class prev = 1;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (size_t r = rank + 1; r < rows; ++r) {
            for (size_t c = col + 1; c < cols; ++c) {
                mpz_class t = a[rank][col] * a[r][c] - a[r][col] * a[rank][c];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[r][c] = t;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(std::vector<std::vector<Rational>>& a) {
    std::vector<size_t> pivots;
    if (a.empty()) return pivots;
    size_t rows = a.size(), cols = a[0].size(), lead = 0;
    for (size_t col = 0; col < cols && lead < rows; ++col) {
        size_t piv = lead;
        while (piv < rows && a[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[lead]);
        Rational inv = a[lead][col].inverse();
        for (size_t c = col; c < cols; ++c) a[lead][c] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == lead || a[r][col].is_zero()) continue;
            Rational f = a[r][col];
            for (size_t c = col; c < cols; ++c) a[r][c] -= f * a[lead][c];
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

} // namespace

std::vector<std::vector<Rational>> solve_nullspace(const RatMatrix& m) {
    size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) a[r][c] = m.at(r, c);

    std::vector<size_t> pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (size_t p : pivots) is_pivot[p] = true;

    std::vector<std::vector<Rational>> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols);
        v[free] = Rational(1);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

RatMatrix mat_inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::domain_error("mat_inverse: not square");
    size_t n = m.rows();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) a[r][c] = m.at(r, c);
        a[r][n + r] = Rational(1);
    }
    std::vector<size_t> pivots = rref(a);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw std::domain_error("mat_inverse: singular matrix");
    RatMatrix inv(n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) inv.at(r, c) = a[r][n + c];
    return inv;
}

} // namespace tautring
