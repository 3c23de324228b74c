#pragma once

#include "tautring/rational.hpp"

#include <cstddef>
#include <vector>

namespace tautring {

// Dense matrix over Q. Only used for the rank / kernel computations behind
// the independence checks, so no effort is spent on anything fancier.
class RatMatrix {
public:
    RatMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RatMatrix identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rational& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const Rational& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

private:
    size_t rows_, cols_;
    std::vector<Rational> data_;
};

// Exact rank via fraction-free (Bareiss) elimination on a cleared-denominator
// integer copy.
size_t mat_rank(const RatMatrix& m);

// Basis of the right kernel {v : M v = 0}, exact, via reduced row echelon form.
std::vector<std::vector<Rational>> solve_nullspace(const RatMatrix& m);

// Exact inverse; throws std::domain_error if singular.
RatMatrix mat_inverse(const RatMatrix& m);

} // namespace tautring
