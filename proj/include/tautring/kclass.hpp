#pragma once

#include "tautring/poly.hpp"

#include <vector>

namespace tautring {

// A K-theory class in Chern-character coordinates: a (possibly negative)
// formal rank plus graded components ch_1..ch_dim as polynomials, truncated
// at the working codimension. Tensor/dual/sums are polynomial operations
// here, with no case analysis on the rank.
struct KClass {
    RingTag ring = RingTag::Hilbert;
    int dim = 0;                 // components above this codim are dropped
    Rational rank;
    std::vector<Polynomial> ch;  // ch[k-1] has codim k, k = 1..dim

    static KClass zero(RingTag ring, int dim);
    static KClass trivial(RingTag ring, int dim, const Rational& rank);
    // Line class with first Chern class t (ch = exp(t), truncated).
    static KClass line(const Polynomial& t, int dim);
    // From Chern classes c[k-1] = c_k (entries beyond the vector are zero).
    static KClass from_chern(RingTag ring, int dim, const Rational& rank,
                             const std::vector<Polynomial>& c);

    KClass operator+(const KClass& o) const;
    KClass operator-(const KClass& o) const;
    KClass operator-() const;
    KClass dual() const;                  // negates the odd components
    KClass tensor(const KClass& o) const; // ch multiplies (with rank as ch_0)
};

// Newton-identity conversion ch -> (c_1..c_top); exact, rank-independent.
std::vector<Polynomial> chern_from_ch(const KClass& k, int top);

} // namespace tautring
