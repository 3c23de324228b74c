#pragma once

#include "tautring/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tautring {

// Which graded-commutative ring a polynomial lives in. Generators are only
// meaningful relative to a ring; mixing tags is a programming error.
enum class RingTag : uint8_t {
    BV,       // tautological ring of S^m: o(i), L(s,i), D(i,j)
    Hilbert,  // tautological classes of S^[n] x S^l plus marked-point BV atoms
    Fano,     // CH(F) of the Fano variety of lines: l, cc, o, Ex, D(k), parameters
    PBundle,  // the P^1-bundle P over F: h, p^*l, p^*cc
    Formal,   // untyped formal symbols (lambda-expansion certificates)
};

// Generator kinds, globally enumerated. Enum order fixes the canonical
// monomial order, so do not reorder without regenerating frozen outputs.
enum class GenKind : uint8_t {
    // BV ring of S^m (also used for marked points in the Hilbert ring)
    BvO,       // o(i), codim 2
    BvL,       // L(s,i), codim 1, label = NS basis slot s
    BvD,       // D(i,j), i<j, codim 2

    // Hilbert ring, level-n atoms
    HcO,       // c_r(O_[n]), codim r = label
    HcT,       // c_s(T_n), codim s = label
    HcI,       // c_t(I_n) on the marked point idx[0], codim t = label
    HcL,       // c_1(L_s) on S^[n], codim 1, label = NS slot s

    // Fano ring
    Fl,        // l, codim 1
    Fc,        // cc = c_2(E), codim 2
    FEx,       // Ex, codim 3
    Fo,        // o, codim 4
    FD,        // D(k), codim 1, label = k
    FParC,     // constant C, codim 0
    FParCp,    // constant C', codim 0
    FParQl,    // q(l), codim 0
    FParQlInv, // 1/q(l), codim 0
    FParQD,    // q(D_j, D_k), codim 0, idx = (j,k) with j<=k

    // P^1-bundle ring over F
    Ph,        // h, codim 1
    Pl,        // p^*l, codim 1
    Pc,        // p^*cc, codim 2

    // Formal symbols for the lambda-expansion certificate
    Vd, Vl, Vlam, Vqd, Vql, VN, VM, Vad,

    // Exceptional line class c_1(L) on the nested Hilbert scheme; only alive
    // inside one step of the recursion, eliminated by the sigma pushforward.
    HcE,
};

// A single generator occurrence: kind + optional small-integer label +
// up to two factor indices.
struct Gen {
    GenKind kind;
    int32_t label = 0;
    std::array<int32_t, 2> idx{0, 0};
    uint8_t arity = 0;

    static Gen make0(GenKind k, int32_t label = 0) { return Gen{k, label, {0, 0}, 0}; }
    static Gen make1(GenKind k, int32_t i, int32_t label = 0) { return Gen{k, label, {i, 0}, 1}; }
    static Gen make2(GenKind k, int32_t i, int32_t j, int32_t label = 0) {
        if (i > j) std::swap(i, j);
        return Gen{k, label, {i, j}, 2};
    }

    int codim() const;

    auto operator<=>(const Gen&) const = default;
};

// Convenience constructors for the BV ring.
inline Gen bv_o(int i) { return Gen::make1(GenKind::BvO, i); }
inline Gen bv_l(int s, int i) { return Gen::make1(GenKind::BvL, i, s); }
inline Gen bv_d(int i, int j) {
    if (i == j) throw std::invalid_argument("D(i,i) is not a generator");
    return Gen::make2(GenKind::BvD, i, j);
}

// Sorted multiset of generators. Empty factor list is the unit monomial.
struct Monomial {
    std::vector<Gen> factors; // kept sorted

    Monomial() = default;
    explicit Monomial(std::vector<Gen> f);

    static Monomial unit() { return Monomial(); }
    static Monomial single(const Gen& g) { return Monomial(std::vector<Gen>{g}); }

    int codim() const;
    bool is_unit() const { return factors.empty(); }

    Monomial operator*(const Monomial& o) const;

    auto operator<=>(const Monomial&) const = default;
};

// Sparse polynomial: monomial -> nonzero rational coefficient.
class Polynomial {
public:
    explicit Polynomial(RingTag ring) : ring_(ring) {}
    Polynomial(RingTag ring, const Rational& c); // constant
    Polynomial(RingTag ring, const Gen& g);      // single generator

    static Polynomial zero(RingTag ring) { return Polynomial(ring); }
    static Polynomial one(RingTag ring) { return Polynomial(ring, Rational(1)); }

    RingTag ring() const { return ring_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c);
    Rational coeff(const Monomial& m) const;

    // -1 if not homogeneous or zero, else the common codim.
    int homogeneous_codim() const;
    int max_codim() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;

    // Product with terms of codim > maxcodim dropped (dimension truncation).
    Polynomial mul_trunc(const Polynomial& o, int maxcodim) const;
    Polynomial truncate(int maxcodim) const;
    // The part of exact codimension k.
    Polynomial graded_part(int k) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.ring_ == b.ring_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
    void check_ring(const Polynomial& o) const;

    RingTag ring_;
    std::map<Monomial, Rational> terms_;
};

Polynomial poly_pow(const Polynomial& p, unsigned e);

} // namespace tautring
