#pragma once

#include "tautring/poly.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tautring {

// Element of H*(G(2,6),Q) in the Schubert basis: partitions (a,b) with
// 4 >= a >= b >= 0 inside the 2x4 box; s(4,4) is the point class.
class SchubertElement {
public:
    std::map<std::pair<int, int>, Rational> terms; // nonzero coefficients only

    static SchubertElement zero() { return SchubertElement(); }
    static SchubertElement sigma(int a, int b = 0);

    bool is_zero() const { return terms.empty(); }
    // -1 if mixed or zero, else the common a+b.
    int homogeneous_codim() const;

    void add(const std::pair<int, int>& p, const Rational& c);

    SchubertElement operator+(const SchubertElement& o) const;
    SchubertElement operator-(const SchubertElement& o) const;
    SchubertElement operator*(const SchubertElement& o) const;
    SchubertElement operator*(const Rational& c) const;

    friend bool operator==(const SchubertElement& x, const SchubertElement& y) {
        return x.terms == y.terms;
    }

    std::string text() const; // canonical form, e.g. "14*s(4,4)"
};

// Coefficient of the point class s(4,4); zero for lower-codim classes.
Rational integrate_grass(const SchubertElement& e);

// Total Chern class c_0..c_4 of the third symmetric power of the rank-2
// bundle with c_1 = s(1), c_2 = s(1,1) (Chern roots 3a, 2a+b, a+2b, 3b).
std::vector<SchubertElement> chern_sym3_quotient();

// Substitute l -> s(1), cc -> s(1,1) into a polynomial in l, cc only.
SchubertElement schubert_from_lcc(const Polynomial& P);

// Integral over the codim-4 zero locus cut out by the symmetric-cube
// section: integrate_grass(P(s1,s11) * c_4(Sym^3 E)). P in l, cc, codim 4.
Rational integrate_fano(const Polynomial& P);

// Parse an expression in atoms s(a,b) (and rational literals) into a class.
SchubertElement parse_schubert(const std::string& text);

} // namespace tautring
