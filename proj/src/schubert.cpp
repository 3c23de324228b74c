#include "tautring/schubert.hpp"

#include "tautring/expr.hpp"

#include <sstream>
#include <stdexcept>

namespace tautring {

namespace {

bool in_box(int a, int b) { return a >= b && b >= 0 && a <= 4; }

// Pieri rule for the special class s(p): sum over horizontal strips.
SchubertElement mul_special(const SchubertElement& e, int p) {
    SchubertElement r;
    for (const auto& [ab, coeff] : e.terms) {
        auto [a, b] = ab;
        // new shape (c,d): c >= a >= d >= b, c+d = a+b+p, c <= 4
        for (int c = a; c <= 4; ++c) {
            int d = a + b + p - c;
            if (d >= b && d <= a && in_box(c, d)) r.add({c, d}, coeff);
        }
    }
    return r;
}

// Multiplication by s(1,1) stacks a full column: (a,b) -> (a+1,b+1).
SchubertElement mul_column(const SchubertElement& e) {
    SchubertElement r;
    for (const auto& [ab, coeff] : e.terms)
        if (in_box(ab.first + 1, ab.second + 1)) r.add({ab.first + 1, ab.second + 1}, coeff);
    return r;
}

} // namespace

SchubertElement SchubertElement::sigma(int a, int b) {
    if (!in_box(a, b)) throw std::invalid_argument("schubert: partition outside the 2x4 box");
    SchubertElement e;
    e.terms[{a, b}] = Rational(1);
    return e;
}

int SchubertElement::homogeneous_codim() const {
    int codim = -1;
    for (const auto& [ab, c] : terms) {
        int d = ab.first + ab.second;
        if (codim == -1) codim = d;
        else if (codim != d) return -1;
    }
    return codim;
}

void SchubertElement::add(const std::pair<int, int>& p, const Rational& c) {
    Rational& slot = terms[p];
    slot += c;
    if (slot.is_zero()) terms.erase(p);
}

SchubertElement SchubertElement::operator+(const SchubertElement& o) const {
    SchubertElement r = *this;
    for (const auto& [p, c] : o.terms) r.add(p, c);
    return r;
}

SchubertElement SchubertElement::operator-(const SchubertElement& o) const {
    SchubertElement r = *this;
    for (const auto& [p, c] : o.terms) r.add(p, -c);
    return r;
}

SchubertElement SchubertElement::operator*(const Rational& c) const {
    SchubertElement r;
    if (c.is_zero()) return r;
    for (const auto& [p, k] : terms) r.terms[p] = k * c;
    return r;
}

SchubertElement SchubertElement::operator*(const SchubertElement& o) const {
    // Decompose each right-hand basis class as s(1,1)^b * s(a-b) (Giambelli
    // in the two-row case) and apply column stacking plus Pieri.
    SchubertElement r;
    for (const auto& [ab, coeff] : o.terms) {
        SchubertElement piece = *this * coeff;
        for (int j = 0; j < ab.second; ++j) piece = mul_column(piece);
        if (ab.first > ab.second) piece = mul_special(piece, ab.first - ab.second);
        r = r + piece;
    }
    return r;
}

std::string SchubertElement::text() const {
    if (terms.empty()) return "0";
    std::ostringstream o;
    bool first = true;
    for (const auto& [ab, c] : terms) {
        Rational a = c;
        if (!first) {
            o << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        } else if (a.sign() < 0) {
            o << "-";
            a = -a;
        }
        if (!(a == Rational(1))) o << a.str() << "*";
        o << "s(" << ab.first << "," << ab.second << ")";
        first = false;
    }
    return o.str();
}

Rational integrate_grass(const SchubertElement& e) {
    auto it = e.terms.find({4, 4});
    return it == e.terms.end() ? Rational(0) : it->second;
}

std::vector<SchubertElement> chern_sym3_quotient() {
    // Chern roots 3a, 2a+b, a+2b, 3b with e_1 = s(1), e_2 = s(1,1);
    // expanded in the elementary symmetric functions of a, b:
    //   c_1 = 6 e_1, c_2 = 11 e_1^2 + 10 e_2,
    //   c_3 = 6 e_1^3 + 30 e_1 e_2, c_4 = 18 e_1^2 e_2 + 9 e_2^2.
    SchubertElement e1 = SchubertElement::sigma(1);
    SchubertElement e2 = SchubertElement::sigma(1, 1);
    std::vector<SchubertElement> c(5);
    c[0] = SchubertElement::sigma(0);
    c[1] = e1 * Rational(6);
    c[2] = e1 * e1 * Rational(11) + e2 * Rational(10);
    c[3] = e1 * e1 * e1 * Rational(6) + e1 * e2 * Rational(30);
    c[4] = e1 * e1 * e2 * Rational(18) + e2 * e2 * Rational(9);
    return c;
}

SchubertElement schubert_from_lcc(const Polynomial& P) {
    if (P.ring() != RingTag::Fano)
        throw std::invalid_argument("schubert_from_lcc: expected a Fano-ring polynomial");
    SchubertElement r;
    for (const auto& [mono, coeff] : P.terms()) {
        SchubertElement piece = SchubertElement::sigma(0) * coeff;
        for (const Gen& g : mono.factors) {
            if (g.kind == GenKind::Fl) piece = piece * SchubertElement::sigma(1);
            else if (g.kind == GenKind::Fc) piece = piece * SchubertElement::sigma(1, 1);
            else
                throw std::invalid_argument(
                    "schubert_from_lcc: only l and cc atoms are admitted");
        }
        r = r + piece;
    }
    return r;
}

Rational integrate_fano(const Polynomial& P) {
    if (P.homogeneous_codim() != 4)
        throw std::invalid_argument("integrate_fano: expected a homogeneous codim-4 class");
    return integrate_grass(schubert_from_lcc(P) * chern_sym3_quotient()[4]);
}

namespace {

SchubertElement eval_schubert(const Expr& e) {
    switch (e.kind) {
        case Expr::Lit: return SchubertElement::sigma(0) * e.lit;
        case Expr::Atom: {
            if (e.name == "s" && (e.args.size() == 1 || e.args.size() == 2)) {
                int a = std::stoi(e.args[0]);
                int b = e.args.size() == 2 ? std::stoi(e.args[1]) : 0;
                if (!(a >= b && b >= 0 && a <= 4))
                    throw ParseError("s(a,b): partition outside the 2x4 box", e.line, e.col);
                return SchubertElement::sigma(a, b);
            }
            throw ParseError("unknown generator '" + e.name + "' for the Grassmannian ring",
                             e.line, e.col);
        }
        case Expr::Add: return eval_schubert(e.children[0]) + eval_schubert(e.children[1]);
        case Expr::Sub: return eval_schubert(e.children[0]) - eval_schubert(e.children[1]);
        case Expr::Mul: return eval_schubert(e.children[0]) * eval_schubert(e.children[1]);
        case Expr::Neg: return eval_schubert(e.children[0]) * Rational(-1);
        case Expr::Pow: {
            SchubertElement base = eval_schubert(e.children[0]);
            SchubertElement r = SchubertElement::sigma(0);
            for (unsigned i = 0; i < e.exponent; ++i) r = r * base;
            return r;
        }
    }
    throw std::logic_error("eval_schubert: unreachable");
}

} // namespace

SchubertElement parse_schubert(const std::string& text) {
    return eval_schubert(parse_expr(text));
}

} // namespace tautring
