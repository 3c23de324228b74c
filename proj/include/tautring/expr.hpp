#pragma once

#include "tautring/k3_model.hpp"
#include "tautring/poly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace tautring {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " +
                             std::to_string(col_)),
          line(line_),
          col(col_) {}
};

// Abstract syntax tree for the shared expression language.
// expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
// factor := atom ('^' nat)? ; atom := literal | gen | '(' expr ')' ;
// gen := name [ '(' arg (',' arg)* ')' ], each arg a number or a name.
struct Expr {
    enum Kind { Lit, Atom, Add, Sub, Mul, Pow, Neg };
    Kind kind = Lit;
    Rational lit;
    std::string name;               // Atom
    std::vector<std::string> args;  // Atom argument tokens
    std::vector<Expr> children;
    unsigned exponent = 0;  // Pow
    int line = 1, col = 1;
};

Expr parse_expr(const std::string& text);

// Evaluate the AST into a polynomial with the given ring's symbol table.
// Unknown names, wrong arities, and out-of-range indices throw ParseError.
Polynomial eval_expr(const Expr& e, RingTag ring);

// parse + eval in one go.
Polynomial parse_polynomial(const std::string& text, RingTag ring);

// Deterministic text form; parse_polynomial(print_canonical(p), ring) == p.
std::string print_canonical(const Polynomial& p);

// Deterministic text form of a tensor class: terms "c*[slot,...]" in map
// order, slots printed as 1 / ns(k) / tr(k) / pt.
std::string print_tensor(const TensorClass& t);

} // namespace tautring
