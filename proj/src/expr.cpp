#include "tautring/expr.hpp"

#include <cctype>
#include <sstream>

namespace tautring {

namespace {

struct Token {
    enum Kind { Num, Name, Sym, End } kind = End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            if (s_[pos_] == '\n') { ++line_; col_ = 1; }
            else ++col_;
            ++pos_;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= s_.size()) { tok_.kind = Token::End; tok_.text.clear(); return; }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_, ++col_;
            tok_.kind = Token::Num;
            tok_.text = s_.substr(start, pos_ - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                    s_[pos_] == '\''))
                ++pos_, ++col_;
            tok_.kind = Token::Name;
            tok_.text = s_.substr(start, pos_ - start);
            return;
        }
        if (std::string("+-*^(),/").find(c) != std::string::npos) {
            tok_.kind = Token::Sym;
            tok_.text = std::string(1, c);
            ++pos_, ++col_;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) {}

    Expr parse() {
        Expr e = expr();
        if (lex_.peek().kind != Token::End)
            throw ParseError("trailing input '" + lex_.peek().text + "'", lex_.peek().line,
                             lex_.peek().col);
        return e;
    }

private:
    bool is_sym(const char* s) const {
        return lex_.peek().kind == Token::Sym && lex_.peek().text == s;
    }
    Token expect_sym(const char* s) {
        if (!is_sym(s))
            throw ParseError(std::string("expected '") + s + "'", lex_.peek().line,
                             lex_.peek().col);
        return lex_.next();
    }

    Expr expr() {
        Expr lhs;
        if (is_sym("-")) {
            Token t = lex_.next();
            lhs.kind = Expr::Neg;
            lhs.line = t.line;
            lhs.col = t.col;
            lhs.children.push_back(term());
        } else {
            lhs = term();
        }
        while (is_sym("+") || is_sym("-")) {
            Token op = lex_.next();
            Expr n;
            n.kind = op.text == "+" ? Expr::Add : Expr::Sub;
            n.line = op.line;
            n.col = op.col;
            n.children.push_back(std::move(lhs));
            n.children.push_back(term());
            lhs = std::move(n);
        }
        return lhs;
    }

    Expr term() {
        Expr lhs = factor();
        while (is_sym("*")) {
            Token op = lex_.next();
            Expr n;
            n.kind = Expr::Mul;
            n.line = op.line;
            n.col = op.col;
            n.children.push_back(std::move(lhs));
            n.children.push_back(factor());
            lhs = std::move(n);
        }
        return lhs;
    }

    Expr factor() {
        Expr base = atom();
        if (is_sym("^")) {
            Token op = lex_.next();
            Token e = lex_.next();
            if (e.kind != Token::Num)
                throw ParseError("expected nonnegative integer exponent", e.line, e.col);
            Expr n;
            n.kind = Expr::Pow;
            n.line = op.line;
            n.col = op.col;
            n.exponent = static_cast<unsigned>(std::stoul(e.text));
            n.children.push_back(std::move(base));
            return n;
        }
        return base;
    }

    Expr atom() {
        Token t = lex_.peek();
        if (t.kind == Token::Num) {
            lex_.next();
            Expr e;
            e.kind = Expr::Lit;
            e.line = t.line;
            e.col = t.col;
            std::string text = t.text;
            if (is_sym("/")) {
                lex_.next();
                Token d = lex_.next();
                if (d.kind != Token::Num)
                    throw ParseError("expected integer denominator", d.line, d.col);
                text += "/" + d.text;
            }
            e.lit = Rational::from_string(text);
            return e;
        }
        if (t.kind == Token::Name) {
            lex_.next();
            Expr e;
            e.kind = Expr::Atom;
            e.line = t.line;
            e.col = t.col;
            e.name = t.text;
            if (is_sym("(")) {
                lex_.next();
                while (true) {
                    Token a = lex_.next();
                    if (a.kind != Token::Num && a.kind != Token::Name)
                        throw ParseError("expected generator argument", a.line, a.col);
                    e.args.push_back(a.text);
                    if (is_sym(",")) { lex_.next(); continue; }
                    expect_sym(")");
                    break;
                }
            }
            return e;
        }
        if (is_sym("(")) {
            lex_.next();
            Expr e = expr();
            expect_sym(")");
            return e;
        }
        throw ParseError("expected literal, generator, or '('", t.line, t.col);
    }

    Lexer lex_;
};

int arg_int(const Expr& e, size_t k) {
    const std::string& s = e.args[k];
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("expected integer argument in " + e.name, e.line, e.col);
    return std::stoi(s);
}

[[noreturn]] void unknown(const Expr& e) {
    throw ParseError("unknown generator '" + e.name + "' for this ring (or wrong arity)",
                     e.line, e.col);
}

Gen resolve_atom(const Expr& e, RingTag ring) {
    const size_t n = e.args.size();
    switch (ring) {
        case RingTag::BV:
            if (e.name == "o" && n == 1) return bv_o(arg_int(e, 0));
            if (e.name == "L" && n == 2) return bv_l(arg_int(e, 0), arg_int(e, 1));
            if (e.name == "D" && n == 2) {
                int i = arg_int(e, 0), j = arg_int(e, 1);
                if (i == j) throw ParseError("D(i,i) is not a generator", e.line, e.col);
                return bv_d(i, j);
            }
            unknown(e);
        case RingTag::Hilbert:
            if (e.name == "c" && n == 2 && e.args[0] == "T")
                return Gen::make0(GenKind::HcT, arg_int(e, 1));
            if (e.name == "c" && n == 2 && e.args[0] == "O")
                return Gen::make0(GenKind::HcO, arg_int(e, 1));
            if (e.name == "c" && n == 3 && e.args[0] == "I")
                return Gen::make1(GenKind::HcI, arg_int(e, 2), arg_int(e, 1));
            if (e.name == "L" && n == 1) return Gen::make0(GenKind::HcL, arg_int(e, 0));
            unknown(e);
        case RingTag::Fano:
            if (e.name == "l" && n == 0) return Gen::make0(GenKind::Fl);
            if (e.name == "cc" && n == 0) return Gen::make0(GenKind::Fc);
            if (e.name == "o" && n == 0) return Gen::make0(GenKind::Fo);
            if (e.name == "Ex" && n == 0) return Gen::make0(GenKind::FEx);
            if (e.name == "C" && n == 0) return Gen::make0(GenKind::FParC);
            if (e.name == "Cprime" && n == 0) return Gen::make0(GenKind::FParCp);
            if (e.name == "D" && n == 1) return Gen::make0(GenKind::FD, arg_int(e, 0));
            if (e.name == "q" && n == 1 && e.args[0] == "l")
                return Gen::make0(GenKind::FParQl);
            if (e.name == "qinv" && n == 1 && e.args[0] == "l")
                return Gen::make0(GenKind::FParQlInv);
            if (e.name == "q" && n == 3 && e.args[0] == "D")
                return Gen::make2(GenKind::FParQD, arg_int(e, 1), arg_int(e, 2));
            unknown(e);
        case RingTag::PBundle:
            if (e.name == "h" && n == 0) return Gen::make0(GenKind::Ph);
            if (e.name == "l" && n == 0) return Gen::make0(GenKind::Pl);
            if (e.name == "cc" && n == 0) return Gen::make0(GenKind::Pc);
            unknown(e);
        case RingTag::Formal: {
            static const std::pair<const char*, GenKind> table[] = {
                {"d", GenKind::Vd},   {"l", GenKind::Vl},   {"lam", GenKind::Vlam},
                {"qd", GenKind::Vqd}, {"ql", GenKind::Vql}, {"N", GenKind::VN},
                {"M", GenKind::VM},   {"ad", GenKind::Vad},
            };
            if (n == 0)
                for (auto [name, kind] : table)
                    if (e.name == name) return Gen::make0(kind);
            unknown(e);
        }
    }
    unknown(e);
}

std::string gen_text(const Gen& g) {
    std::ostringstream o;
    switch (g.kind) {
        case GenKind::BvO: o << "o(" << g.idx[0] << ")"; break;
        case GenKind::BvL: o << "L(" << g.label << "," << g.idx[0] << ")"; break;
        case GenKind::BvD: o << "D(" << g.idx[0] << "," << g.idx[1] << ")"; break;
        case GenKind::HcO: o << "c(O," << g.label << ")"; break;
        case GenKind::HcT: o << "c(T," << g.label << ")"; break;
        case GenKind::HcI: o << "c(I," << g.label << "," << g.idx[0] << ")"; break;
        case GenKind::HcL: o << "L(" << g.label << ")"; break;
        case GenKind::HcE: o << "t"; break;
        case GenKind::Fl: o << "l"; break;
        case GenKind::Fc: o << "cc"; break;
        case GenKind::FEx: o << "Ex"; break;
        case GenKind::Fo: o << "o"; break;
        case GenKind::FD: o << "D(" << g.label << ")"; break;
        case GenKind::FParC: o << "C"; break;
        case GenKind::FParCp: o << "Cprime"; break;
        case GenKind::FParQl: o << "q(l)"; break;
        case GenKind::FParQlInv: o << "qinv(l)"; break;
        case GenKind::FParQD: o << "q(D," << g.idx[0] << "," << g.idx[1] << ")"; break;
        case GenKind::Ph: o << "h"; break;
        case GenKind::Pl: o << "l"; break;
        case GenKind::Pc: o << "cc"; break;
        case GenKind::Vd: o << "d"; break;
        case GenKind::Vl: o << "l"; break;
        case GenKind::Vlam: o << "lam"; break;
        case GenKind::Vqd: o << "qd"; break;
        case GenKind::Vql: o << "ql"; break;
        case GenKind::VN: o << "N"; break;
        case GenKind::VM: o << "M"; break;
        case GenKind::Vad: o << "ad"; break;
    }
    return o.str();
}

std::string monomial_text(const Monomial& m) {
    std::ostringstream o;
    bool first = true;
    for (size_t i = 0; i < m.factors.size();) {
        size_t j = i;
        while (j < m.factors.size() && m.factors[j] == m.factors[i]) ++j;
        if (!first) o << "*";
        o << gen_text(m.factors[i]);
        if (j - i > 1) o << "^" << (j - i);
        first = false;
        i = j;
    }
    return o.str();
}

} // namespace

Expr parse_expr(const std::string& text) { return Parser(text).parse(); }

Polynomial eval_expr(const Expr& e, RingTag ring) {
    switch (e.kind) {
        case Expr::Lit: return Polynomial(ring, e.lit);
        case Expr::Atom: return Polynomial(ring, resolve_atom(e, ring));
        case Expr::Add: return eval_expr(e.children[0], ring) + eval_expr(e.children[1], ring);
        case Expr::Sub: return eval_expr(e.children[0], ring) - eval_expr(e.children[1], ring);
        case Expr::Mul: return eval_expr(e.children[0], ring) * eval_expr(e.children[1], ring);
        case Expr::Pow: return poly_pow(eval_expr(e.children[0], ring), e.exponent);
        case Expr::Neg: return -eval_expr(e.children[0], ring);
    }
    throw std::logic_error("eval_expr: bad node");
}

Polynomial parse_polynomial(const std::string& text, RingTag ring) {
    return eval_expr(parse_expr(text), ring);
}

std::string print_canonical(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream o;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (first) {
            if (c.sign() < 0) o << "-";
        } else {
            o << (c.sign() < 0 ? " - " : " + ");
        }
        Rational a = c.abs();
        if (m.is_unit()) {
            o << a.str();
        } else {
            if (a != Rational(1)) o << a.str() << "*";
            o << monomial_text(m);
        }
        first = false;
    }
    return o.str();
}

std::string print_tensor(const TensorClass& t) {
    if (t.is_zero()) return "0";
    std::ostringstream o;
    bool first = true;
    for (const auto& [tup, c] : t.terms) {
        if (first) {
            if (c.sign() < 0) o << "-";
        } else {
            o << (c.sign() < 0 ? " - " : " + ");
        }
        Rational a = c.abs();
        if (a != Rational(1)) o << a.str() << "*";
        o << "[";
        for (size_t i = 0; i < tup.size(); ++i) {
            if (i) o << ",";
            switch (tup[i].kind) {
                case BasisVector::Unit: o << "1"; break;
                case BasisVector::Ns: o << "ns(" << tup[i].k + 1 << ")"; break;
                case BasisVector::Tr: o << "tr(" << tup[i].k + 1 << ")"; break;
                case BasisVector::Pt: o << "pt"; break;
            }
        }
        o << "]";
        first = false;
    }
    return o.str();
}

} // namespace tautring
