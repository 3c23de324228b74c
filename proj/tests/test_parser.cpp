#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tautring/expr.hpp"

#include <random>

using namespace tautring;

TEST_CASE("basic parses") {
    Polynomial p = parse_polynomial("o(1)*o(2)", RingTag::BV);
    CHECK(p.coeff(Monomial({bv_o(1), bv_o(2)})) == Rational(1));

    Polynomial q = parse_polynomial("D(1,2)^2 - 24*o(1)*o(2)", RingTag::BV);
    CHECK(q.coeff(Monomial({bv_d(1, 2), bv_d(1, 2)})) == Rational(1));
    CHECK(q.coeff(Monomial({bv_o(1), bv_o(2)})) == Rational(-24));

    Polynomial c = parse_polynomial("c(T,4)", RingTag::Hilbert);
    CHECK(c.coeff(Monomial({Gen::make0(GenKind::HcT, 4)})) == Rational(1));
    CHECK(c.homogeneous_codim() == 4);
}

TEST_CASE("literals, grouping, precedence") {
    CHECK(parse_polynomial("2*3", RingTag::BV) == Polynomial(RingTag::BV, Rational(6)));
    CHECK(parse_polynomial("1/2 + 1/2", RingTag::BV) == Polynomial(RingTag::BV, Rational(1)));
    CHECK(parse_polynomial("-o(1) + o(1)", RingTag::BV).is_zero());
    CHECK(parse_polynomial("(o(1)+o(2))^2 - o(1)^2 - 2*o(1)*o(2) - o(2)^2", RingTag::BV)
              .is_zero());
    // '*' binds tighter than '+', '^' tighter than '*'
    Polynomial p = parse_polynomial("2*o(1)^2", RingTag::BV);
    CHECK(p.coeff(Monomial({bv_o(1), bv_o(1)})) == Rational(2));
}

TEST_CASE("errors carry positions") {
    CHECK_THROWS_AS(parse_polynomial("o(1", RingTag::BV), ParseError);
    CHECK_THROWS_AS(parse_polynomial("o(1) +", RingTag::BV), ParseError);
    CHECK_THROWS_AS(parse_polynomial("o(1) o(2)", RingTag::BV), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x(1)", RingTag::BV), ParseError);
    CHECK_THROWS_AS(parse_polynomial("o(1,2)", RingTag::BV), ParseError);
    CHECK_THROWS_AS(parse_polynomial("D(1,1)", RingTag::BV), ParseError);
    CHECK_THROWS_AS(parse_polynomial("o(1)^-2", RingTag::BV), ParseError);
    CHECK_THROWS_AS(parse_polynomial("c(T,2)", RingTag::BV), ParseError);
    try {
        parse_polynomial("o(1) +\n  $", RingTag::BV);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 3);
    }
}

TEST_CASE("canonical printing") {
    CHECK(print_canonical(Polynomial(RingTag::BV)) == "0");
    CHECK(print_canonical(parse_polynomial("24*o(1)*o(2)", RingTag::BV)) == "24*o(1)*o(2)");
    CHECK(print_canonical(parse_polynomial("D(1,2) + o(1)", RingTag::BV)) == "o(1) + D(1,2)");
    CHECK(print_canonical(parse_polynomial("o(1) - o(2)", RingTag::BV)) == "o(1) - o(2)");
    CHECK(print_canonical(parse_polynomial("-1/2*o(1)", RingTag::BV)) == "-1/2*o(1)");
    CHECK(print_canonical(parse_polynomial("L(1,2)^3", RingTag::BV)) == "L(1,2)^3");
    CHECK(print_canonical(parse_polynomial("5", RingTag::BV)) == "5");
}

TEST_CASE("ring-scoped symbol tables") {
    CHECK_NOTHROW(parse_polynomial("l*cc + Ex + o + D(3)", RingTag::Fano));
    CHECK_NOTHROW(parse_polynomial("C*Cprime*q(l)*qinv(l)*q(D,1,2)", RingTag::Fano));
    CHECK_NOTHROW(parse_polynomial("h^2 - h*l + cc", RingTag::PBundle));
    CHECK_THROWS_AS(parse_polynomial("qinvl", RingTag::Formal), ParseError);
    CHECK_NOTHROW(parse_polynomial("(d+lam*l)^3 - (qd+lam^2*ql)*(ad*N+lam*M)", RingTag::Formal));
    CHECK_THROWS_AS(parse_polynomial("h", RingTag::Fano), ParseError);
    CHECK_THROWS_AS(parse_polynomial("L(1)", RingTag::BV), ParseError);
    CHECK_THROWS_AS(parse_polynomial("L(1,1)", RingTag::Hilbert), ParseError);
}

TEST_CASE("fuzzed round trip") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> nterms(0, 6), coeff(-9, 9), den(1, 7), idx(1, 4),
        label(1, 2), kind(0, 2), nf(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        Polynomial p(RingTag::BV);
        int n = nterms(rng);
        for (int t = 0; t < n; ++t) {
            std::vector<Gen> gens;
            int f = nf(rng);
            for (int k = 0; k < f; ++k) {
                switch (kind(rng)) {
                    case 0: gens.push_back(bv_o(idx(rng))); break;
                    case 1: gens.push_back(bv_l(label(rng), idx(rng))); break;
                    default: {
                        int i = idx(rng), j = idx(rng);
                        if (i != j) gens.push_back(bv_d(i, j));
                    }
                }
            }
            p.add_term(Monomial(std::move(gens)), Rational(coeff(rng), den(rng)));
        }
        CHECK(parse_polynomial(print_canonical(p), RingTag::BV) == p);
    }
}

TEST_CASE("mutated identifiers are rejected") {
    const char* valid = "D(1,2)^2 - 24*o(1)*o(2) + L(1,3)";
    for (const char* bad : {"E(1,2)^2 - 24*o(1)*o(2) + L(1,3)",
                            "D(1,2)^2 - 24*u(1)*o(2) + L(1,3)",
                            "D(1,2)^2 - 24*o(1)*o(2) + K(1,3)",
                            "D(1,2)^2 - 24*o(1)*oo(2) + L(1,3)"}) {
        CHECK_NOTHROW(parse_polynomial(valid, RingTag::BV));
        CHECK_THROWS_AS(parse_polynomial(bad, RingTag::BV), ParseError);
    }
}
