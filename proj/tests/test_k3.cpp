#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tautring/expr.hpp"
#include "tautring/k3_model.hpp"

#include <random>
#include <sstream>

using namespace tautring;

namespace {

std::vector<BasisVector> tup(std::initializer_list<BasisVector> l) { return l; }
constexpr auto U = BasisVector::Unit;
constexpr auto NS = BasisVector::Ns;
constexpr auto TR = BasisVector::Tr;
constexpr auto PT = BasisVector::Pt;

K3Model hyperbolic_tr_model() {
    RatMatrix ns(1, 1);
    ns.at(0, 0) = Rational(2);
    RatMatrix tr(2, 2);
    tr.at(0, 1) = Rational(1);
    tr.at(1, 0) = Rational(1);
    return K3Model(std::move(ns), std::move(tr));
}

} // namespace

TEST_CASE("model construction and validation") {
    K3Model m = K3Model::standard(2);
    CHECK(m.rho() == 1);
    CHECK(m.b_tr() == 2);
    CHECK(m.ns_pairing(1, 1) == Rational(2));

    RatMatrix bad(2, 2);
    bad.at(0, 0) = Rational(1);
    bad.at(0, 1) = Rational(1); // not symmetric vs 0 below
    CHECK_THROWS(K3Model(bad, RatMatrix::identity(1)));

    RatMatrix sing(1, 1); // zero Gram
    CHECK_THROWS(K3Model(RatMatrix::identity(1), sing));
}

TEST_CASE("model file parsing and fingerprint") {
    std::istringstream in("rho 1\nb_tr 2\nns_gram\n2\ntr_gram\n1 0\n0 1\n");
    K3Model m = K3Model::parse_stream(in);
    CHECK(m.b_tr() == 2);
    CHECK(m.fingerprint() == K3Model::standard(2).fingerprint());
    CHECK(m.fingerprint() != K3Model::standard(3).fingerprint());

    std::istringstream frac("rho 1\nb_tr 1\nns_gram\n-1/2\ntr_gram\n3/4\n");
    K3Model f = K3Model::parse_stream(frac);
    CHECK(f.ns_pairing(1, 1) == Rational(-1, 2));

    std::istringstream trunc("rho 1\nb_tr 2\nns_gram\n2\ntr_gram\n1 0\n");
    CHECK_THROWS(K3Model::parse_stream(trunc));
}

TEST_CASE("diagonal expansion in the small model") {
    // rho=1, ns=[2], b_tr=1, tr=[1]: tr(x)tr + 1(x)pt + pt(x)1 + 1/2 ns(x)ns
    K3Model m = K3Model::standard(1);
    TensorClass d = m.diagonal_expansion(2, 1, 2);
    CHECK(d.terms.size() == 4);
    CHECK(d.terms.at(tup({{TR, 0}, {TR, 0}})) == Rational(1));
    CHECK(d.terms.at(tup({{U, 0}, {PT, 0}})) == Rational(1));
    CHECK(d.terms.at(tup({{PT, 0}, {U, 0}})) == Rational(1));
    CHECK(d.terms.at(tup({{NS, 0}, {NS, 0}})) == Rational(1, 2));
}

TEST_CASE("diagonal acts as the identity correspondence") {
    K3Model m = hyperbolic_tr_model();
    TensorClass d = m.diagonal_expansion(2, 1, 2);
    // Pair slot 1 against each basis vector b: contract and check slot 2
    // returns b. Contraction = multiply by b in slot 1 and keep the terms
    // with pt in slot 1 (degree pairing).
    std::vector<BasisVector> basis = {{U, 0}, {NS, 0}, {TR, 0}, {TR, 1}, {PT, 0}};
    for (const auto& b : basis) {
        TensorClass probe;
        probe.m = 2;
        probe.add(tup({b, {U, 0}}), Rational(1));
        TensorClass prod = m.product(d, probe);
        // pushforward to slot 2: keep the terms with pt in slot 1
        TensorClass contracted;
        contracted.m = 1;
        for (const auto& [t, c] : prod.terms)
            if (t[0].kind == PT) contracted.add({t[1]}, c);
        REQUIRE(contracted.terms.size() == 1);
        CHECK(contracted.terms.begin()->first[0] == b);
        CHECK(contracted.terms.begin()->second == Rational(1));
    }
}

TEST_CASE("realize examples") {
    // Delta^2 top coefficient b_tr + rho + 2
    for (int btr : {1, 2, 21}) {
        K3Model m = K3Model::standard(btr);
        Polynomial dd = parse_polynomial("D(1,2)^2", RingTag::BV);
        TensorClass t = m.realize(dd, 2);
        CHECK(m.integrate_tensor(t) == Rational(btr + 1 + 2));
    }
    // o_1^2 -> 0
    K3Model m = K3Model::standard(2);
    CHECK(m.realize(parse_polynomial("o(1)^2", RingTag::BV), 1).is_zero());
    // L(1,1)^2 realizes to 2*pt
    TensorClass l2 = m.realize(parse_polynomial("L(1,1)^2", RingTag::BV), 1);
    REQUIRE(l2.terms.size() == 1);
    CHECK(l2.terms.at(tup({{PT, 0}})) == Rational(2));

    CHECK_THROWS(m.realize(parse_polynomial("o(3)", RingTag::BV), 2));
    CHECK_THROWS(m.realize(parse_polynomial("L(2,1)", RingTag::BV), 2));
}

TEST_CASE("realize is a ring homomorphism") {
    K3Model model = K3Model::standard(2);
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coeff(-4, 4), idx(1, 3), nf(0, 3), kind(0, 2);
    auto random_poly = [&]() {
        Polynomial p(RingTag::BV);
        for (int t = 0; t < 3; ++t) {
            std::vector<Gen> gens;
            int f = nf(rng);
            for (int k = 0; k < f; ++k) {
                switch (kind(rng)) {
                    case 0: gens.push_back(bv_o(idx(rng))); break;
                    case 1: gens.push_back(bv_l(1, idx(rng))); break;
                    default: {
                        int i = idx(rng), j = idx(rng);
                        if (i != j) gens.push_back(bv_d(i, j));
                    }
                }
            }
            p.add_term(Monomial(std::move(gens)), Rational(coeff(rng)));
        }
        return p;
    };
    for (int t = 0; t < 40; ++t) {
        Polynomial a = random_poly(), b = random_poly();
        TensorClass lhs = model.realize(a * b, 3);
        TensorClass rhs = model.product(model.realize(a, 3), model.realize(b, 3));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("gamma action") {
    // s=1, identity pairing, orthonormal rank-1 tr: gamma(tr) = tr
    {
        K3Model m = K3Model::standard(1);
        TensorClass eta;
        eta.m = 1;
        eta.add(tup({{TR, 0}}), Rational(1));
        TrMonomial M{{{1, 2}}};
        TensorClass g = gamma_action(M, eta, m);
        CHECK(g == eta);
    }
    // s=2, transposition sigma: tr(1)(x)tr(2) -> tr(2)(x)tr(1)
    {
        K3Model m = K3Model::standard(2);
        TensorClass eta;
        eta.m = 2;
        eta.add(tup({{TR, 0}, {TR, 1}}), Rational(1));
        TrMonomial M{{{1, 4}, {2, 3}}};
        TensorClass g = gamma_action(M, eta, m);
        TensorClass expect;
        expect.m = 2;
        expect.add(tup({{TR, 1}, {TR, 0}}), Rational(1));
        CHECK(g == expect);
    }
    // A pairing that stays inside the first s slots kills an isotropic
    // decomposable tensor (the omega^2 = 0 mechanism): hyperbolic tr Gram,
    // eta = e1 (x) e1 with q(e1,e1) = 0.
    {
        K3Model m = hyperbolic_tr_model();
        TensorClass eta;
        eta.m = 2;
        eta.add(tup({{TR, 0}, {TR, 0}}), Rational(1));
        TrMonomial M{{{1, 2}, {3, 4}}};
        CHECK(gamma_action(M, eta, m).is_zero());
    }
    // Bad monomials
    {
        K3Model m = K3Model::standard(1);
        TensorClass eta;
        eta.m = 1;
        eta.add(tup({{TR, 0}}), Rational(1));
        CHECK_THROWS(gamma_action(TrMonomial{{{1, 1}}}, eta, m));
        CHECK_THROWS(gamma_action(TrMonomial{{{1, 3}}}, eta, m));
    }
}

TEST_CASE("gamma orbit sum acts as s! on the fixed anisotropic tensor") {
    // Sum over all monomials pairing {1..s} with {s+1..2s} (the orbit E):
    // on a decomposable anisotropic eta = e (x) e with q(e,e)=1 this gives
    // s! * eta.
    K3Model m = K3Model::standard(2);
    int s = 2;
    TensorClass eta;
    eta.m = s;
    eta.add(tup({{TR, 0}, {TR, 0}}), Rational(1));
    TensorClass sum;
    sum.m = s;
    // permutations of {3,4} as partners of {1,2}
    for (auto& partner : std::vector<std::vector<int>>{{3, 4}, {4, 3}}) {
        TrMonomial M{{{1, partner[0]}, {2, partner[1]}}};
        sum += gamma_action(M, eta, m);
    }
    TensorClass expect;
    expect.m = s;
    expect.add(tup({{TR, 0}, {TR, 0}}), Rational(2));
    CHECK(sum == expect);
}

TEST_CASE("normal monomial enumeration") {
    // m=1: codim 0 {1}, codim 1 {L(s,1)}, codim 2 {o(1)}
    CHECK(normal_monomials(1, 0, 1).size() == 1);
    CHECK(normal_monomials(1, 1, 1).size() == 1);
    CHECK(normal_monomials(1, 2, 1).size() == 1);
    CHECK(normal_monomials(1, 3, 1).empty());
    // m=2, codim 2, rho=1: o(1), o(2), D(1,2), L(1,1)L(1,2)
    CHECK(normal_monomials(2, 2, 1).size() == 4);
}

TEST_CASE("monomial basis ranks") {
    K3Model m2 = K3Model::standard(2);
    for (int codim = 0; codim <= 4; ++codim) {
        auto [count, rank] = monomial_basis_rank(2, codim, m2);
        CHECK(count == rank);
    }
    // m=1 has full rank for any model (distinct degrees)
    K3Model m1 = K3Model::standard(1);
    for (int codim = 0; codim <= 2; ++codim) {
        auto [count, rank] = monomial_basis_rank(1, codim, m1);
        CHECK(count == rank);
    }
}

TEST_CASE("invariant ranks") {
    // |I|=2: one orbit, rank 1
    {
        auto [orbits, rank] = invariant_rank(4, {3, 4}, K3Model::standard(1));
        CHECK(orbits == 1);
        CHECK(rank == 1);
    }
    // |I|=4 with m-1,m in I: two orbits; rank 2 needs b_tr >= 2
    {
        auto [orbits, rank] = invariant_rank(4, {1, 2, 3, 4}, K3Model::standard(2));
        CHECK(orbits == 2);
        CHECK(rank == 2);
    }
    // |I|=4 avoiding m-1,m: single orbit
    {
        auto [orbits, rank] = invariant_rank(6, {1, 2, 3, 4}, K3Model::standard(2));
        CHECK(orbits == 1);
        CHECK(rank == 1);
    }
    CHECK_THROWS(invariant_rank(4, {1, 2, 3}, K3Model::standard(1)));
}
