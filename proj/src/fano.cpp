#include "tautring/fano.hpp"

#include "tautring/kclass.hpp"
#include "tautring/schubert.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace tautring {

namespace {

const RingTag FR = RingTag::Fano;

Polynomial atom(GenKind k) { return Polynomial(FR, Gen::make0(k)); }
Polynomial fl() { return atom(GenKind::Fl); }
Polynomial fcc() { return atom(GenKind::Fc); }
Gen qd_gen(int j, int k) { return Gen::make2(GenKind::FParQD, j, k); }

bool is_param(GenKind k) {
    switch (k) {
        case GenKind::FParC:
        case GenKind::FParCp:
        case GenKind::FParQl:
        case GenKind::FParQlInv:
        case GenKind::FParQD: return true;
        default: return false;
    }
}

// Decomposition of a Fano-ring monomial into geometric atoms and parameters.
struct Parts {
    int lpow = 0, ccpow = 0, expow = 0, opow = 0;
    std::vector<int> d;      // divisor labels with multiplicity
    std::vector<Gen> params; // codim-0 factors
};

Parts split(const Monomial& m) {
    Parts p;
    for (const Gen& g : m.factors) {
        switch (g.kind) {
            case GenKind::Fl: ++p.lpow; break;
            case GenKind::Fc: ++p.ccpow; break;
            case GenKind::FEx: ++p.expow; break;
            case GenKind::Fo: ++p.opow; break;
            case GenKind::FD: p.d.push_back(g.label); break;
            default:
                if (!is_param(g.kind))
                    throw std::invalid_argument("fano_normalize: atom from another ring");
                p.params.push_back(g);
        }
    }
    return p;
}

Polynomial rebuild(const Parts& p) {
    std::vector<Gen> fs = p.params;
    for (int i = 0; i < p.lpow; ++i) fs.push_back(Gen::make0(GenKind::Fl));
    for (int i = 0; i < p.ccpow; ++i) fs.push_back(Gen::make0(GenKind::Fc));
    for (int i = 0; i < p.expow; ++i) fs.push_back(Gen::make0(GenKind::FEx));
    for (int i = 0; i < p.opow; ++i) fs.push_back(Gen::make0(GenKind::Fo));
    for (int lab : p.d) fs.push_back(Gen::make0(GenKind::FD, lab));
    Polynomial r(FR);
    r.add_term(Monomial(fs), Rational(1));
    return r;
}

// One rewrite step on a monomial; empty optional means it is normal.
// Rule priority: dimension cut; parameter cancellation; Ex elimination;
// cc*D = 0; the cubic divisor relation; the two divisor-pair relations;
// l^3*D = 0; l*cc -> (5/12) l^3; the three degree-4 evaluations.
std::optional<Polynomial> step(const Monomial& m) {
    if (m.codim() > 4) return Polynomial::zero(FR);
    Parts p = split(m);

    // q(l)*qinv(l) -> 1
    auto ql = std::find_if(p.params.begin(), p.params.end(),
                           [](const Gen& g) { return g.kind == GenKind::FParQl; });
    auto qi = std::find_if(p.params.begin(), p.params.end(),
                           [](const Gen& g) { return g.kind == GenKind::FParQlInv; });
    if (ql != p.params.end() && qi != p.params.end()) {
        Parts q = p;
        q.params.clear();
        bool dropl = false, dropi = false;
        for (const Gen& g : p.params) {
            if (!dropl && g.kind == GenKind::FParQl) { dropl = true; continue; }
            if (!dropi && g.kind == GenKind::FParQlInv) { dropi = true; continue; }
            q.params.push_back(g);
        }
        return rebuild(q);
    }

    if (p.expow >= 1) {
        Parts q = p;
        --q.expow;
        Polynomial rest = rebuild(q);
        Polynomial three_ex = fl() * fl() * fl() - fl() * fcc() * Rational(2);
        return rest * three_ex * Rational(1, 3);
    }
    if (p.ccpow >= 1 && !p.d.empty()) return Polynomial::zero(FR);
    if (p.d.size() >= 3) {
        int j = p.d[0], k = p.d[1], r = p.d[2];
        Parts q = p;
        q.d.erase(q.d.begin(), q.d.begin() + 3);
        Polynomial rest = rebuild(q);
        Polynomial sum(FR);
        auto piece = [&](int qa, int qb, int drem) {
            std::vector<Gen> fs = {Gen::make0(GenKind::FParQlInv), qd_gen(qa, qb),
                                   Gen::make0(GenKind::Fl), Gen::make0(GenKind::Fl),
                                   Gen::make0(GenKind::FD, drem)};
            sum.add_term(Monomial(fs), Rational(1));
        };
        piece(j, k, r);
        piece(j, r, k);
        piece(k, r, j);
        return rest * sum;
    }
    if (p.d.size() == 2 && p.lpow >= 2) {
        Parts q = p;
        q.lpow -= 2;
        int j = q.d[0], k = q.d[1];
        q.d.clear();
        Polynomial rest = rebuild(q);
        Polynomial head(FR);
        head.add_term(Monomial({Gen::make0(GenKind::FParC), qd_gen(j, k),
                                Gen::make0(GenKind::Fo)}),
                      Rational(1));
        return rest * head;
    }
    if (p.d.size() == 2 && p.lpow == 1) {
        Parts q = p;
        q.lpow = 0;
        int j = q.d[0], k = q.d[1];
        q.d.clear();
        Polynomial rest = rebuild(q);
        Polynomial head(FR);
        head.add_term(Monomial({Gen::make0(GenKind::FParCp), qd_gen(j, k),
                                Gen::make0(GenKind::FEx)}),
                      Rational(1));
        return rest * head;
    }
    if (p.d.size() == 1 && p.lpow >= 3) return Polynomial::zero(FR);
    if (p.ccpow >= 1 && p.lpow >= 1) {
        Parts q = p;
        --q.ccpow;
        q.lpow += 2; // one l consumed, l^3 emitted
        return rebuild(q) * Rational(5, 12);
    }
    if (p.lpow >= 4) {
        Parts q = p;
        q.lpow -= 4;
        ++q.opow;
        return rebuild(q) * Rational(108);
    }
    if (p.ccpow >= 2) {
        Parts q = p;
        q.ccpow -= 2;
        ++q.opow;
        return rebuild(q) * Rational(27);
    }
    return std::nullopt;
}

} // namespace

Polynomial fano_normalize(const Polynomial& P) {
    if (P.ring() != FR) throw std::invalid_argument("fano_normalize: wrong ring");
    Polynomial work = P;
    for (;;) {
        Polynomial next(FR);
        bool changed = false;
        for (const auto& [m, c] : work.terms()) {
            if (auto rep = step(m)) {
                next += *rep * c;
                changed = true;
            } else {
                next.add_term(m, c);
            }
        }
        work = std::move(next);
        if (!changed) return work;
    }
}

Polynomial fano_integral_form(const Polynomial& P) {
    Polynomial nf = fano_normalize(P).graded_part(4);
    Polynomial out(FR);
    for (const auto& [m, c] : nf.terms()) {
        Parts p = split(m);
        if (p.opow != 1 || p.lpow || p.ccpow || p.expow || !p.d.empty())
            throw std::logic_error("fano_integral_form: unexpected codim-4 normal form");
        out.add_term(Monomial(p.params), c);
    }
    return out;
}

Polynomial reduce_h_powers(const Polynomial& P) {
    if (P.ring() != RingTag::PBundle)
        throw std::invalid_argument("reduce_h_powers: wrong ring");
    Polynomial work = P;
    for (;;) {
        Polynomial next(RingTag::PBundle);
        bool changed = false;
        for (const auto& [m, c] : work.terms()) {
            int hpow = 0, base = 0;
            std::vector<Gen> rest;
            for (const Gen& g : m.factors) {
                if (g.kind == GenKind::Ph) ++hpow;
                else {
                    base += g.codim();
                    rest.push_back(g);
                }
            }
            if (base > 4) { changed = true; continue; } // vanishes on the base
            if (hpow >= 2) {
                changed = true;
                // h^2 -> l*h - cc on two of the h factors
                std::vector<Gen> f1 = rest, f2 = rest;
                for (int i = 0; i < hpow - 1; ++i) f1.push_back(Gen::make0(GenKind::Ph));
                f1.push_back(Gen::make0(GenKind::Pl));
                for (int i = 0; i < hpow - 2; ++i) f2.push_back(Gen::make0(GenKind::Ph));
                f2.push_back(Gen::make0(GenKind::Pc));
                next.add_term(Monomial(f1), c);
                next.add_term(Monomial(f2), -c);
            } else {
                next.add_term(m, c);
            }
        }
        work = std::move(next);
        if (!changed) return work;
    }
}

std::pair<Polynomial, Polynomial> chern_T_F() {
    Polynomial l = fl(), cc = fcc();
    KClass E = KClass::from_chern(FR, 4, Rational(2), {l, cc});
    // tautological sequence: the rank-2 subspace bundle is the dual of E,
    // the rank-4 quotient its complement in the trivial rank-6 bundle
    KClass Q = KClass::trivial(FR, 4, Rational(6)) - E.dual();
    KClass TG = E.tensor(Q);
    // Chern roots of the symmetric cube: 3a, 2a+b, a+2b, 3b
    KClass S3 = KClass::from_chern(
        FR, 4, Rational(4),
        {l * Rational(6), l * l * Rational(11) + cc * Rational(10),
         l * l * l * Rational(6) + l * cc * Rational(30),
         l * l * cc * Rational(18) + cc * cc * Rational(9)});
    auto c = chern_from_ch(TG - S3, 4);
    // the codim-3 class is zero only modulo the proportionality of l^3 and
    // l*cc, so the check runs through the rewriting system
    if (!c[0].is_zero() || !fano_normalize(c[2]).is_zero())
        throw std::logic_error("chern_T_F: odd Chern classes failed to vanish");
    return {c[1], c[3]};
}

const char* coh_verdict_name(CohVerdict v) {
    switch (v) {
        case CohVerdict::Zero: return "zero";
        case CohVerdict::Nonzero: return "nonzero";
        case CohVerdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

// Verdict for one cohomology coordinate, given as a polynomial in the
// formal parameters: a single monomial of generic-nonzero parameters is
// nonzero; anything involving an off-diagonal q(D,j,k) or a cancellation
// between parameter monomials cannot be decided.
CohVerdict coord_verdict(const Polynomial& coeff) {
    if (coeff.is_zero()) return CohVerdict::Zero;
    for (const auto& [m, c] : coeff.terms())
        for (const Gen& g : m.factors)
            if (g.kind == GenKind::FParQD && g.idx[0] != g.idx[1])
                return CohVerdict::Indeterminate;
    return coeff.term_count() == 1 ? CohVerdict::Nonzero : CohVerdict::Indeterminate;
}

void merge(CohVerdict& acc, CohVerdict v) {
    if (v == CohVerdict::Nonzero) acc = CohVerdict::Nonzero;
    else if (v == CohVerdict::Indeterminate && acc != CohVerdict::Nonzero)
        acc = CohVerdict::Indeterminate;
}

// Group a graded part by its geometric monomial; coordinates are the
// parameter polynomials.
std::map<Monomial, Polynomial> coordinates(const Polynomial& part) {
    std::map<Monomial, Polynomial> out;
    for (const auto& [m, c] : part.terms()) {
        std::vector<Gen> geom, par;
        for (const Gen& g : m.factors)
            (is_param(g.kind) ? par : geom).push_back(g);
        auto [it, fresh] = out.try_emplace(Monomial(geom), Polynomial::zero(FR));
        (void)fresh;
        it->second.add_term(Monomial(par), c);
    }
    return out;
}

} // namespace

CohVerdict fano_cohomology_vanishes(const Polynomial& P) {
    if (P.ring() != FR) throw std::invalid_argument("fano_cohomology_vanishes: wrong ring");
    CohVerdict acc = CohVerdict::Zero;

    // codims 0..2: coordinate-by-coordinate against the degree facts
    for (int k = 0; k <= 2; ++k) {
        for (const auto& [geom, coeff] : coordinates(P.graded_part(k))) {
            bool dd = false; // two primitive divisors: no listed independence fact
            int dcount = 0;
            for (const Gen& g : geom.factors)
                if (g.kind == GenKind::FD) ++dcount;
            dd = dcount >= 2;
            if (dd && !coeff.is_zero()) merge(acc, CohVerdict::Indeterminate);
            else merge(acc, coord_verdict(coeff));
        }
    }

    // codim 3: Poincare duality against the divisor basis {l, D(k)}
    Polynomial part3 = P.graded_part(3);
    if (!part3.is_zero()) {
        std::set<int> labels;
        for (const auto& [m, c] : part3.terms())
            for (const Gen& g : m.factors)
                if (g.kind == GenKind::FD) labels.insert(g.label);
        merge(acc, coord_verdict(fano_integral_form(part3 * fl())));
        for (int lab : labels) {
            Polynomial d(FR, Gen::make0(GenKind::FD, lab));
            merge(acc, coord_verdict(fano_integral_form(part3 * d)));
        }
    }

    // codim 4: one-dimensional, decided by the degree functional
    merge(acc, coord_verdict(fano_integral_form(P.graded_part(4))));
    return acc;
}

Verdict verify_theocubic(const Polynomial& P) {
    CohVerdict v = fano_cohomology_vanishes(P);
    if (v == CohVerdict::Zero) {
        if (!fano_normalize(P).is_zero())
            throw std::logic_error(
                "verify_theocubic: cohomologically trivial class with nonzero normal form");
        return Verdict::ChowZero;
    }
    if (v == CohVerdict::Nonzero) return Verdict::CohomologicallyNonzero;
    return Verdict::Indeterminate;
}

VerbitskyCertificate verbitsky_coefficient() {
    const RingTag R = RingTag::Formal;
    auto sym = [&](GenKind k) { return Polynomial(R, Gen::make0(k)); };
    Polynomial d = sym(GenKind::Vd), l = sym(GenKind::Vl), lam = sym(GenKind::Vlam);
    Polynomial qd = sym(GenKind::Vqd), ql = sym(GenKind::Vql);
    Polynomial N = sym(GenKind::VN), M = sym(GenKind::VM), ad = sym(GenKind::Vad);

    Polynomial lhs = poly_pow(d + lam * l, 3);
    Polynomial rhs = (qd + lam * lam * ql) * (ad * N + lam * M);

    // split by the power of lam
    auto lam_piece = [&](const Polynomial& p, int k) {
        Polynomial out(R);
        for (const auto& [m, c] : p.terms()) {
            int cnt = 0;
            std::vector<Gen> rest;
            for (const Gen& g : m.factors)
                (g.kind == GenKind::Vlam ? (void)++cnt : rest.push_back(g));
            if (cnt == k) out.add_term(Monomial(rest), c);
        }
        return out;
    };

    VerbitskyCertificate cert;
    cert.lambda0 = {lam_piece(lhs, 0), lam_piece(rhs, 0)};
    cert.lambda2 = {lam_piece(lhs, 2), lam_piece(rhs, 2)};
    if (cert.lambda0.first != d * d * d || cert.lambda0.second != qd * ad * N)
        throw std::logic_error("verbitsky_coefficient: lambda^0 pieces malformed");
    if (cert.lambda2.first != d * l * l * Rational(3) || cert.lambda2.second != ql * ad * N)
        throw std::logic_error("verbitsky_coefficient: lambda^2 pieces malformed");

    // eliminate ad*N: ql*(lambda^0) - qd*(lambda^2) cancels on the right
    Polynomial residue = ql * cert.lambda0.second - qd * cert.lambda2.second;
    if (!residue.is_zero())
        throw std::logic_error("verbitsky_coefficient: elimination failed");
    cert.eliminated = ql * cert.lambda0.first - qd * cert.lambda2.first;
    cert.coefficient = "3/q(l)";
    return cert;
}

} // namespace tautring
