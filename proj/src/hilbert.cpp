#include "tautring/hilbert.hpp"

#include "tautring/expr.hpp"
#include "tautring/kclass.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tautring {

// ---------------------------------------------------------------------------
// SetPartition

namespace {

void validate_blocks(std::vector<std::vector<int>>& blocks, int n) {
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    for (auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("partition: empty block");
        std::sort(b.begin(), b.end());
        for (int x : b) {
            if (x < 1 || x > n) throw std::invalid_argument("partition: element out of range");
            if (seen[static_cast<size_t>(x)])
                throw std::invalid_argument("partition: repeated element");
            seen[static_cast<size_t>(x)] = true;
        }
    }
    for (int x = 1; x <= n; ++x)
        if (!seen[static_cast<size_t>(x)])
            throw std::invalid_argument("partition: does not cover {1..n}");
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

} // namespace

SetPartition SetPartition::parse(const std::string& text, int n) {
    SetPartition p;
    p.n = n;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '{') throw std::invalid_argument("partition: expected '{'");
        ++i;
        std::vector<int> block;
        while (true) {
            skip_ws();
            size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == start) throw std::invalid_argument("partition: expected a number");
            block.push_back(std::stoi(text.substr(start, i - start)));
            skip_ws();
            if (i < text.size() && text[i] == ',') { ++i; continue; }
            break;
        }
        if (i >= text.size() || text[i] != '}')
            throw std::invalid_argument("partition: expected '}'");
        ++i;
        p.blocks.push_back(std::move(block));
        skip_ws();
    }
    if (p.blocks.empty()) throw std::invalid_argument("partition: empty");
    validate_blocks(p.blocks, n);
    return p;
}

SetPartition SetPartition::finest(int n) {
    SetPartition p;
    p.n = n;
    for (int i = 1; i <= n; ++i) p.blocks.push_back({i});
    return p;
}

std::vector<SetPartition> SetPartition::all(int n) {
    std::vector<SetPartition> out;
    std::vector<std::vector<int>> blocks;
    auto rec = [&](auto&& self, int next) -> void {
        if (next > n) {
            SetPartition p;
            p.n = n;
            p.blocks = blocks;
            validate_blocks(p.blocks, n);
            out.push_back(std::move(p));
            return;
        }
        const size_t count = blocks.size();
        for (size_t i = 0; i < count; ++i) {
            blocks[i].push_back(next);
            self(self, next + 1);
            blocks[i].pop_back();
        }
        blocks.push_back({next});
        self(self, next + 1);
        blocks.pop_back();
    };
    rec(rec, 1);
    return out;
}

std::string SetPartition::text() const {
    std::ostringstream o;
    for (const auto& b : blocks) {
        o << '{';
        for (size_t i = 0; i < b.size(); ++i) o << (i ? "," : "") << b[i];
        o << '}';
    }
    return o.str();
}

// ---------------------------------------------------------------------------
// Recursion engine

namespace {

Polynomial retag(const Polynomial& p, RingTag ring) {
    Polynomial out(ring);
    for (const auto& [m, c] : p.terms()) out.add_term(m, c);
    return out;
}

bool is_marked_atom(const Gen& g) {
    return g.kind == GenKind::BvO || g.kind == GenKind::BvL || g.kind == GenKind::BvD;
}

int marked_arity(const Gen& g) { return g.kind == GenKind::BvD ? 2 : 1; }

} // namespace

HilbertEngine::HilbertEngine(K3Model model, ResultCache cache)
    : model_(std::move(model)), cache_(std::move(cache)) {}

// Base case: the length-1 punctual scheme is a point of S, so the structure
// sheaf is trivial, c(T) = 1 + 24*o, and the ideal of the point against a
// marked point i is 1 - [O_Delta] with ch(O_Delta) = Delta - 2*(o,o).
// Output layout: the single block at index 1, marked point i at index 1+i.
Polynomial HilbertEngine::rec_base(const Polynomial& P, int l, int bound) {
    RingTag R = RingTag::Hilbert;
    std::map<int, std::vector<Polynomial>> ideal_chern; // marked index -> c_1..c_bound
    auto ideal = [&](int i) -> const std::vector<Polynomial>& {
        auto it = ideal_chern.find(i);
        if (it != ideal_chern.end()) return it->second;
        KClass k = KClass::trivial(R, bound, Rational(1));
        if (bound >= 2)
            k.ch[1] = Polynomial(R, bv_d(1, 1 + i)) * Rational(-1);
        if (bound >= 4) {
            Polynomial oo(R);
            oo.add_term(Monomial({bv_o(1), bv_o(1 + i)}), Rational(2));
            k.ch[3] = oo;
        }
        return ideal_chern.emplace(i, chern_from_ch(k, bound)).first->second;
    };
    Polynomial out(R);
    for (const auto& [mono, c] : P.terms()) {
        Polynomial acc(R, c);
        for (const Gen& g : mono.factors) {
            Polynomial f(R);
            switch (g.kind) {
                case GenKind::HcO:
                    break; // trivial bundle: positive Chern classes vanish
                case GenKind::HcT:
                    if (g.label == 2) {
                        Polynomial tc(R, bv_o(1));
                        f = tc * Rational(24);
                    }
                    break;
                case GenKind::HcI:
                    if (g.label <= bound) f = ideal(g.idx[0])[static_cast<size_t>(g.label) - 1];
                    break;
                case GenKind::BvO:
                case GenKind::BvL:
                case GenKind::BvD: {
                    Gen s = g;
                    for (int k = 0; k < marked_arity(s); ++k) ++s.idx[k];
                    f = Polynomial(R, s);
                    break;
                }
                default:
                    throw std::logic_error("rec_base: unexpected atom");
            }
            acc = acc.mul_trunc(f, bound);
            if (acc.is_zero()) break;
        }
        out += acc;
    }
    return bv_normalize(retag(out, RingTag::BV), model_);
}

Polynomial HilbertEngine::rec(const Polynomial& P, int n, const SetPartition& mu, int l) {
    const int m = mu.m();
    const int bound = 2 * (m + l);
    Polynomial Pt = P.truncate(bound);
    if (Pt.is_zero()) return Polynomial::zero(RingTag::BV);

    std::ostringstream keys;
    keys << "rec1|" << n << "|" << mu.text() << "|" << l << "|" << std::hex
         << model_.fingerprint() << "|" << print_canonical(Pt);
    const std::string key = keys.str();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (cache_.enabled())
        if (auto hit = cache_.get(key)) {
            Polynomial p = parse_polynomial(*hit, RingTag::BV);
            memo_.emplace(key, p);
            return p;
        }

    Polynomial out(RingTag::BV);
    if (n == 1) {
        out = rec_base(Pt, l, bound);
    } else {
        // Remove n from its block; blocks stay in canonical order because n
        // is maximal. The residual marked point gets index res = l+1.
        SetPartition mup;
        mup.n = n - 1;
        bool singleton = false;
        for (const auto& b : mu.blocks) {
            std::vector<int> nb;
            for (int x : b)
                if (x != n) nb.push_back(x);
            if (nb.empty()) { singleton = true; continue; }
            mup.blocks.push_back(std::move(nb));
        }
        const int mp = mup.m();
        const int bound2 = 2 * (mp + l + 1);
        const int res = l + 1;
        RingTag R = RingTag::Hilbert;

        // K-classes of the level-(n-1) tautological sheaves, in Chern
        // character coordinates, plus the exceptional line t.
        std::vector<Polynomial> cO, cT, cIres;
        for (int r = 1; r <= n - 1; ++r) cO.emplace_back(R, hc_o(r));
        for (int s = 1; s <= 2 * (n - 1); ++s) cT.emplace_back(R, hc_t(s));
        for (int t2 = 1; t2 <= bound2; ++t2) cIres.emplace_back(R, hc_i(t2, res));
        KClass KO = KClass::from_chern(R, bound2, Rational(n - 1), cO);
        KClass KT = KClass::from_chern(R, bound2, Rational(2 * (n - 1)), cT);
        KClass KIres = KClass::from_chern(R, bound2, Rational(1), cIres);
        KClass Lt = KClass::line(Polynomial(R, hc_e()), bound2);

        // Pullbacks of the level-n classes to the incidence variety:
        //   O:  previous O plus the exceptional line;
        //   T:  from [T] = 2 - chi(I,I) and the ideal relation, expanded
        //       bilinearly (trivial canonical class):
        //         previous T + L (x) I(res)^dual + L^dual (x) I(res)
        //         + (rank-0 class with ch_2 = -24*o(res));
        //   I(i): previous I(i) minus L (x) O_Delta(res, i).
        std::vector<Polynomial> A_O = chern_from_ch(KO + Lt, bound2);
        KClass Kc = KClass::zero(R, bound2);
        if (bound2 >= 2)
            Kc.ch[1] = Polynomial(R, bv_o(res)) * Rational(-24);
        std::vector<Polynomial> A_T = chern_from_ch(
            KT + Lt.tensor(KIres.dual()) + Lt.dual().tensor(KIres) + Kc, bound2);
        std::map<int, std::vector<Polynomial>> A_I;
        auto ideal_subst = [&](int i) -> const std::vector<Polynomial>& {
            auto it = A_I.find(i);
            if (it != A_I.end()) return it->second;
            std::vector<Polynomial> cI;
            for (int t2 = 1; t2 <= bound2; ++t2) cI.emplace_back(R, hc_i(t2, i));
            KClass OD = KClass::zero(R, bound2);
            if (bound2 >= 2) OD.ch[1] = Polynomial(R, bv_d(res, i));
            if (bound2 >= 4) {
                Polynomial oo(R);
                oo.add_term(Monomial({bv_o(res), bv_o(i)}), Rational(-2));
                OD.ch[3] = oo;
            }
            KClass KIn = KClass::from_chern(R, bound2, Rational(1), cI) - Lt.tensor(OD);
            return A_I.emplace(i, chern_from_ch(KIn, bound2)).first->second;
        };

        Polynomial Psub(R);
        for (const auto& [mono, c] : Pt.terms()) {
            Polynomial acc(R, c);
            for (const Gen& g : mono.factors) {
                Polynomial f(R);
                switch (g.kind) {
                    case GenKind::HcO: f = A_O[static_cast<size_t>(g.label) - 1]; break;
                    case GenKind::HcT: f = A_T[static_cast<size_t>(g.label) - 1]; break;
                    case GenKind::HcI: f = ideal_subst(g.idx[0])[static_cast<size_t>(g.label) - 1]; break;
                    case GenKind::BvO:
                    case GenKind::BvL:
                    case GenKind::BvD: f = Polynomial(R, g); break;
                    default: throw std::logic_error("rec: unexpected atom");
                }
                acc = acc.mul_trunc(f, bound2);
                if (acc.is_zero()) break;
            }
            Psub += acc;
        }

        // Push forward along sigma: collect by powers of the exceptional
        // class t. Two regimes, depending on whether the residual point is
        // free or glued to a larger cluster.
        //
        // Free residual (block of n is a singleton): the full-space formula
        // sigma_*(t^i) = (-1)^i c_i(-I(res)) applies, and afterwards the
        // residual factor simply becomes the new block -- a relabeling.
        //
        // Glued residual: the incidence component sits inside the
        // exceptional divisor of the blowup along the universal subscheme,
        // so t^i integrates along the P^1 fibers to the Segre class
        // s_{i-1}(N) of that center (the t^0 term drops), the recursion's
        // output acquires the diagonal linking the residual factor to its
        // block, and the duplicated factor is then pushed away. The center's
        // normal data is tautological: c_1(N) = -c_1(O) and
        // c_2(N) = -ch_2(I(res)) (adjunction plus the Koszul resolution;
        // the center is smooth for the levels reached at desk scale).
        Polynomial Rpoly(R);
        std::vector<Polynomial> weight; // weight[i] multiplies the t^i part
        weight.emplace_back(singleton ? Polynomial::one(R) : Polynomial::zero(R));
        if (singleton) {
            std::vector<Polynomial> cNegI = chern_from_ch(-KIres, bound2);
            for (int i = 1; i <= bound2; ++i) {
                Polynomial si = cNegI[static_cast<size_t>(i) - 1];
                if (i % 2 == 1) si = -si;
                weight.push_back(std::move(si));
            }
        } else {
            Polynomial c1N = -Polynomial(R, hc_o(1));
            Polynomial c2N(R);
            c2N.add_term(Monomial::single(hc_i(2, res)), Rational(1));
            c2N.add_term(Monomial({hc_i(1, res), hc_i(1, res)}), Rational(-1, 2));
            std::vector<Polynomial> segre{Polynomial::one(R)}; // s_0, s_1, ...
            for (int j = 1; j <= bound2; ++j) {
                Polynomial sj = -segre[static_cast<size_t>(j) - 1].mul_trunc(c1N, bound2);
                if (j >= 2) sj -= segre[static_cast<size_t>(j) - 2].mul_trunc(c2N, bound2);
                segre.push_back(std::move(sj));
            }
            for (int i = 1; i <= bound2; ++i)
                weight.push_back(segre[static_cast<size_t>(i) - 1]);
        }
        for (const auto& [mono, c] : Psub.terms()) {
            int tpow = 0;
            std::vector<Gen> rest;
            for (const Gen& g : mono.factors) {
                if (g.kind == GenKind::HcE) ++tpow;
                else rest.push_back(g);
            }
            Polynomial base(R);
            base.add_term(Monomial(std::move(rest)), c);
            Rpoly += base.mul_trunc(weight[static_cast<size_t>(tpow)], bound2);
        }

        Polynomial B = rec(Rpoly, n - 1, mup, l + 1); // blocks 1..mp, marked mp+1..mp+l+1
        if (singleton) {
            // residual -> block index mp+1, marked j -> mp+1+j
            std::vector<int> map(static_cast<size_t>(mp + l + 1));
            for (int i = 1; i <= mp; ++i) map[static_cast<size_t>(i) - 1] = i;
            for (int j = 1; j <= l; ++j) map[static_cast<size_t>(mp + j) - 1] = mp + 1 + j;
            map[static_cast<size_t>(mp + l)] = mp + 1;
            out = apply_index_map(B, map);
        } else {
            int b = 0;
            for (int j = 0; j < m; ++j)
                if (std::find(mu.blocks[static_cast<size_t>(j)].begin(),
                              mu.blocks[static_cast<size_t>(j)].end(), n) !=
                    mu.blocks[static_cast<size_t>(j)].end())
                    b = j + 1;
            Polynomial glued =
                bv_normalize(B * Polynomial(RingTag::BV, bv_d(b, mp + l + 1)), model_);
            out = forget_index(glued.truncate(bound2), mp + l + 1);
        }
        out = bv_normalize(out, model_);
    }

    memo_.emplace(key, out);
    if (cache_.enabled()) cache_.put(key, print_canonical(out));
    return out;
}

Polynomial HilbertEngine::pullback(const Polynomial& P, int n, const SetPartition& mu, int l) {
    if (n < 1 || l < 0) throw std::invalid_argument("pullback: bad n or l");
    if (mu.n != n) throw std::invalid_argument("pullback: partition is not of {1..n}");
    if (P.ring() != RingTag::Hilbert)
        throw std::invalid_argument("pullback: expected a Hilbert-ring polynomial");
    for (const auto& [mono, c] : P.terms())
        for (const Gen& g : mono.factors) {
            switch (g.kind) {
                case GenKind::HcO:
                    if (g.label < 1 || g.label > n)
                        throw std::invalid_argument("pullback: c(O,r) needs 1 <= r <= n");
                    break;
                case GenKind::HcT:
                    if (g.label < 1 || g.label > 2 * n)
                        throw std::invalid_argument("pullback: c(T,s) needs 1 <= s <= 2n");
                    break;
                case GenKind::HcI:
                    if (g.idx[0] < 1 || g.idx[0] > l)
                        throw std::invalid_argument("pullback: c(I,t,i) marked index out of range");
                    if (g.label < 1) throw std::invalid_argument("pullback: c(I,t,i) needs t >= 1");
                    break;
                case GenKind::HcL:
                    if (g.label < 1 || g.label > model_.rho())
                        throw std::invalid_argument("pullback: L(s) NS label out of range");
                    break;
                case GenKind::BvO:
                case GenKind::BvL:
                case GenKind::BvD:
                    for (int k = 0; k < marked_arity(g); ++k)
                        if (g.idx[k] < 1 || g.idx[k] > l)
                            throw std::invalid_argument("pullback: marked index out of range");
                    if (g.kind == GenKind::BvL && (g.label < 1 || g.label > model_.rho()))
                        throw std::invalid_argument("pullback: L(s,i) NS label out of range");
                    break;
                default:
                    throw std::invalid_argument("pullback: atom not allowed at the top level");
            }
        }

    const int m = mu.m();
    const int bound = 2 * (m + l);

    // Split off the line-bundle decorations: a monomial in the L(s) pulls
    // back to the product over blocks of L(s)^{|block|}, i.e. each L(s)
    // factor becomes sum_j |mu_j| * L(s, block j) on the output.
    std::map<Monomial, Polynomial> groups; // L-monomial -> stripped part
    for (const auto& [mono, c] : P.terms()) {
        std::vector<Gen> dec, rest;
        for (const Gen& g : mono.factors)
            (g.kind == GenKind::HcL ? dec : rest).push_back(g);
        auto [it, inserted] =
            groups.try_emplace(Monomial(std::move(dec)), Polynomial::zero(RingTag::Hilbert));
        it->second.add_term(Monomial(std::move(rest)), c);
    }

    Polynomial result(RingTag::BV);
    for (const auto& [dec, part] : groups) {
        Polynomial core = rec(part, n, mu, l);
        Polynomial decorated(RingTag::BV, Rational(1));
        for (const Gen& g : dec.factors) {
            Polynomial sum(RingTag::BV);
            for (int j = 1; j <= m; ++j)
                sum.add_term(Monomial::single(bv_l(g.label, j)),
                             Rational(static_cast<int>(mu.blocks[static_cast<size_t>(j) - 1].size())));
            decorated = decorated.mul_trunc(sum, bound);
        }
        result += decorated.mul_trunc(core, bound);
    }
    return bv_normalize(result, model_);
}

Rational HilbertEngine::chern_number(const Polynomial& P, int n) {
    if (P.homogeneous_codim() != 2 * n)
        throw std::invalid_argument("chern_number: polynomial must be homogeneous of codim 2n");
    Polynomial E = pullback(P, n, SetPartition::finest(n), 0);
    Rational nfact(1);
    for (int i = 2; i <= n; ++i) nfact = nfact * Rational(i);
    return bv_integrate(E, n, model_) * nfact.inverse();
}

HilbertEngine::Report HilbertEngine::verify_chow_zero(const Polynomial& P, int n, int l) {
    Report rep;
    bool any_nonzero = false, indeterminate = false;
    const int cd = P.homogeneous_codim();
    for (const SetPartition& mu : SetPartition::all(n)) {
        PartitionReport pr;
        pr.partition = mu.text();
        pr.normal_form = pullback(P, n, mu, l);
        const int m = mu.m(), mtot = m + l;
        pr.realize_zero = model_.realize(pr.normal_form, mtot).is_zero();
        pr.small_m_hypothesis = mtot <= 2 * model_.b_tr() + 1;
        int big = 0;
        for (const auto& b : mu.blocks) big += b.size() >= 2;
        pr.block_hypothesis = big <= 2;
        pr.codim_shortcut = cd >= 2 * n - 2 && m <= n - 2;

        // Self-check: the pullback is invariant under relabeling equal-size
        // blocks (marked indices fixed).
        for (int a = 1; a <= m; ++a)
            for (int b = a + 1; b <= m; ++b) {
                if (mu.blocks[static_cast<size_t>(a) - 1].size() !=
                    mu.blocks[static_cast<size_t>(b) - 1].size())
                    continue;
                std::vector<int> map(static_cast<size_t>(mtot));
                for (int i = 1; i <= mtot; ++i) map[static_cast<size_t>(i) - 1] = i;
                map[static_cast<size_t>(a) - 1] = b;
                map[static_cast<size_t>(b) - 1] = a;
                if (apply_index_map(pr.normal_form, map) != pr.normal_form)
                    throw std::logic_error("verify_chow_zero: pullback not block-permutation "
                                           "invariant");
            }

        if (!pr.realize_zero) {
            any_nonzero = true;
        } else if (!pr.normal_form.is_zero()) {
            if (pr.small_m_hypothesis || pr.block_hypothesis)
                throw std::logic_error("verify_chow_zero: cohomologically trivial pullback with "
                                       "nonzero normal form under a faithfulness hypothesis");
            indeterminate = true;
        }
        rep.partitions.push_back(std::move(pr));
    }
    rep.verdict = any_nonzero ? Verdict::CohomologicallyNonzero
                              : (indeterminate ? Verdict::Indeterminate : Verdict::ChowZero);
    return rep;
}

} // namespace tautring
