#include "tautring/bv.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace tautring {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ChowZero: return "chow_zero";
        case Verdict::CohomologicallyNonzero: return "cohomologically_nonzero";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

bool is_bv_gen(const Gen& g) {
    return g.kind == GenKind::BvO || g.kind == GenKind::BvL || g.kind == GenKind::BvD;
}

int index_count(const Gen& g) { return g.kind == GenKind::BvD ? 2 : 1; }

bool share_index(const Gen& a, const Gen& b) {
    for (int p = 0; p < index_count(a); ++p)
        for (int q = 0; q < index_count(b); ++q)
            if (a.idx[p] == b.idx[q]) return true;
    return false;
}

// Number of factor pairs sharing an index: the termination measure.
int sharing_pairs(const Monomial& m) {
    int n = 0;
    for (size_t p = 0; p < m.factors.size(); ++p)
        for (size_t q = p + 1; q < m.factors.size(); ++q)
            if (share_index(m.factors[p], m.factors[q])) ++n;
    return n;
}

// Replacement for the factor pair (a,b), or nullopt when no rule applies.
// `a` and `b` are in canonical order (o < L < D by kind).
std::optional<Polynomial> rule_for(const Gen& a, const Gen& b, const K3Model& model) {
    auto poly = [](std::initializer_list<std::pair<Monomial, Rational>> terms) {
        Polynomial p(RingTag::BV);
        for (const auto& [m, c] : terms) p.add_term(m, c);
        return p;
    };
    auto mono = [](std::initializer_list<Gen> gens) { return Monomial(std::vector<Gen>(gens)); };

    // R1: o*o and L*o on a shared index annihilate.
    if (a.kind == GenKind::BvO && b.kind == GenKind::BvO && a.idx[0] == b.idx[0])
        return Polynomial::zero(RingTag::BV);
    if (a.kind == GenKind::BvO && b.kind == GenKind::BvL && a.idx[0] == b.idx[0])
        return Polynomial::zero(RingTag::BV);

    // R2: L(s,i)*L(t,i) -> <s,t>*o(i).
    if (a.kind == GenKind::BvL && b.kind == GenKind::BvL && a.idx[0] == b.idx[0])
        return poly({{mono({bv_o(a.idx[0])}), model.ns_pairing(a.label, b.label)}});

    // R3: D(i,j)*o(i or j) -> o(i)o(j).
    if (a.kind == GenKind::BvO && b.kind == GenKind::BvD &&
        (a.idx[0] == b.idx[0] || a.idx[0] == b.idx[1]))
        return poly({{mono({bv_o(b.idx[0]), bv_o(b.idx[1])}), Rational(1)}});

    // R4: D(i,j)*L(s,i or j) -> L(s,i)o(j) + o(i)L(s,j).
    if (a.kind == GenKind::BvL && b.kind == GenKind::BvD &&
        (a.idx[0] == b.idx[0] || a.idx[0] == b.idx[1])) {
        int i = b.idx[0], j = b.idx[1], s = a.label;
        return poly({{mono({bv_l(s, i), bv_o(j)}), Rational(1)},
                     {mono({bv_o(i), bv_l(s, j)}), Rational(1)}});
    }

    if (a.kind == GenKind::BvD && b.kind == GenKind::BvD) {
        // R6: equal diagonals square to (deg Delta^2)*o*o. The constant is
        // rho + b_tr + 2, i.e. 24 on a full-rank model; keeping it
        // model-derived makes normalize/realize agree on shrunken models.
        if (a.idx == b.idx)
            return poly({{mono({bv_o(a.idx[0]), bv_o(a.idx[1])}),
                          Rational(model.rho() + model.b_tr() + 2)}});
        // R5: diagonals sharing exactly one index.
        int shared = -1;
        for (int p = 0; p < 2 && shared < 0; ++p)
            for (int q = 0; q < 2 && shared < 0; ++q)
                if (a.idx[p] == b.idx[q]) shared = a.idx[p];
        if (shared >= 0) {
            int i = a.idx[0] == shared ? a.idx[1] : a.idx[0];
            int j = shared;
            int k = b.idx[0] == shared ? b.idx[1] : b.idx[0];
            return poly({{mono({bv_d(i, j), bv_o(k)}), Rational(1)},
                         {mono({bv_o(i), bv_d(j, k)}), Rational(1)},
                         {mono({bv_d(i, k), bv_o(j)}), Rational(1)},
                         {mono({bv_o(i), bv_o(j)}), Rational(-1)},
                         {mono({bv_o(j), bv_o(k)}), Rational(-1)},
                         {mono({bv_o(i), bv_o(k)}), Rational(-1)}});
        }
    }
    return std::nullopt;
}

// Rule priority used by the deterministic strategy. Pairs are scanned in
// canonical factor order; among the matches the lowest rule number fires.
int rule_number(const Gen& a, const Gen& b) {
    if (a.kind == GenKind::BvO && b.kind == GenKind::BvO) return 1;
    if (a.kind == GenKind::BvO && b.kind == GenKind::BvL) return 1;
    if (a.kind == GenKind::BvL && b.kind == GenKind::BvL) return 2;
    if (a.kind == GenKind::BvO && b.kind == GenKind::BvD) return 3;
    if (a.kind == GenKind::BvL && b.kind == GenKind::BvD) return 4;
    if (a.kind == GenKind::BvD && b.kind == GenKind::BvD) return a.idx == b.idx ? 6 : 5;
    return 7;
}

} // namespace

bool bv_is_normal(const Polynomial& p) {
    for (const auto& [m, _] : p.terms()) {
        std::vector<int> used;
        for (const Gen& g : m.factors) {
            if (!is_bv_gen(g)) return false;
            for (int k = 0; k < index_count(g); ++k) used.push_back(g.idx[k]);
        }
        std::sort(used.begin(), used.end());
        if (std::adjacent_find(used.begin(), used.end()) != used.end()) return false;
    }
    return true;
}

Polynomial bv_normalize(const Polynomial& p, const K3Model& model) {
    if (p.ring() != RingTag::BV) throw std::invalid_argument("bv_normalize: not a BV polynomial");
    Polynomial out(RingTag::BV);
    std::vector<std::pair<Monomial, Rational>> work(p.terms().begin(), p.terms().end());
    while (!work.empty()) {
        auto [m, c] = std::move(work.back());
        work.pop_back();
        if (c.is_zero()) continue;

        // Find the firing pair: lowest rule number, scanning pairs in
        // canonical factor order.
        int best_rule = 7;
        size_t best_p = 0, best_q = 0;
        for (size_t pi = 0; pi < m.factors.size(); ++pi)
            for (size_t qi = pi + 1; qi < m.factors.size(); ++qi) {
                if (!share_index(m.factors[pi], m.factors[qi])) continue;
                int r = rule_number(m.factors[pi], m.factors[qi]);
                if (r < best_rule) { best_rule = r; best_p = pi; best_q = qi; }
            }
        if (best_rule == 7) {
            out.add_term(m, c);
            continue;
        }
        auto repl = rule_for(m.factors[best_p], m.factors[best_q], model);
        if (!repl)
            throw std::logic_error("bv_normalize: matched pair without a rule");
        Monomial context;
        for (size_t k = 0; k < m.factors.size(); ++k)
            if (k != best_p && k != best_q) context.factors.push_back(m.factors[k]);
        context = Monomial(std::move(context.factors));
        int measure = sharing_pairs(m);
        for (const auto& [rm, rc] : repl->terms()) {
            Monomial next = context * rm;
            if (sharing_pairs(next) >= measure)
                throw std::logic_error("bv_normalize: termination measure did not decrease");
            work.emplace_back(std::move(next), c * rc);
        }
    }
    return out;
}

Polynomial forget_index(const Polynomial& p, int j) {
    if (!bv_is_normal(p)) throw std::invalid_argument("forget_index: input not normal");
    Polynomial out(RingTag::BV);
    for (const auto& [m, c] : p.terms()) {
        bool dead = false, found = false;
        std::vector<Gen> kept;
        for (const Gen& g : m.factors) {
            bool touches = false;
            for (int k = 0; k < index_count(g); ++k) touches |= g.idx[k] == j;
            if (!touches) { kept.push_back(g); continue; }
            found = true;
            switch (g.kind) {
                case GenKind::BvO: break;           // integrates to 1
                case GenKind::BvL: dead = true; break;
                case GenKind::BvD: break;           // projects to the fundamental class
                default: dead = true; break;
            }
        }
        if (dead || !found) continue;
        for (Gen& g : kept)
            for (int k = 0; k < index_count(g); ++k)
                if (g.idx[k] > j) --g.idx[k];
        out.add_term(Monomial(std::move(kept)), c);
    }
    return out;
}

Rational bv_integrate(const Polynomial& p, int m, const K3Model& model) {
    Polynomial n = bv_normalize(p, model);
    Rational total(0);
    for (const auto& [mono, c] : n.terms()) {
        if (static_cast<int>(mono.factors.size()) != m) continue;
        bool all_o = true;
        for (const Gen& g : mono.factors) all_o &= g.kind == GenKind::BvO;
        if (all_o) total += c; // normality makes the indices distinct, hence a cover
    }
    return total;
}

Polynomial apply_index_map(const Polynomial& p, const std::vector<int>& map) {
    Polynomial out(p.ring());
    for (const auto& [m, c] : p.terms()) {
        std::vector<Gen> gens;
        gens.reserve(m.factors.size());
        for (Gen g : m.factors) {
            if (!is_bv_gen(g)) { gens.push_back(g); continue; }
            for (int k = 0; k < index_count(g); ++k) {
                int i = g.idx[k];
                if (i < 1 || i > static_cast<int>(map.size()))
                    throw std::out_of_range("apply_index_map: index out of range");
                g.idx[k] = map[i - 1];
            }
            if (g.kind == GenKind::BvD) {
                if (g.idx[0] == g.idx[1])
                    throw std::invalid_argument("apply_index_map: map not injective on D");
                if (g.idx[0] > g.idx[1]) std::swap(g.idx[0], g.idx[1]);
            }
            gens.push_back(g);
        }
        out.add_term(Monomial(std::move(gens)), c);
    }
    return out;
}

Polynomial symmetrize(const Polynomial& p, int k) {
    if (k <= 1) return p;
    // Indices above k are fixed; build each permutation's full index map lazily.
    int top = k;
    for (const auto& [m, _] : p.terms())
        for (const Gen& g : m.factors)
            if (is_bv_gen(g)) top = std::max({top, g.idx[0], g.idx[1]});
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 1);
    Polynomial sum(p.ring());
    Rational count(0);
    do {
        std::vector<int> map(top);
        for (int i = 0; i < top; ++i) map[i] = i + 1;
        for (int i = 0; i < k; ++i) map[i] = perm[i];
        sum += apply_index_map(p, map);
        count += Rational(1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum * count.inverse();
}

VanishingReport verify_vanishing(const Polynomial& p, int m, const K3Model& model) {
    VanishingReport r;
    TensorClass realized = model.realize(p, m);
    r.realize_zero = realized.is_zero();
    if (!r.realize_zero) {
        r.verdict = Verdict::CohomologicallyNonzero;
        r.normal_form = bv_normalize(p, model);
        return r;
    }
    r.small_m_hypothesis = m <= 2 * model.b_tr() + 1;
    r.invariance_hypothesis = m >= 4 && symmetrize(p, m - 2) == p;
    r.normal_form = bv_normalize(p, model);
    if (r.small_m_hypothesis || r.invariance_hypothesis) {
        if (!r.normal_form.is_zero())
            throw std::logic_error("verify_vanishing: cohomologically trivial class with "
                                   "nonzero normal form under a faithfulness hypothesis");
        r.verdict = Verdict::ChowZero;
    } else {
        r.verdict = r.normal_form.is_zero() ? Verdict::ChowZero : Verdict::Indeterminate;
    }
    return r;
}

} // namespace tautring
