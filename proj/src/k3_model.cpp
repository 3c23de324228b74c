#include "tautring/k3_model.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tautring {

void TensorClass::add(const std::vector<BasisVector>& tuple, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms.find(tuple);
    if (it == terms.end()) {
        terms.emplace(tuple, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

TensorClass& TensorClass::operator+=(const TensorClass& o) {
    if (m != o.m) throw std::invalid_argument("TensorClass: factor count mismatch");
    for (const auto& [t, c] : o.terms) add(t, c);
    return *this;
}

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

void check_symmetric_nondegenerate(const RatMatrix& g, const char* name) {
    if (g.rows() != g.cols() || g.rows() == 0)
        throw std::invalid_argument(std::string(name) + ": must be square and nonempty");
    for (size_t i = 0; i < g.rows(); ++i)
        for (size_t j = i + 1; j < g.cols(); ++j)
            if (g.at(i, j) != g.at(j, i))
                throw std::invalid_argument(std::string(name) + ": not symmetric");
    if (mat_rank(g) != g.rows())
        throw std::invalid_argument(std::string(name) + ": degenerate Gram matrix");
}

} // namespace

K3Model::K3Model(RatMatrix ns_gram, RatMatrix tr_gram)
    : ns_gram_(std::move(ns_gram)),
      tr_gram_(std::move(tr_gram)),
      ns_inv_(1, 1),
      tr_inv_(1, 1),
      fingerprint_(0) {
    check_symmetric_nondegenerate(ns_gram_, "ns_gram");
    check_symmetric_nondegenerate(tr_gram_, "tr_gram");
    ns_inv_ = mat_inverse(ns_gram_);
    tr_inv_ = mat_inverse(tr_gram_);
    fingerprint_ = fnv1a(serialize());
}

K3Model K3Model::standard(int b_tr) {
    RatMatrix ns(1, 1);
    ns.at(0, 0) = Rational(2);
    RatMatrix tr = RatMatrix::identity(static_cast<size_t>(b_tr));
    return K3Model(std::move(ns), std::move(tr));
}

K3Model K3Model::parse_stream(std::istream& in) {
    auto expect = [&](const std::string& word) {
        std::string tok;
        if (!(in >> tok) || tok != word)
            throw std::runtime_error("model file: expected '" + word + "'");
    };
    auto read_int = [&]() {
        long v;
        if (!(in >> v) || v < 1) throw std::runtime_error("model file: bad dimension");
        return static_cast<size_t>(v);
    };
    auto read_matrix = [&](size_t n) {
        RatMatrix m(n, n);
        std::string tok;
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) {
                if (!(in >> tok)) throw std::runtime_error("model file: truncated matrix");
                m.at(r, c) = Rational::from_string(tok);
            }
        return m;
    };
    expect("rho");
    size_t rho = read_int();
    expect("b_tr");
    size_t btr = read_int();
    expect("ns_gram");
    RatMatrix ns = read_matrix(rho);
    expect("tr_gram");
    RatMatrix tr = read_matrix(btr);
    return K3Model(std::move(ns), std::move(tr));
}

K3Model K3Model::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    return parse_stream(in);
}

std::string K3Model::serialize() const {
    std::ostringstream out;
    out << "rho " << rho() << "\nb_tr " << b_tr() << "\nns_gram\n";
    for (int r = 0; r < rho(); ++r) {
        for (int c = 0; c < rho(); ++c) out << (c ? " " : "") << ns_gram_.at(r, c).str();
        out << "\n";
    }
    out << "tr_gram\n";
    for (int r = 0; r < b_tr(); ++r) {
        for (int c = 0; c < b_tr(); ++c) out << (c ? " " : "") << tr_gram_.at(r, c).str();
        out << "\n";
    }
    return out.str();
}

TensorClass K3Model::diagonal_tr(int m, int i, int j) const {
    TensorClass t;
    t.m = m;
    std::vector<BasisVector> base(static_cast<size_t>(m));
    for (int a = 0; a < b_tr(); ++a)
        for (int b = 0; b < b_tr(); ++b) {
            Rational g = tr_inv_.at(a, b);
            if (g.is_zero()) continue;
            auto tup = base;
            tup[i - 1] = BasisVector{BasisVector::Tr, a};
            tup[j - 1] = BasisVector{BasisVector::Tr, b};
            t.add(tup, g);
        }
    return t;
}

TensorClass K3Model::diagonal_expansion(int m, int i, int j) const {
    TensorClass t = diagonal_tr(m, i, j);
    std::vector<BasisVector> base(static_cast<size_t>(m));
    {
        auto tup = base;
        tup[j - 1] = BasisVector{BasisVector::Pt, 0};
        t.add(tup, Rational(1));
        tup = base;
        tup[i - 1] = BasisVector{BasisVector::Pt, 0};
        t.add(tup, Rational(1));
    }
    for (int s = 0; s < rho(); ++s)
        for (int u = 0; u < rho(); ++u) {
            Rational h = ns_inv_.at(s, u);
            if (h.is_zero()) continue;
            auto tup = base;
            tup[i - 1] = BasisVector{BasisVector::Ns, s};
            tup[j - 1] = BasisVector{BasisVector::Ns, u};
            t.add(tup, h);
        }
    return t;
}

Rational K3Model::slot_product(const BasisVector& a, const BasisVector& b, bool& ok,
                               BasisVector& out) const {
    ok = true;
    if (a.kind == BasisVector::Unit) { out = b; return Rational(1); }
    if (b.kind == BasisVector::Unit) { out = a; return Rational(1); }
    // both of positive degree; only deg 2 x deg 2 survives
    if (a.kind == BasisVector::Pt || b.kind == BasisVector::Pt) { ok = false; return Rational(0); }
    if (a.kind != b.kind) { ok = false; return Rational(0); } // ns is orthogonal to tr
    out = BasisVector{BasisVector::Pt, 0};
    if (a.kind == BasisVector::Ns) return ns_gram_.at(a.k, b.k);
    return tr_gram_.at(a.k, b.k);
}

TensorClass K3Model::product(const TensorClass& a, const TensorClass& b) const {
    if (a.m != b.m) throw std::invalid_argument("TensorClass product: factor count mismatch");
    TensorClass r;
    r.m = a.m;
    for (const auto& [ta, ca] : a.terms)
        for (const auto& [tb, cb] : b.terms) {
            Rational coeff = ca * cb;
            std::vector<BasisVector> tup(static_cast<size_t>(a.m));
            bool alive = true;
            for (int s = 0; s < a.m && alive; ++s) {
                bool ok;
                BasisVector out;
                Rational f = slot_product(ta[s], tb[s], ok, out);
                if (!ok || f.is_zero()) { alive = false; break; }
                coeff *= f;
                tup[s] = out;
            }
            if (alive) r.add(tup, coeff);
        }
    return r;
}

TensorClass K3Model::realize(const Polynomial& p, int m) const {
    if (p.ring() != RingTag::BV && p.ring() != RingTag::Hilbert)
        throw std::invalid_argument("realize: not a BV polynomial");
    TensorClass result;
    result.m = m;
    auto check_index = [&](int i) {
        if (i < 1 || i > m) throw std::out_of_range("realize: factor index out of range");
    };
    for (const auto& [mono, c] : p.terms()) {
        TensorClass acc;
        acc.m = m;
        acc.add(std::vector<BasisVector>(static_cast<size_t>(m)), Rational(1));
        for (const Gen& g : mono.factors) {
            TensorClass factor;
            factor.m = m;
            switch (g.kind) {
                case GenKind::BvO: {
                    check_index(g.idx[0]);
                    std::vector<BasisVector> tup(static_cast<size_t>(m));
                    tup[g.idx[0] - 1] = BasisVector{BasisVector::Pt, 0};
                    factor.add(tup, Rational(1));
                    break;
                }
                case GenKind::BvL: {
                    check_index(g.idx[0]);
                    if (g.label < 1 || g.label > rho())
                        throw std::out_of_range("realize: NS label out of range");
                    std::vector<BasisVector> tup(static_cast<size_t>(m));
                    tup[g.idx[0] - 1] = BasisVector{BasisVector::Ns, g.label - 1};
                    factor.add(tup, Rational(1));
                    break;
                }
                case GenKind::BvD: {
                    check_index(g.idx[0]);
                    check_index(g.idx[1]);
                    factor = diagonal_expansion(m, g.idx[0], g.idx[1]);
                    break;
                }
                default:
                    throw std::invalid_argument("realize: non-BV generator in polynomial");
            }
            acc = product(acc, factor);
            if (acc.is_zero()) break;
        }
        for (auto& [t, k] : acc.terms) result.add(t, k * c);
    }
    return result;
}

Rational K3Model::integrate_tensor(const TensorClass& t) const {
    std::vector<BasisVector> top(static_cast<size_t>(t.m), BasisVector{BasisVector::Pt, 0});
    auto it = t.terms.find(top);
    return it == t.terms.end() ? Rational(0) : it->second;
}

TensorClass gamma_action(const TrMonomial& mono, const TensorClass& eta, const K3Model& model) {
    int s = eta.m;
    int n = 2 * s;
    std::set<int> seen;
    for (auto [i, j] : mono.pairs) {
        if (i < 1 || j < 1 || i > n || j > n || i == j)
            throw std::invalid_argument("gamma_action: pair index out of range");
        if (!seen.insert(i).second || !seen.insert(j).second)
            throw std::invalid_argument("gamma_action: repeated index in monomial");
    }
    if (static_cast<int>(seen.size()) != n)
        throw std::invalid_argument("gamma_action: monomial must use each of 1..2s once");

    // p_2^* eta on 2s slots
    TensorClass cur;
    cur.m = n;
    for (const auto& [tup, c] : eta.terms) {
        std::vector<BasisVector> t(static_cast<size_t>(n));
        for (int k = 0; k < s; ++k) t[s + k] = tup[k];
        cur.add(t, c);
    }
    for (auto [i, j] : mono.pairs)
        cur = model.product(cur, model.diagonal_tr(n, i, j));

    // p_{1*}: integrate the last s slots (each must be the point class)
    TensorClass out;
    out.m = s;
    for (const auto& [tup, c] : cur.terms) {
        bool push = true;
        for (int k = s; k < n; ++k)
            if (tup[k].kind != BasisVector::Pt) { push = false; break; }
        if (!push) continue;
        out.add(std::vector<BasisVector>(tup.begin(), tup.begin() + s), c);
    }
    return out;
}

std::vector<Monomial> normal_monomials(int m, int codim, int rho) {
    std::vector<Monomial> result;
    std::vector<Gen> current;
    // Assign index i a role: skip, o(i), L(s,i), or D(i,j) with j > i unused.
    std::vector<bool> used(static_cast<size_t>(m) + 1, false);
    std::function<void(int, int)> rec = [&](int i, int deg) {
        if (deg > codim) return;
        if (i > m) {
            if (deg == codim) result.emplace_back(current);
            return;
        }
        if (used[i]) { rec(i + 1, deg); return; }
        rec(i + 1, deg); // index unused
        current.push_back(bv_o(i));
        rec(i + 1, deg + 2);
        current.pop_back();
        for (int s = 1; s <= rho; ++s) {
            current.push_back(bv_l(s, i));
            rec(i + 1, deg + 1);
            current.pop_back();
        }
        for (int j = i + 1; j <= m; ++j) {
            if (used[j]) continue;
            used[j] = true;
            current.push_back(bv_d(i, j));
            rec(i + 1, deg + 2);
            current.pop_back();
            used[j] = false;
        }
    };
    rec(1, 0);
    std::sort(result.begin(), result.end());
    return result;
}

namespace {

// Rank of a family of tensor classes, as vectors over the union of tuples.
size_t tensor_family_rank(const std::vector<TensorClass>& family) {
    std::map<std::vector<BasisVector>, size_t> columns;
    for (const auto& t : family)
        for (const auto& [tup, _] : t.terms)
            columns.emplace(tup, columns.size());
    if (columns.empty()) return 0;
    RatMatrix mat(family.size(), columns.size());
    for (size_t r = 0; r < family.size(); ++r)
        for (const auto& [tup, c] : family[r].terms)
            mat.at(r, columns[tup]) = c;
    return mat_rank(mat);
}

} // namespace

std::pair<size_t, size_t> monomial_basis_rank(int m, int codim, const K3Model& model) {
    std::vector<Monomial> monos = normal_monomials(m, codim, model.rho());
    std::vector<TensorClass> realized;
    realized.reserve(monos.size());
    for (const auto& mono : monos) {
        Polynomial p(RingTag::BV);
        p.add_term(mono, Rational(1));
        realized.push_back(model.realize(p, m));
    }
    return {monos.size(), tensor_family_rank(realized)};
}

std::pair<size_t, size_t> invariant_rank(int m, const std::vector<int>& index_set,
                                         const K3Model& model) {
    std::vector<int> I = index_set;
    std::sort(I.begin(), I.end());
    if (I.size() % 2 != 0 || I.empty())
        throw std::invalid_argument("invariant_rank: |I| must be even and positive");
    for (int i : I)
        if (i < 1 || i > m) throw std::invalid_argument("invariant_rank: index out of range");

    // All perfect matchings of I.
    std::vector<std::vector<std::pair<int, int>>> matchings;
    std::function<void(std::vector<int>&, std::vector<std::pair<int, int>>&)> rec =
        [&](std::vector<int>& rest, std::vector<std::pair<int, int>>& acc) {
            if (rest.empty()) {
                matchings.push_back(acc);
                return;
            }
            int a = rest[0];
            for (size_t k = 1; k < rest.size(); ++k) {
                int b = rest[k];
                std::vector<int> next;
                for (size_t t = 1; t < rest.size(); ++t)
                    if (t != k) next.push_back(rest[t]);
                acc.emplace_back(a, b);
                rec(next, acc);
                acc.pop_back();
            }
        };
    {
        std::vector<int> rest = I;
        std::vector<std::pair<int, int>> acc;
        rec(rest, acc);
    }

    auto canon = [](std::vector<std::pair<int, int>> ps) {
        for (auto& [a, b] : ps)
            if (a > b) std::swap(a, b);
        std::sort(ps.begin(), ps.end());
        return ps;
    };

    // Orbits under transpositions of elements of I that are <= m-2.
    std::vector<int> movable;
    for (int i : I)
        if (i <= m - 2) movable.push_back(i);
    std::vector<size_t> parent(matchings.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::map<std::vector<std::pair<int, int>>, size_t> lookup;
    for (size_t k = 0; k < matchings.size(); ++k) lookup[canon(matchings[k])] = k;
    for (size_t k = 0; k < matchings.size(); ++k)
        for (size_t a = 0; a < movable.size(); ++a)
            for (size_t b = a + 1; b < movable.size(); ++b) {
                auto swapped = matchings[k];
                for (auto& [x, y] : swapped) {
                    if (x == movable[a]) x = movable[b];
                    else if (x == movable[b]) x = movable[a];
                    if (y == movable[a]) y = movable[b];
                    else if (y == movable[b]) y = movable[a];
                }
                parent[find(k)] = find(lookup.at(canon(swapped)));
            }

    std::map<size_t, std::vector<size_t>> orbits;
    for (size_t k = 0; k < matchings.size(); ++k) orbits[find(k)].push_back(k);

    // Realize each orbit sum on |I| slots (Delta_tr only).
    std::map<int, int> slot;
    for (size_t k = 0; k < I.size(); ++k) slot[I[k]] = static_cast<int>(k) + 1;
    int ns = static_cast<int>(I.size());
    std::vector<TensorClass> sums;
    for (const auto& [_, members] : orbits) {
        TensorClass sum;
        sum.m = ns;
        for (size_t k : members) {
            TensorClass term;
            term.m = ns;
            term.add(std::vector<BasisVector>(static_cast<size_t>(ns)), Rational(1));
            for (auto [a, b] : matchings[k])
                term = model.product(term, model.diagonal_tr(ns, slot.at(a), slot.at(b)));
            sum += term;
        }
        sums.push_back(std::move(sum));
    }
    return {sums.size(), tensor_family_rank(sums)};
}

} // namespace tautring
