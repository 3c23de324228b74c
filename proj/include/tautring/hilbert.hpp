#pragma once

#include "tautring/bv.hpp"
#include "tautring/cache.hpp"
#include "tautring/k3_model.hpp"
#include "tautring/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace tautring {

// Partition of {1..n} into disjoint nonempty blocks, kept in canonical order
// (sorted by least element, so the block containing n is last when it is a
// singleton).
struct SetPartition {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    static SetPartition parse(const std::string& text, int n); // "{1,3}{2}"
    static SetPartition finest(int n);
    static std::vector<SetPartition> all(int n); // Bell(n) of them

    int m() const { return static_cast<int>(blocks.size()); }
    std::string text() const;
};

// Atom constructors for the tautological ring of S^[n] (with marked points):
// c_r(O), c_s(T), c_t(I at marked point i), c_1(L_s), and the exceptional
// class t on the nested Hilbert scheme.
inline Gen hc_o(int r) { return Gen::make0(GenKind::HcO, r); }
inline Gen hc_t(int s) { return Gen::make0(GenKind::HcT, s); }
inline Gen hc_i(int t, int i) { return Gen::make1(GenKind::HcI, i, t); }
inline Gen hc_l(int s) { return Gen::make0(GenKind::HcL, s); }
inline Gen hc_e() { return Gen::make0(GenKind::HcE); }

// Incidence-variety recursion engine. Holds the cohomology model used for
// normalization (Chow-meaningful output needs a full-rank model,
// rho + b_tr = 22; the default is standard(21)), plus memo and optional
// persistent cache.
class HilbertEngine {
public:
    explicit HilbertEngine(K3Model model = K3Model::standard(21),
                           ResultCache cache = ResultCache());

    const K3Model& model() const { return model_; }

    // E_{mu,l}^* of a polynomial P in the level-n tautological atoms plus
    // marked-point classes on indices 1..l. Returns the normal form on
    // m(mu)+l factors: blocks at indices 1..m (in canonical block order),
    // marked points at m+1..m+l.
    Polynomial pullback(const Polynomial& P, int n, const SetPartition& mu, int l);

    // Degree of a codim-2n polynomial against the fundamental class,
    // via the finest partition (generically n!-to-1) and division by n!.
    Rational chern_number(const Polynomial& P, int n);

    struct PartitionReport {
        std::string partition;
        Polynomial normal_form = Polynomial::zero(RingTag::BV);
        bool realize_zero = false;
        bool small_m_hypothesis = false;   // m(mu)+l <= 2*b_tr+1
        bool block_hypothesis = false;     // at most two blocks of size >= 2
        bool codim_shortcut = false;       // deep stratum, codim >= 2n-2 input
    };
    struct Report {
        Verdict verdict = Verdict::Indeterminate;
        std::vector<PartitionReport> partitions;
    };

    // Multiplicative-structure vanishing test: pull back along every set
    // partition, realize, and certify with the faithfulness hypotheses.
    // The permutation invariance of each pullback under relabeling
    // equal-size blocks is asserted as a self-check.
    Report verify_chow_zero(const Polynomial& P, int n, int l = 0);

private:
    Polynomial rec(const Polynomial& P, int n, const SetPartition& mu, int l);
    Polynomial rec_base(const Polynomial& P, int l, int bound);

    K3Model model_;
    ResultCache cache_;
    std::map<std::string, Polynomial> memo_;
};

} // namespace tautring
