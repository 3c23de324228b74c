#pragma once

#include "tautring/k3_model.hpp"
#include "tautring/poly.hpp"

namespace tautring {

enum class Verdict { ChowZero, CohomologicallyNonzero, Indeterminate };

const char* verdict_name(Verdict v);

// True iff every monomial uses each factor index at most once.
bool bv_is_normal(const Polynomial& p);

// Rewrite to normal form with the index-sharing relations:
//   R1  o(i)*o(i) -> 0,  L(s,i)*o(i) -> 0
//   R2  L(s,i)*L(t,i) -> <s,t> * o(i)           (<,> = NS Gram pairing)
//   R3  D(i,j)*o(i) -> o(i)*o(j)
//   R4  D(i,j)*L(s,i) -> L(s,i)*o(j) + o(i)*L(s,j)
//   R5  D(i,j)*D(j,k) -> D(i,j)o(k) + o(i)D(j,k) + D(i,k)o(j)
//                        - o(i)o(j) - o(j)o(k) - o(i)o(k)
//   R6  D(i,j)^2 -> (rho + b_tr + 2)*o(i)*o(j)   (= 24 on a full-rank model)
// Deterministic (canonical scan order); every step strictly decreases the
// number of index-sharing factor pairs, which is asserted.
Polynomial bv_normalize(const Polynomial& p, const K3Model& model);

// Pushforward along the projection dropping factor j (1-based); requires a
// normal form. Indices above j shift down.
Polynomial forget_index(const Polynomial& p, int j);

// Degree map on S^m.
Rational bv_integrate(const Polynomial& p, int m, const K3Model& model);

// Relabel factor indices: index i -> map[i-1]. The map must be injective on
// the indices actually used.
Polynomial apply_index_map(const Polynomial& p, const std::vector<int>& map);

// Average over the permutations of {1..k} (k = m for the full symmetric
// group, k = m-2 for the partial-invariance hypothesis).
Polynomial symmetrize(const Polynomial& p, int k);

struct VanishingReport {
    Verdict verdict;
    Polynomial normal_form;
    bool realize_zero;
    bool small_m_hypothesis;     // m <= 2*b_tr + 1
    bool invariance_hypothesis;  // invariant under permuting the first m-2 indices
    VanishingReport() : verdict(Verdict::Indeterminate), normal_form(RingTag::BV),
                        realize_zero(false), small_m_hypothesis(false),
                        invariance_hypothesis(false) {}
};

// Cohomology-oracle vanishing test: realize; if nonzero, the class is
// cohomologically (hence Chow) nonzero. If zero and one of the hypotheses
// holds, the normal form must vanish (asserted) and the Chow class is zero.
// Otherwise indeterminate, with the normal form attached.
VanishingReport verify_vanishing(const Polynomial& p, int m, const K3Model& model);

} // namespace tautring
