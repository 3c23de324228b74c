#pragma once

#include "tautring/matrix.hpp"
#include "tautring/poly.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tautring {

// One tensor slot of H^*(S,Q) in the basis {1, NS classes, transcendental
// classes, point class}.
struct BasisVector {
    enum Kind : uint8_t { Unit = 0, Ns = 1, Tr = 2, Pt = 3 };
    Kind kind = Unit;
    int32_t k = 0; // basis slot for Ns/Tr

    int degree() const { return kind == Unit ? 0 : (kind == Pt ? 4 : 2); }
    auto operator<=>(const BasisVector&) const = default;
};

// H^*(S^m,Q) = H^*(S,Q)^{tensor m}, sparse over basis tuples.
struct TensorClass {
    int m = 0;
    std::map<std::vector<BasisVector>, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const std::vector<BasisVector>& tuple, const Rational& c);

    TensorClass& operator+=(const TensorClass& o);
    friend bool operator==(const TensorClass& a, const TensorClass& b) {
        return a.m == b.m && a.terms == b.terms;
    }

    // Slotwise cup product (pt kills everything positive, ns/tr pair into pt).
    // Needs the model for the Gram pairings.
    // Implemented in K3Model::product.
};

// Numeric lattice model of H^*(S,Q): NS part and transcendental part with
// their Gram matrices. rho + b_tr = 22 is deliberately not required.
class K3Model {
public:
    K3Model(RatMatrix ns_gram, RatMatrix tr_gram);

    // rho=1 polarization of degree 2, identity transcendental Gram.
    static K3Model standard(int b_tr);
    static K3Model parse_file(const std::string& path);
    static K3Model parse_stream(std::istream& in);

    int rho() const { return static_cast<int>(ns_gram_.rows()); }
    int b_tr() const { return static_cast<int>(tr_gram_.rows()); }
    const RatMatrix& ns_gram() const { return ns_gram_; }
    const RatMatrix& tr_gram() const { return tr_gram_; }
    const RatMatrix& ns_gram_inv() const { return ns_inv_; }
    const RatMatrix& tr_gram_inv() const { return tr_inv_; }

    Rational ns_pairing(int s, int t) const {
        if (s < 1 || t < 1 || s > rho() || t > rho())
            throw std::out_of_range("ns_pairing: NS label out of range");
        return ns_gram_.at(s - 1, t - 1);
    }

    uint64_t fingerprint() const { return fingerprint_; }
    std::string serialize() const;

    // Kuenneth expansion of the diagonal across slots (i,j) of an m-fold
    // tensor: sum g^{ab} tr_a (x) tr_b + 1 (x) pt + pt (x) 1 + sum h^{st} ns_s (x) ns_t.
    TensorClass diagonal_expansion(int m, int i, int j) const;
    // Just the transcendental Kuenneth part of the diagonal.
    TensorClass diagonal_tr(int m, int i, int j) const;

    // Slotwise product of tensor classes on S^m.
    TensorClass product(const TensorClass& a, const TensorClass& b) const;

    // Cohomology realization of a BV polynomial on m factors.
    TensorClass realize(const Polynomial& p, int m) const;

    // Degree map on S^m: coefficient of pt (x) ... (x) pt.
    Rational integrate_tensor(const TensorClass& t) const;

private:
    Rational slot_product(const BasisVector& a, const BasisVector& b, bool& ok,
                          BasisVector& out) const;

    RatMatrix ns_gram_, tr_gram_, ns_inv_, tr_inv_;
    uint64_t fingerprint_;
};

// A monomial in diagonal-transcendental generators: a perfect pairing of a
// set of slot indices. Used by gamma_action and the invariant-rank check.
struct TrMonomial {
    std::vector<std::pair<int, int>> pairs; // (i,j), i<j, all indices distinct
};

// gamma_M(eta) = p_{1*}(M . p_2^* eta) for M a Delta_tr monomial pairing the
// 2s indices {1..2s} and eta a tensor class on s factors.
TensorClass gamma_action(const TrMonomial& m, const TensorClass& eta, const K3Model& model);

// Enumerate all no-repeated-index BV monomials on m factors of the given
// codim, realize them, and return (count, rank of the realization matrix).
std::pair<size_t, size_t> monomial_basis_rank(int m, int codim, const K3Model& model);

// Enumerate the normal monomials themselves (exposed for the nullspace
// searches in the verification pipeline).
std::vector<Monomial> normal_monomials(int m, int codim, int rho);

// S'-orbit sums of perfect Delta_tr pairings of the index set I within
// {1..m} (S' permutes the elements of I that are <= m-2); returns
// (orbit count, rank of the realized orbit sums).
std::pair<size_t, size_t> invariant_rank(int m, const std::vector<int>& index_set,
                                         const K3Model& model);

} // namespace tautring
