#include "tautring/kclass.hpp"

#include <stdexcept>

namespace tautring {

namespace {

Rational factorial(int k) {
    Rational f(1);
    for (int i = 2; i <= k; ++i) f = f * Rational(i);
    return f;
}

void check_compatible(const KClass& a, const KClass& b) {
    if (a.ring != b.ring || a.dim != b.dim)
        throw std::invalid_argument("KClass: mixed ring or truncation");
}

} // namespace

KClass KClass::zero(RingTag ring, int dim) {
    KClass k;
    k.ring = ring;
    k.dim = dim;
    k.rank = Rational(0);
    k.ch.assign(static_cast<size_t>(dim), Polynomial::zero(ring));
    return k;
}

KClass KClass::trivial(RingTag ring, int dim, const Rational& rank) {
    KClass k = zero(ring, dim);
    k.rank = rank;
    return k;
}

KClass KClass::line(const Polynomial& t, int dim) {
    KClass k = zero(t.ring(), dim);
    k.rank = Rational(1);
    Polynomial power = Polynomial::one(t.ring());
    for (int j = 1; j <= dim; ++j) {
        power = power.mul_trunc(t, dim);
        k.ch[j - 1] = power * factorial(j).inverse();
    }
    return k;
}

KClass KClass::from_chern(RingTag ring, int dim, const Rational& rank,
                          const std::vector<Polynomial>& c) {
    KClass k = zero(ring, dim);
    k.rank = rank;
    auto e = [&](int j) {
        if (j == 0) return Polynomial::one(ring);
        if (j > static_cast<int>(c.size())) return Polynomial::zero(ring);
        return c[j - 1];
    };
    // Newton: p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^k k e_k, then
    // ch_k = p_k / k!. No rank hypothesis is needed.
    std::vector<Polynomial> p; // p[k-1] = p_k
    for (int j = 1; j <= dim; ++j) {
        Polynomial pk = Polynomial::zero(ring);
        for (int i = 1; i < j; ++i) {
            Polynomial term = e(i).mul_trunc(p[j - i - 1], dim);
            if (i % 2 == 0) term = -term;
            pk += term;
        }
        Polynomial top = e(j) * Rational(j);
        pk += (j % 2 == 0) ? -top : top;
        p.push_back(pk);
        k.ch[j - 1] = pk * factorial(j).inverse();
    }
    return k;
}

KClass KClass::operator+(const KClass& o) const {
    check_compatible(*this, o);
    KClass r = *this;
    r.rank += o.rank;
    for (int j = 0; j < dim; ++j) r.ch[j] += o.ch[j];
    return r;
}

KClass KClass::operator-() const {
    KClass r = *this;
    r.rank = -r.rank;
    for (int j = 0; j < dim; ++j) r.ch[j] = -r.ch[j];
    return r;
}

KClass KClass::operator-(const KClass& o) const { return *this + (-o); }

KClass KClass::dual() const {
    KClass r = *this;
    for (int j = 0; j < dim; j += 2) r.ch[j] = -r.ch[j];
    return r;
}

KClass KClass::tensor(const KClass& o) const {
    check_compatible(*this, o);
    KClass r = zero(ring, dim);
    r.rank = rank * o.rank;
    for (int k = 1; k <= dim; ++k) {
        Polynomial sum = ch[k - 1] * o.rank + o.ch[k - 1] * rank;
        for (int i = 1; i < k; ++i) sum += ch[i - 1].mul_trunc(o.ch[k - i - 1], dim);
        r.ch[k - 1] = sum;
    }
    return r;
}

std::vector<Polynomial> chern_from_ch(const KClass& k, int top) {
    if (top > k.dim) throw std::invalid_argument("chern_from_ch: top exceeds truncation");
    // p_j = j! ch_j; then e_j = (1/j) sum_{i=1}^{j} (-1)^{i-1} e_{j-i} p_i.
    std::vector<Polynomial> p, e;
    for (int j = 1; j <= top; ++j) p.push_back(k.ch[j - 1] * factorial(j));
    for (int j = 1; j <= top; ++j) {
        Polynomial sum = Polynomial::zero(k.ring);
        for (int i = 1; i <= j; ++i) {
            Polynomial term = (i == j) ? p[i - 1]
                                       : e[j - i - 1].mul_trunc(p[i - 1], k.dim);
            if (i % 2 == 0) term = -term;
            sum += term;
        }
        e.push_back(sum * Rational(j).inverse());
    }
    return e;
}

} // namespace tautring
