#include "tautring/poly.hpp"

#include <algorithm>

namespace tautring {

int Gen::codim() const {
    switch (kind) {
        case GenKind::BvO: return 2;
        case GenKind::BvL: return 1;
        case GenKind::BvD: return 2;
        case GenKind::HcO: return label;
        case GenKind::HcT: return label;
        case GenKind::HcI: return label;
        case GenKind::HcL: return 1;
        case GenKind::Fl: return 1;
        case GenKind::Fc: return 2;
        case GenKind::FEx: return 3;
        case GenKind::Fo: return 4;
        case GenKind::FD: return 1;
        case GenKind::FParC:
        case GenKind::FParCp:
        case GenKind::FParQl:
        case GenKind::FParQlInv:
        case GenKind::FParQD: return 0;
        case GenKind::Ph: return 1;
        case GenKind::Pl: return 1;
        case GenKind::Pc: return 2;
        case GenKind::HcE: return 1;
        default: return 0; // formal symbols carry no grading
    }
}

Monomial::Monomial(std::vector<Gen> f) : factors(std::move(f)) {
    std::sort(factors.begin(), factors.end());
}

int Monomial::codim() const {
    int c = 0;
    for (const auto& g : factors) c += g.codim();
    return c;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.factors.reserve(factors.size() + o.factors.size());
    std::merge(factors.begin(), factors.end(), o.factors.begin(), o.factors.end(),
               std::back_inserter(r.factors));
    return r;
}

Polynomial::Polynomial(RingTag ring, const Rational& c) : ring_(ring) {
    if (!c.is_zero()) terms_[Monomial::unit()] = c;
}

Polynomial::Polynomial(RingTag ring, const Gen& g) : ring_(ring) {
    terms_[Monomial::single(g)] = Rational(1);
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rational Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::homogeneous_codim() const {
    int c = -1;
    for (const auto& [m, _] : terms_) {
        int mc = m.codim();
        if (c == -1) c = mc;
        else if (c != mc) return -1;
    }
    return c;
}

int Polynomial::max_codim() const {
    int c = 0;
    for (const auto& [m, _] : terms_) c = std::max(c, m.codim());
    return c;
}

void Polynomial::check_ring(const Polynomial& o) const {
    if (ring_ != o.ring_) throw std::invalid_argument("polynomial ring mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_ring(o);
    Polynomial r(ring_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Polynomial Polynomial::mul_trunc(const Polynomial& o, int maxcodim) const {
    check_ring(o);
    Polynomial r(ring_);
    for (const auto& [ma, ca] : terms_) {
        int da = ma.codim();
        if (da > maxcodim) continue;
        for (const auto& [mb, cb] : o.terms_) {
            if (da + mb.codim() > maxcodim) continue;
            r.add_term(ma * mb, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::truncate(int maxcodim) const {
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_)
        if (m.codim() <= maxcodim) r.terms_.emplace(m, c);
    return r;
}

Polynomial Polynomial::graded_part(int k) const {
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_)
        if (m.codim() == k) r.terms_.emplace(m, c);
    return r;
}

Polynomial poly_pow(const Polynomial& p, unsigned e) {
    Polynomial r = Polynomial::one(p.ring());
    for (unsigned i = 0; i < e; ++i) r = r * p;
    return r;
}

} // namespace tautring
