#ifndef JONQ_MOBIUS_HPP
#define JONQ_MOBIUS_HPP

#include <optional>

#include "ratfunc.hpp"

namespace jonq {

// Element of PGL2(K) acting as y -> (a y + b)/(c y + d).  Canonical scaling:
// the first nonzero entry in scan order a, b, c, d equals 1.
class MobiusK {
  public:
    MobiusK() : a_(1), b_(0), c_(0), d_(1) {}
    MobiusK(FieldElem a, FieldElem b, FieldElem c, FieldElem d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        if (a_ * d_ - b_ * c_ == FieldElem(0)) throw domain_error("singular Moebius map");
        normalize();
    }

    static MobiusK translation(const FieldElem& t) { return MobiusK(FieldElem(1), t, FieldElem(0), FieldElem(1)); }
    static MobiusK scaling(const FieldElem& s) { return MobiusK(s, FieldElem(0), FieldElem(0), FieldElem(1)); }
    // y -> alpha / y
    static MobiusK inversion(const FieldElem& alpha) {
        return MobiusK(FieldElem(0), alpha, FieldElem(1), FieldElem(0));
    }

    const FieldElem& a() const { return a_; }
    const FieldElem& b() const { return b_; }
    const FieldElem& c() const { return c_; }
    const FieldElem& d() const { return d_; }

    bool is_identity() const { return a_.is_one() && b_.is_zero() && c_.is_zero() && d_.is_one(); }

    bool operator==(const MobiusK& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
    }
    bool operator!=(const MobiusK& o) const { return !(*this == o); }

    // (m1 * m2)(y) = m1(m2(y))
    friend MobiusK operator*(const MobiusK& m, const MobiusK& n) {
        return MobiusK(m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
                       m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_);
    }

    MobiusK inverse() const { return MobiusK(d_, -b_, -c_, a_); }

    MobiusK pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        MobiusK r, b = *this;
        unsigned long k = static_cast<unsigned long>(e);
        while (k) {
            if (k & 1ul) r = r * b;
            b = b * b;
            k >>= 1ul;
        }
        return r;
    }

    FieldElem apply(const FieldElem& y) const {
        FieldElem den = c_ * y + d_;
        if (den.is_zero()) throw domain_error("Moebius map evaluated at its pole");
        return (a_ * y + b_) / den;
    }

    RatFunc as_ratfunc() const {
        return RatFunc(Poly(std::vector<FieldElem>{b_, a_}), Poly(std::vector<FieldElem>{d_, c_}));
    }

    FieldElem trace_sq_over_det() const { return (a_ + d_) * (a_ + d_) / (a_ * d_ - b_ * c_); }

  private:
    void normalize() {
        const FieldElem* first = nullptr;
        for (const FieldElem* p : {&a_, &b_, &c_, &d_})
            if (!p->is_zero()) {
                first = p;
                break;
            }
        FieldElem inv = first->inverse();
        a_ = a_ * inv;
        b_ = b_ * inv;
        c_ = c_ * inv;
        d_ = d_ * inv;
    }

    FieldElem a_, b_, c_, d_;
};

// r(m(y)) as a reduced rational function; right group action.
inline RatFunc substitute(const RatFunc& r, const MobiusK& m) {
    return substitute_mobius(r, m.a(), m.b(), m.c(), m.d());
}

inline Poly substitute_num(const Poly& p, const MobiusK& m) {
    return substitute(RatFunc(p), m).num();
}

// Exact order in PGL2(K), nullopt for infinite order.  Finite-order elements
// have a root-of-unity eigenvalue ratio lying in a quadratic extension of K,
// so orders are bounded by max{ m : phi(m) <= 2 [K:Q] }.
inline std::optional<unsigned long> mobius_order(const MobiusK& nu) {
    if (nu.is_identity()) return 1;
    unsigned deg = nu.a().field()->degree();
    for (const FieldElem* e : {&nu.b(), &nu.c(), &nu.d()})
        deg = std::max(deg, e->field()->degree());
    unsigned long bound = max_root_of_unity_order(2ul * deg);
    MobiusK p = nu;
    for (unsigned long k = 1; k <= bound; ++k) {
        if (p.is_identity()) return k;
        p = p * nu;
    }
    return std::nullopt;
}

inline MobiusK embedded_into(const MobiusK& m, const FieldPtr& f) {
    return MobiusK(m.a().embedded_into(f), m.b().embedded_into(f), m.c().embedded_into(f),
                   m.d().embedded_into(f));
}

inline int cmp(const MobiusK& m, const MobiusK& n) {
    if (int c = cmp(m.a(), n.a())) return c;
    if (int c = cmp(m.b(), n.b())) return c;
    if (int c = cmp(m.c(), n.c())) return c;
    return cmp(m.d(), n.d());
}

}  // namespace jonq

#endif
