#ifndef JONQ_RATFUNC_HPP
#define JONQ_RATFUNC_HPP

#include <optional>
#include <utility>

#include "field.hpp"
#include "poly.hpp"

namespace jonq {

// Reduced rational function num/den: gcd(num, den) = 1, den monic and nonzero.
template <class F>
class RatFuncT {
  public:
    RatFuncT() : den_(1) {}
    RatFuncT(int c) : num_(c), den_(1) {}
    RatFuncT(const F& c) : num_(c), den_(1) {}
    RatFuncT(DensePoly<F> n) : num_(std::move(n)), den_(1) {}
    RatFuncT(DensePoly<F> n, DensePoly<F> d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static RatFuncT var() { return RatFuncT(DensePoly<F>::var()); }

    const DensePoly<F>& num() const { return num_; }
    const DensePoly<F>& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    F constant_value() const {
        if (!is_constant()) throw domain_error("rational function is not constant");
        return num_.coeff(0);
    }

    // max(deg num, deg den): the degree as a map P^1 -> P^1 when nonconstant
    int map_degree() const { return std::max(num_.degree(), den_.degree()); }

    bool operator==(const RatFuncT& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFuncT& o) const { return !(*this == o); }

    RatFuncT operator-() const {
        RatFuncT r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFuncT operator+(const RatFuncT& a, const RatFuncT& b) {
        return RatFuncT(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFuncT operator-(const RatFuncT& a, const RatFuncT& b) {
        return RatFuncT(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFuncT operator*(const RatFuncT& a, const RatFuncT& b) {
        return RatFuncT(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFuncT operator/(const RatFuncT& a, const RatFuncT& b) {
        if (b.is_zero()) throw domain_error("division by zero rational function");
        return RatFuncT(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFuncT& operator+=(const RatFuncT& o) { return *this = *this + o; }
    RatFuncT& operator-=(const RatFuncT& o) { return *this = *this - o; }
    RatFuncT& operator*=(const RatFuncT& o) { return *this = *this * o; }
    RatFuncT& operator/=(const RatFuncT& o) { return *this = *this / o; }

    RatFuncT inverse() const {
        if (is_zero()) throw domain_error("inverse of zero rational function");
        return RatFuncT(den_, num_);
    }

    RatFuncT pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        RatFuncT r(1), b = *this;
        unsigned long k = static_cast<unsigned long>(e);
        while (k) {
            if (k & 1ul) r = r * b;
            b = b * b;
            k >>= 1ul;
        }
        return r;
    }

    F evaluate(const F& x) const {
        F d = den_.evaluate(x);
        if (d == F(0)) throw domain_error("evaluation at a pole");
        return num_.evaluate(x) / d;
    }

    RatFuncT derivative() const {
        return RatFuncT(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    // r(y + a), r(s*y)
    RatFuncT shifted(const F& a) const { return RatFuncT(num_.shifted(a), den_.shifted(a)); }
    RatFuncT dilated(const F& s) const {
        if (s == F(0)) throw domain_error("dilation by zero");
        return RatFuncT(num_.dilated(s), den_.dilated(s));
    }

  private:
    void normalize() {
        if (den_.is_zero()) throw domain_error("zero denominator");
        if (num_.is_zero()) {
            den_ = DensePoly<F>(1);
            return;
        }
        DensePoly<F> g = gcd_poly(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        F lc = den_.lc();
        if (!(lc == F(1))) {
            F inv = F(1) / lc;
            num_ = num_.scaled_by(inv);
            den_ = den_.scaled_by(inv);
        }
    }

    DensePoly<F> num_, den_;
};

using Poly = DensePoly<FieldElem>;
using RatFunc = RatFuncT<FieldElem>;

// r((a y + b)/(c y + d)); right action: subst(subst(r, m1), m2) = subst(r, m1 o m2)
template <class F>
RatFuncT<F> substitute_mobius(const RatFuncT<F>& r, const F& a, const F& b, const F& c, const F& d) {
    if (a * d - b * c == F(0)) throw domain_error("singular substitution");
    const auto& n = r.num();
    const auto& dd = r.den();
    int D = std::max(n.degree(), dd.degree());
    DensePoly<F> top(std::vector<F>{b, a});
    DensePoly<F> bot(std::vector<F>{d, c});
    // precompute top^i * bot^(D-i)
    std::vector<DensePoly<F>> tp(static_cast<size_t>(D) + 1), bp(static_cast<size_t>(D) + 1);
    tp[0] = DensePoly<F>(1);
    bp[0] = DensePoly<F>(1);
    for (int i = 1; i <= D; ++i) {
        tp[static_cast<size_t>(i)] = tp[static_cast<size_t>(i - 1)] * top;
        bp[static_cast<size_t>(i)] = bp[static_cast<size_t>(i - 1)] * bot;
    }
    DensePoly<F> N, M;
    for (int i = 0; i <= D; ++i) {
        auto term = tp[static_cast<size_t>(i)] * bp[static_cast<size_t>(D - i)];
        N += term.scaled_by(n.coeff(i));
        M += term.scaled_by(dd.coeff(i));
    }
    return RatFuncT<F>(N, M);
}

// Multiplicity profile: true iff every zero and pole over the algebraic
// closure has even multiplicity, i.e. the squarefree part of num*den is
// constant.  Leading constants are always squares over C.
inline bool is_square_in_Cy(const RatFunc& r) {
    if (r.is_zero()) throw domain_error("squareness of zero is undefined");
    for (auto& [f, m] : squarefree_decomposition(r.num() * r.den()).factors)
        if (m % 2 != 0) return false;
    return true;
}

// r = c * s^2 with s normalized (monic numerator and denominator) and c the
// leading constant; when c is a square in K the root is folded in and c = 1.
inline std::pair<RatFunc, FieldElem> sqrt_in_Cy(const RatFunc& r) {
    if (r.is_zero() || !is_square_in_Cy(r)) throw domain_error("not a square in C(y)");
    Poly sn(1), sd(1);
    auto dn = squarefree_decomposition(r.num());
    for (auto& [f, m] : dn.factors) sn = sn * f.pow(static_cast<unsigned>(m / 2));
    for (auto& [f, m] : squarefree_decomposition(r.den()).factors)
        sd = sd * f.pow(static_cast<unsigned>(m / 2));
    RatFunc s(sn, sd);
    FieldElem c = dn.leading;  // den is monic
    if (auto root = try_sqrt(c)) {
        s = s * RatFunc(*root);
        c = FieldElem(1);
    }
    return {s, c};
}

inline Poly embedded_into(const Poly& p, const FieldPtr& f) {
    std::vector<FieldElem> cs;
    cs.reserve(static_cast<size_t>(p.degree()) + 1);
    for (int i = 0; i <= p.degree(); ++i) cs.push_back(p.coeff(i).embedded_into(f));
    return Poly(std::move(cs));
}

inline RatFunc embedded_into(const RatFunc& r, const FieldPtr& f) {
    return RatFunc(embedded_into(r.num(), f), embedded_into(r.den(), f));
}

// Smallest field of the tower lattice containing all coefficients.
inline FieldPtr coefficient_field(const Poly& p) {
    FieldPtr f = Field::rationals();
    for (auto& c : p.coeffs()) f = FieldElem::common_field(f, c.field());
    return f;
}

inline FieldPtr coefficient_field(const RatFunc& r) {
    return FieldElem::common_field(coefficient_field(r.num()), coefficient_field(r.den()));
}

namespace detail {

inline Rat magnitude_bound(const FieldElem& e) {
    Rat s(0);
    for (auto& c : e.ucoords().coeffs()) s += rat_abs(c);
    if (!e.vcoords().is_zero()) {
        Rat sc(0);
        for (auto& c : e.field()->sqrt_constant_coords().coeffs()) sc += rat_abs(c);
        Rat sv(0);
        for (auto& c : e.vcoords().coeffs()) sv += rat_abs(c);
        s += (Rat(1) + sc) * sv;  // sqrt(x) <= 1 + x
    }
    return s;
}

// Cauchy bound on root magnitudes.
inline Rat root_magnitude_bound(const Poly& p) {
    if (p.degree() <= 0) return Rat(0);
    FieldElem lead = p.lc();
    Rat m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rat b = magnitude_bound(p.coeff(i) / lead);
        if (b > m) m = b;
    }
    return Rat(1) + m;
}

// The Q-coordinate polynomials of p on the power basis of its common field.
inline std::vector<QPoly> rational_coordinates(const Poly& p) {
    FieldPtr f = coefficient_field(p);
    unsigned dim = f->phi_degree();
    bool layered = f->has_sqrt_layer();
    std::vector<std::vector<Rat>> rows(dim * (layered ? 2 : 1));
    for (int i = 0; i <= p.degree(); ++i) {
        FieldElem c = p.coeff(i).embedded_into(f);
        for (unsigned k = 0; k < dim; ++k) {
            rows[k].push_back(c.ucoords().coeff(static_cast<int>(k)));
            if (layered) rows[dim + k].push_back(c.vcoords().coeff(static_cast<int>(k)));
        }
    }
    std::vector<QPoly> out;
    for (auto& r : rows) out.push_back(QPoly(std::move(r)));
    return out;
}

}  // namespace detail

template <class F>
int cmp(const DensePoly<F>& p, const DensePoly<F>& q) {
    if (p.degree() != q.degree()) return p.degree() < q.degree() ? -1 : 1;
    for (int i = p.degree(); i >= 0; --i)
        if (!(p.coeff(i) == q.coeff(i))) return cmp(p.coeff(i), q.coeff(i));
    return 0;
}

template <class F>
int cmp(const RatFuncT<F>& a, const RatFuncT<F>& b) {
    if (int c = cmp(a.den(), b.den())) return c;
    return cmp(a.num(), b.num());
}

}  // namespace jonq

#endif
