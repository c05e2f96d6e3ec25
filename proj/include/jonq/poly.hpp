#ifndef JONQ_POLY_HPP
#define JONQ_POLY_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace jonq {

// Dense univariate polynomial over a field type F, lowest degree first.
// No trailing zero coefficients; the zero polynomial is the empty list.
// F must be a field: +, -, *, /, unary -, ==, and construction from int.
template <class F>
class DensePoly {
  public:
    DensePoly() = default;
    DensePoly(int c) : DensePoly(F(c)) {}
    DensePoly(const F& c) {
        if (!(c == F(0))) c_.push_back(c);
    }
    explicit DensePoly(std::vector<F> cs) : c_(std::move(cs)) { trim(); }

    static DensePoly var() { return DensePoly(std::vector<F>{F(0), F(1)}); }
    static DensePoly monomial(const F& c, int k) {
        if (c == F(0)) return DensePoly();
        std::vector<F> v(static_cast<size_t>(k) + 1, F(0));
        v.back() = c;
        return DensePoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == F(1); }

    F coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return F(0);
        return c_[static_cast<size_t>(i)];
    }
    const std::vector<F>& coeffs() const { return c_; }

    const F& lc() const {
        if (c_.empty()) throw domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    F constant_term() const { return coeff(0); }

    bool operator==(const DensePoly& o) const { return c_ == o.c_; }
    bool operator!=(const DensePoly& o) const { return !(*this == o); }

    DensePoly operator-() const {
        DensePoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    DensePoly& operator+=(const DensePoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    DensePoly& operator-=(const DensePoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }

    friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
    friend DensePoly operator-(DensePoly a, const DensePoly& b) { return a -= b; }

    friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
        if (a.is_zero() || b.is_zero()) return DensePoly();
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return DensePoly(std::move(r));
    }

    DensePoly scaled_by(const F& s) const {
        if (s == F(0)) return DensePoly();
        DensePoly r = *this;
        for (auto& c : r.c_) c = c * s;
        return r;
    }

    // Quotient and remainder; divisor must be nonzero.
    friend std::pair<DensePoly, DensePoly> divrem(const DensePoly& a, const DensePoly& b) {
        if (b.is_zero()) throw domain_error("polynomial division by zero");
        DensePoly r = a;
        std::vector<F> q;
        int db = b.degree();
        if (r.degree() >= db) q.assign(static_cast<size_t>(r.degree() - db) + 1, F(0));
        while (!r.is_zero() && r.degree() >= db) {
            F f = r.lc() / b.lc();
            int k = r.degree() - db;
            q[static_cast<size_t>(k)] = f;
            for (int i = 0; i <= db; ++i)
                r.c_[static_cast<size_t>(i + k)] = r.c_[static_cast<size_t>(i + k)] - f * b.c_[static_cast<size_t>(i)];
            r.trim();
        }
        return {DensePoly(std::move(q)), r};
    }

    friend DensePoly operator/(const DensePoly& a, const DensePoly& b) { return divrem(a, b).first; }
    friend DensePoly operator%(const DensePoly& a, const DensePoly& b) { return divrem(a, b).second; }

    bool divides(const DensePoly& a) const { return divrem(a, *this).second.is_zero(); }

    DensePoly monic() const {
        if (is_zero()) return *this;
        return scaled_by(F(1) / lc());
    }

    DensePoly derivative() const {
        if (c_.size() <= 1) return DensePoly();
        std::vector<F> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * F(static_cast<int>(i));
        return DensePoly(std::move(r));
    }

    F evaluate(const F& x) const {
        F r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    // p(y + a)
    DensePoly shifted(const F& a) const {
        DensePoly r;
        DensePoly lin(std::vector<F>{a, F(1)});
        for (size_t i = c_.size(); i-- > 0;) r = r * lin + DensePoly(c_[i]);
        return r;
    }

    // p(s * y)
    DensePoly dilated(const F& s) const {
        DensePoly r = *this;
        F pw(1);
        for (size_t i = 0; i < r.c_.size(); ++i) {
            r.c_[i] = r.c_[i] * pw;
            pw = pw * s;
        }
        r.trim();
        return r;
    }

    // y^n * p(1/y) for n >= degree
    DensePoly reversed(int n) const {
        if (n < degree()) throw domain_error("reversal bound below degree");
        std::vector<F> r(static_cast<size_t>(n) + 1, F(0));
        for (size_t i = 0; i < c_.size(); ++i) r[static_cast<size_t>(n) - i] = c_[i];
        return DensePoly(std::move(r));
    }

    DensePoly pow(unsigned e) const {
        DensePoly r(1), b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }

    // valuation at 0 (index of lowest nonzero coefficient); -1 for zero poly
    int valuation() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == F(0))) return static_cast<int>(i);
        return -1;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == F(0)) c_.pop_back();
    }
    std::vector<F> c_;
};

// Monic gcd; gcd(p, 0) = monic(p).
template <class F>
DensePoly<F> gcd_poly(DensePoly<F> a, DensePoly<F> b) {
    while (!b.is_zero()) {
        auto r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// g = gcd(a, b) monic with g = s*a + t*b.
template <class F>
struct ExtGcd {
    DensePoly<F> g, s, t;
};

template <class F>
ExtGcd<F> extended_gcd(const DensePoly<F>& a, const DensePoly<F>& b) {
    DensePoly<F> r0 = a, r1 = b;
    DensePoly<F> s0(1), s1(0), t0(0), t1(1);
    while (!r1.is_zero()) {
        auto [q, r2] = divrem(r0, r1);
        r0 = r1;
        r1 = r2;
        auto s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        auto t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    F inv = F(1) / r0.lc();
    return {r0.scaled_by(inv), s0.scaled_by(inv), t0.scaled_by(inv)};
}

template <class F>
DensePoly<F> lcm_poly(const DensePoly<F>& a, const DensePoly<F>& b) {
    if (a.is_zero() || b.is_zero()) return DensePoly<F>();
    return ((a * b) / gcd_poly(a, b)).monic();
}

// p = leading * prod factors[i].first ^ factors[i].second, factors monic,
// squarefree, pairwise coprime, multiplicities strictly increasing (Yun).
template <class F>
struct SquarefreeDecomposition {
    F leading;
    std::vector<std::pair<DensePoly<F>, int>> factors;
};

template <class F>
SquarefreeDecomposition<F> squarefree_decomposition(const DensePoly<F>& p) {
    if (p.is_zero()) throw domain_error("squarefree decomposition of zero");
    SquarefreeDecomposition<F> out;
    out.leading = p.lc();
    DensePoly<F> P = p.monic();
    if (P.degree() == 0) return out;
    DensePoly<F> dP = P.derivative();
    DensePoly<F> g = gcd_poly(P, dP);
    DensePoly<F> c = P / g;
    DensePoly<F> d = dP / g - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        DensePoly<F> a = gcd_poly(c, d);
        if (a.degree() > 0) out.factors.push_back({a, i});
        c = c / a;
        d = d / a - c.derivative();
        ++i;
    }
    return out;
}

template <class F>
DensePoly<F> squarefree_part(const DensePoly<F>& p) {
    DensePoly<F> r(1);
    for (auto& [f, m] : squarefree_decomposition(p).factors) r = r * f;
    return r;
}

// Sylvester resultant via the Euclidean PRS recursion:
//   Res(p, q) = (-1)^(dp*dq) Res(q, p),
//   Res(q, p) = lc(q)^(dp - dr) Res(q, p mod q).
template <class F>
F resultant(DensePoly<F> p, DensePoly<F> q) {
    if (p.is_zero() || q.is_zero()) throw domain_error("resultant of zero polynomial");
    F r(1);
    bool neg = false;
    while (true) {
        if (p.degree() < q.degree()) {
            if ((p.degree() % 2) && (q.degree() % 2)) neg = !neg;
            std::swap(p, q);
        }
        if (q.degree() == 0) break;
        DensePoly<F> rem = divrem(p, q).second;
        if (rem.is_zero()) return F(0);
        if ((p.degree() % 2) && (q.degree() % 2)) neg = !neg;
        int e = p.degree() - rem.degree();
        for (int i = 0; i < e; ++i) r = r * q.lc();
        p = std::move(q);
        q = std::move(rem);
    }
    F c = q.coeff(0);
    for (int i = 0; i < p.degree(); ++i) r = r * c;
    return neg ? -r : r;
}

// Lagrange interpolation through (xs[i], ys[i]); points must be distinct.
template <class F>
DensePoly<F> lagrange_interpolate(const std::vector<F>& xs, const std::vector<F>& ys) {
    DensePoly<F> acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        DensePoly<F> basis(1);
        F denom(1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            basis = basis * DensePoly<F>(std::vector<F>{-xs[j], F(1)});
            denom = denom * (xs[i] - xs[j]);
        }
        acc += basis.scaled_by(ys[i] / denom);
    }
    return acc;
}

}  // namespace jonq

#endif
