#ifndef JONQ_TERNARY_HPP
#define JONQ_TERNARY_HPP

#include <array>
#include <map>
#include <vector>

#include "ratfunc.hpp"

namespace jonq {

// Homogeneous form in (x, y, z); only nonzero coefficients are stored and
// every stored exponent triple sums to the form's total degree.
class TernaryForm {
  public:
    using Exp = std::array<int, 3>;

    explicit TernaryForm(int degree = 0) : degree_(degree) {
        if (degree < 0) throw domain_error("negative degree");
    }

    static TernaryForm monomial(const FieldElem& c, int i, int j, int k) {
        if (i < 0 || j < 0 || k < 0) throw domain_error("negative exponent");
        TernaryForm t(i + j + k);
        t.add_term(c, {i, j, k});
        return t;
    }

    int degree() const { return degree_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return degree_ == 0; }
    const std::map<Exp, FieldElem>& coeffs() const { return coeffs_; }

    FieldElem coeff(int i, int j, int k) const {
        auto it = coeffs_.find(Exp{i, j, k});
        return it == coeffs_.end() ? FieldElem(0) : it->second;
    }

    void add_term(const FieldElem& c, const Exp& e) {
        if (c.is_zero()) return;
        if (e[0] + e[1] + e[2] != degree_) throw domain_error("inhomogeneous term");
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            coeffs_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    bool operator==(const TernaryForm& o) const {
        return degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const TernaryForm& o) const { return !(*this == o); }

    TernaryForm operator-() const {
        TernaryForm r(degree_);
        for (auto& [e, c] : coeffs_) r.coeffs_.emplace(e, -c);
        return r;
    }

    friend TernaryForm operator+(const TernaryForm& a, const TernaryForm& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.degree_ != b.degree_) throw domain_error("degree mismatch in form addition");
        TernaryForm r = a;
        for (auto& [e, c] : b.coeffs_) r.add_term(c, e);
        return r;
    }
    friend TernaryForm operator-(const TernaryForm& a, const TernaryForm& b) { return a + (-b); }

    friend TernaryForm operator*(const TernaryForm& a, const TernaryForm& b) {
        if (a.is_zero() || b.is_zero()) return TernaryForm(a.degree_ + b.degree_);
        TernaryForm r(a.degree_ + b.degree_);
        for (auto& [e1, c1] : a.coeffs_)
            for (auto& [e2, c2] : b.coeffs_)
                r.add_term(c1 * c2, Exp{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]});
        return r;
    }

    TernaryForm scaled_by(const FieldElem& s) const {
        if (s.is_zero()) return TernaryForm(degree_);
        TernaryForm r(degree_);
        for (auto& [e, c] : coeffs_) r.coeffs_.emplace(e, c * s);
        return r;
    }

    // partial derivative; var: 0 = x, 1 = y, 2 = z
    TernaryForm derivative(int var) const {
        TernaryForm r(degree_ > 0 ? degree_ - 1 : 0);
        for (auto& [e, c] : coeffs_) {
            if (e[static_cast<size_t>(var)] == 0) continue;
            Exp f = e;
            --f[static_cast<size_t>(var)];
            r.add_term(c * FieldElem(e[static_cast<size_t>(var)]), f);
        }
        return r;
    }

    FieldElem evaluate(const FieldElem& x, const FieldElem& y, const FieldElem& z) const {
        FieldElem r(0);
        for (auto& [e, c] : coeffs_)
            r = r + c * x.pow(e[0]) * y.pow(e[1]) * z.pow(e[2]);
        return r;
    }

    // Division by a single divisor under lex x > y > z; exact or throws.
    TernaryForm exact_divide(const TernaryForm& w) const {
        if (w.is_zero()) throw domain_error("division by zero form");
        if (is_zero()) return TernaryForm(degree_ >= w.degree_ ? degree_ - w.degree_ : 0);
        if (degree_ < w.degree_) throw domain_error("divisor degree exceeds dividend degree");
        TernaryForm q(degree_ - w.degree_);
        TernaryForm rem = *this;
        auto lead = [](const TernaryForm& t) { return *t.coeffs_.rbegin(); };
        auto [we, wc] = lead(w);
        while (!rem.is_zero()) {
            auto [re, rc] = lead(rem);
            Exp d{re[0] - we[0], re[1] - we[1], re[2] - we[2]};
            if (d[0] < 0 || d[1] < 0 || d[2] < 0) throw domain_error("inexact ternary division");
            FieldElem f = rc / wc;
            TernaryForm t = TernaryForm::monomial(f, d[0], d[1], d[2]);
            q = q + t;
            rem = rem - t * w;
        }
        return q;
    }

    bool divides(const TernaryForm& f) const {
        try {
            f.exact_divide(*this);
            return true;
        } catch (const domain_error&) {
            return false;
        }
    }

  private:
    int degree_;
    std::map<Exp, FieldElem> coeffs_;
};

// Binary form in (y, z) <-> univariate polynomial with a z-power.
inline TernaryForm homogenize_in_yz(const Poly& p, int degree) {
    if (p.degree() > degree) throw domain_error("degree too small for homogenization");
    TernaryForm t(degree);
    for (int i = 0; i <= p.degree(); ++i) t.add_term(p.coeff(i), {0, i, degree - i});
    return t;
}

namespace detail {

// A form with no x appearing, as (z-power, univariate poly in y).
inline std::pair<int, Poly> dehomogenize_yz(const TernaryForm& t) {
    int zmin = -1;
    for (auto& [e, c] : t.coeffs()) {
        if (e[0] != 0) throw domain_error("form depends on x");
        zmin = zmin < 0 ? e[2] : std::min(zmin, e[2]);
    }
    if (zmin < 0) return {0, Poly()};
    std::vector<FieldElem> cs(static_cast<size_t>(t.degree() - zmin) + 1, FieldElem(0));
    for (auto& [e, c] : t.coeffs()) cs[static_cast<size_t>(e[1])] = c;
    return {zmin, Poly(std::move(cs))};
}

}  // namespace detail

// Content of a family of forms of x-degree <= 1: common factors lie in
// K[y, z], so the gcd reduces to univariate gcds with z-power bookkeeping.
inline TernaryForm gcd_content(const std::vector<TernaryForm>& forms) {
    // collect the binary (y, z)-coefficients of 1 and x
    std::vector<std::pair<int, Poly>> parts;  // (z-valuation, dehomogenized poly)
    int have = 0;
    for (auto& f : forms) {
        if (f.is_zero()) continue;
        std::map<int, TernaryForm> by_x;
        for (auto& [e, c] : f.coeffs()) {
            if (e[0] > 1) throw domain_error("gcd_content expects x-degree <= 1");
            auto it = by_x.find(e[0]);
            if (it == by_x.end())
                it = by_x.emplace(e[0], TernaryForm(f.degree() - e[0])).first;
            it->second.add_term(c, {0, e[1], e[2]});
        }
        for (auto& [xd, part] : by_x) {
            parts.push_back(detail::dehomogenize_yz(part));
            ++have;
        }
    }
    if (!have) throw domain_error("gcd_content of all-zero family");
    int zmin = parts[0].first;
    Poly g = parts[0].second;
    for (size_t i = 1; i < parts.size(); ++i) {
        zmin = std::min(zmin, parts[i].first);
        g = gcd_poly(g, parts[i].second);
    }
    TernaryForm r = homogenize_in_yz(g, g.degree() + zmin);
    return r;
}

inline TernaryForm jacobian_det(const TernaryForm& p0, const TernaryForm& p1,
                                const TernaryForm& p2) {
    auto d = [&](const TernaryForm& f, int v) { return f.derivative(v); };
    TernaryForm a = d(p0, 0), b = d(p0, 1), c = d(p0, 2);
    TernaryForm e = d(p1, 0), f = d(p1, 1), g = d(p1, 2);
    TernaryForm h = d(p2, 0), i = d(p2, 1), j = d(p2, 2);
    return a * (f * j - g * i) - b * (e * j - g * h) + c * (e * i - f * h);
}

}  // namespace jonq

#endif
