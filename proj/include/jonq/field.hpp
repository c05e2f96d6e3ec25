#ifndef JONQ_FIELD_HPP
#define JONQ_FIELD_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>

#include "poly.hpp"
#include "rational.hpp"

namespace jonq {

using QPoly = DensePoly<Rat>;

// Phi_n, computed by exact division of y^n - 1 by the proper-divisor factors.
inline const QPoly& cyclotomic_polynomial(unsigned n) {
    static std::map<unsigned, QPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d != 0 || cache.count(d)) continue;
        std::vector<Rat> xd(static_cast<size_t>(d) + 1, Rat(0));
        xd[0] = Rat(-1);
        xd[d] = Rat(1);
        QPoly num{std::move(xd)};
        for (unsigned e = 1; e < d; ++e)
            if (d % e == 0) num = num / cache.at(e);
        cache.emplace(d, num);
    }
    return cache.at(n);
}

class Field;
using FieldPtr = std::shared_ptr<const Field>;
class FieldElem;

// A coefficient field: Q, Q(zeta_n), or one quadratic layer Q(zeta_n)(sqrt(c)).
class Field : public std::enable_shared_from_this<Field> {
  public:
    static FieldPtr rationals() { return cyclotomic(1); }

    static FieldPtr cyclotomic(unsigned n) {
        if (n == 0) throw domain_error("cyclotomic order must be >= 1");
        static std::map<unsigned, FieldPtr> cache;
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        auto f = FieldPtr(new Field(n, QPoly()));
        cache.emplace(n, f);
        return f;
    }

    // Defined after FieldElem (needs coordinate access + square check).
    static FieldPtr with_sqrt(const FieldElem& c);

    unsigned cyclotomic_order() const { return n_; }
    const QPoly& modulus() const { return phi_; }
    unsigned phi_degree() const { return static_cast<unsigned>(phi_.degree()); }
    bool has_sqrt_layer() const { return !quad_c_.is_zero(); }
    const QPoly& sqrt_constant_coords() const { return quad_c_; }
    unsigned degree() const { return phi_degree() * (has_sqrt_layer() ? 2u : 1u); }

    bool same(const Field& o) const {
        return n_ == o.n_ && quad_c_ == o.quad_c_;
    }

    // The group of roots of unity contained in the cyclotomic layer is cyclic
    // of this order (sqrt-layer contributions are ignored).
    unsigned long unity_order() const {
        if (n_ == 1) return 2;
        return (n_ % 2 == 0) ? n_ : 2ul * n_;
    }

    FieldPtr cyclotomic_base() const { return cyclotomic(n_); }

  private:
    Field(unsigned n, QPoly quad_c)
        : n_(n), phi_(cyclotomic_polynomial(n)), quad_c_(std::move(quad_c)) {}

    unsigned n_;
    QPoly phi_;
    QPoly quad_c_;  // zero poly: no sqrt layer; else coords of c over Q(zeta_n)

    friend class FieldElem;
};

// Exact element u(zeta) + v(zeta)*sqrt(c), coordinates reduced mod Phi_n.
class FieldElem {
  public:
    FieldElem() : FieldElem(Rat(0)) {}
    FieldElem(int x) : FieldElem(Rat(x)) {}
    FieldElem(const Rat& x) : field_(Field::rationals()), u_(x) {}
    FieldElem(FieldPtr f, QPoly u, QPoly v = QPoly())
        : field_(std::move(f)), u_(reduce(std::move(u), *field_)), v_(reduce(std::move(v), *field_)) {
        if (!v_.is_zero() && !field_->has_sqrt_layer())
            throw field_mismatch("sqrt coordinate in a field without sqrt layer");
    }

    static FieldElem zeta(const FieldPtr& f) { return FieldElem(f, QPoly::var()); }
    static FieldElem sqrt_symbol(const FieldPtr& f) {
        if (!f->has_sqrt_layer()) throw field_mismatch("field has no sqrt layer");
        return FieldElem(f, QPoly(), QPoly(1));
    }

    const FieldPtr& field() const { return field_; }
    const QPoly& ucoords() const { return u_; }
    const QPoly& vcoords() const { return v_; }

    bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
    bool is_one() const { return v_.is_zero() && u_.is_one(); }
    bool is_rational() const { return v_.is_zero() && u_.is_constant(); }
    Rat to_rational() const {
        if (!is_rational()) throw domain_error("element is not rational");
        return u_.coeff(0);
    }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        if (a.field_->same(*b.field_)) return a.u_ == b.u_ && a.v_ == b.v_;
        auto [x, y] = aligned(a, b);
        return x.u_ == y.u_ && x.v_ == y.v_;
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    FieldElem operator-() const {
        FieldElem r = *this;
        r.u_ = -r.u_;
        r.v_ = -r.v_;
        return r;
    }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        auto [x, y] = aligned(a, b);
        return FieldElem(x.field_, x.u_ + y.u_, x.v_ + y.v_);
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        auto [x, y] = aligned(a, b);
        return FieldElem(x.field_, x.u_ - y.u_, x.v_ - y.v_);
    }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        auto [x, y] = aligned(a, b);
        const Field& f = *x.field_;
        QPoly u = x.u_ * y.u_;
        QPoly v = x.v_ * y.v_;
        if (!v.is_zero()) u += reduce(v, f) * f.sqrt_constant_coords();
        QPoly w = x.u_ * y.v_ + x.v_ * y.u_;
        return FieldElem(x.field_, std::move(u), std::move(w));
    }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }

    FieldElem inverse() const {
        if (is_zero()) throw domain_error("division by zero field element");
        const Field& f = *field_;
        if (v_.is_zero()) {
            return FieldElem(field_, invert_mod(u_, f.phi_));
        }
        // (u + v s)^-1 = (u - v s) / (u^2 - c v^2)
        QPoly norm = reduce(u_ * u_ - reduce(v_ * v_, f) * f.quad_c_, f);
        if (norm.is_zero())
            throw domain_error("quadratic layer constant is a square; tower is degenerate");
        QPoly ninv = invert_mod(norm, f.phi_);
        return FieldElem(field_, u_ * ninv, -(v_ * ninv));
    }

    FieldElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FieldElem r(1), b = *this;
        unsigned long k = static_cast<unsigned long>(e);
        while (k) {
            if (k & 1ul) r = r * b;
            b = b * b;
            k >>= 1ul;
        }
        return r;
    }

    FieldElem embedded_into(const FieldPtr& target) const {
        if (field_->same(*target)) return FieldElem(target, u_, v_);
        const unsigned n = field_->cyclotomic_order();
        const unsigned N = target->cyclotomic_order();
        if (N % n != 0)
            throw field_mismatch("cyclotomic order does not divide the target order");
        if (field_->has_sqrt_layer()) {
            if (!target->has_sqrt_layer())
                throw field_mismatch("target lacks the sqrt layer");
            // the constants must agree after embedding the base
            FieldElem c_src(field_->cyclotomic_base(), field_->quad_c_);
            FieldElem c_dst(target->cyclotomic_base(), target->quad_c_);
            if (!(c_src.embedded_into(target->cyclotomic_base()) == c_dst))
                throw field_mismatch("sqrt layers adjoin different constants");
        }
        QPoly zpow = power_of_var(N / n, target->modulus());
        return FieldElem(target, substitute_coords(u_, zpow, target->modulus()),
                         substitute_coords(v_, zpow, target->modulus()));
    }

    // Smallest field of the lattice containing both.
    static FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

    friend std::pair<FieldElem, FieldElem> aligned(const FieldElem& a, const FieldElem& b) {
        if (a.field_->same(*b.field_)) return {a, b};
        FieldPtr t = common_field(a.field_, b.field_);
        return {a.embedded_into(t), b.embedded_into(t)};
    }

  private:
    static QPoly reduce(QPoly p, const Field& f) {
        if (p.degree() < f.phi_.degree()) return p;
        return divrem(p, f.phi_).second;
    }
    static QPoly invert_mod(const QPoly& p, const QPoly& mod) {
        auto eg = extended_gcd(p, mod);
        if (eg.g.degree() != 0)
            throw domain_error("element is a zero divisor; modulus not irreducible over input");
        // g is monic constant 1
        return divrem(eg.s, mod).second;
    }
    static QPoly power_of_var(unsigned e, const QPoly& mod) {
        QPoly r(1), b = QPoly::var();
        while (e) {
            if (e & 1u) r = divrem(r * b, mod).second;
            b = divrem(b * b, mod).second;
            e >>= 1u;
        }
        return r;
    }
    static QPoly substitute_coords(const QPoly& p, const QPoly& zpow, const QPoly& mod) {
        QPoly r;
        for (int i = p.degree(); i >= 0; --i) {
            r = divrem(r * zpow, mod).second + QPoly(p.coeff(i));
        }
        return r;
    }

    FieldPtr field_;
    QPoly u_, v_;
};

inline FieldPtr FieldElem::common_field(const FieldPtr& a, const FieldPtr& b) {
    unsigned n = std::lcm(a->cyclotomic_order(), b->cyclotomic_order());
    const Field* qa = a->has_sqrt_layer() ? a.get() : nullptr;
    const Field* qb = b->has_sqrt_layer() ? b.get() : nullptr;
    if (!qa && !qb) return Field::cyclotomic(n);
    FieldPtr base = Field::cyclotomic(n);
    auto lift_const = [&](const Field* q) {
        return FieldElem(Field::cyclotomic(q->cyclotomic_order()), q->sqrt_constant_coords())
            .embedded_into(base);
    };
    if (qa && qb) {
        FieldElem ca = lift_const(qa), cb = lift_const(qb);
        if (!(ca == cb)) throw field_mismatch("incompatible sqrt layers");
        return Field::with_sqrt(ca);
    }
    return Field::with_sqrt(lift_const(qa ? qa : qb));
}

// ---- roots of unity -------------------------------------------------------

// Generator of the cyclic group of roots of unity in the cyclotomic layer.
inline FieldElem unity_generator(const FieldPtr& f) {
    unsigned n = f->cyclotomic_order();
    FieldElem z = FieldElem::zeta(f);
    if (n == 1) return FieldElem(-1).embedded_into(f);
    return (n % 2 == 0) ? z : -z;
}

// A primitive d-th root of unity in f, when one exists there.
inline std::optional<FieldElem> root_of_unity(const FieldPtr& f, unsigned long d) {
    unsigned long L = f->unity_order();
    if (d == 0 || L % d != 0) return std::nullopt;
    return unity_generator(f).pow(static_cast<long>(L / d));
}

// Exact multiplicative order, or nullopt when infinite (or not a root of unity).
inline std::optional<unsigned long> root_of_unity_order(const FieldElem& x) {
    if (x.is_zero()) return std::nullopt;
    unsigned long bound = max_root_of_unity_order(x.field()->degree());
    FieldElem p = x;
    for (unsigned long k = 1; k <= bound; ++k) {
        if (p.is_one()) return k;
        p = p * x;
    }
    return std::nullopt;
}

// ---- square roots ---------------------------------------------------------

namespace detail {

inline int legendre_symbol(const Int& a, const Int& p) {
    Int r = powm(a % p, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

// sqrt of a squarefree integer s inside Q(zeta_n) via Gauss sums, when the
// conductor of Q(sqrt(s)) divides n.
inline std::optional<FieldElem> sqrt_squarefree_int(const Int& s, const FieldPtr& f) {
    if (s == 1) return FieldElem(1).embedded_into(f);
    Int as = s < 0 ? Int(-s) : s;
    Int cond = ((((s % 4) + 4) % 4) == 1) ? as : 4 * as;
    if (Int(f->cyclotomic_order()) % cond != 0) return std::nullopt;
    FieldElem acc(1);
    Rat achieved(1);
    auto fac = factor_int(as);
    if (!fac.complete) return std::nullopt;
    for (auto& [p, e] : fac.primes) {
        (void)e;  // squarefree: e == 1
        if (p == 2) {
            auto z8 = root_of_unity(f, 8);
            if (!z8) return std::nullopt;
            acc = acc * (*z8 + z8->inverse());
            achieved *= 2;
        } else {
            auto zp = root_of_unity(f, static_cast<unsigned long>(p));
            if (!zp) return std::nullopt;
            FieldElem g(0);
            for (Int a = 1; a < p; ++a)
                g = g + FieldElem(Rat(legendre_symbol(a, p))) * zp->pow(static_cast<long>(a));
            acc = acc * g;  // g^2 = p* = (-1)^((p-1)/2) p
            achieved *= (((p % 4) == 1) ? Rat(p) : Rat(-p));
        }
    }
    Rat target(s);
    if (achieved == -target) {
        auto z4 = root_of_unity(f, 4);
        if (!z4) return std::nullopt;
        acc = acc * *z4;
    } else if (achieved != target) {
        return std::nullopt;
    }
    if (!(acc * acc == FieldElem(target).embedded_into(f))) return std::nullopt;
    return acc;
}

inline std::optional<FieldElem> sqrt_rational_in(const Rat& r, const FieldPtr& f) {
    if (r == 0) return FieldElem(0).embedded_into(f);
    if (auto q = rat_sqrt_exact(r)) return FieldElem(*q).embedded_into(f);
    auto sf = rat_squarefree_part(r);
    if (!sf) return std::nullopt;
    auto [s, t] = *sf;
    auto root = sqrt_squarefree_int(s, f);
    if (!root) return std::nullopt;
    return *root * FieldElem(t);
}

std::optional<FieldElem> try_sqrt_impl(const FieldElem& x, bool use_layer);

}  // namespace detail

// Exact square root within the element's field tower.  Complete for rationals
// (including the cyclotomic subfield criterion via Gauss sums), for
// root-of-unity multiples of rationals, and through the sqrt layer;
// conservative (nullopt) on anything more exotic.
inline std::optional<FieldElem> try_sqrt(const FieldElem& x) {
    return detail::try_sqrt_impl(x, true);
}

inline bool is_square(const FieldElem& x) { return try_sqrt(x).has_value(); }

namespace detail {

inline std::optional<FieldElem> try_sqrt_impl(const FieldElem& x, bool use_layer) {
    if (x.is_zero()) return x;
    const FieldPtr& f = x.field();
    if (!x.vcoords().is_zero()) {
        // (a + b s)^2 = u + v s  =>  a^2 + c b^2 = u, 2ab = v
        FieldPtr base = f->cyclotomic_base();
        FieldElem u(base, x.ucoords());
        FieldElem v(base, x.vcoords());
        FieldElem c(base, f->sqrt_constant_coords());
        auto w = try_sqrt_impl(u * u - c * v * v, false);
        if (!w) return std::nullopt;
        for (int sign = 0; sign < 2; ++sign) {
            FieldElem ww = sign ? -*w : *w;
            auto a = try_sqrt_impl((u + ww) / FieldElem(2), false);
            if (!a || a->is_zero()) continue;
            FieldElem b = v / (FieldElem(2) * *a);
            FieldElem cand(f, a->ucoords(), b.ucoords());
            if (cand * cand == x) return cand;
        }
        return std::nullopt;
    }
    if (x.is_rational()) {
        auto r = sqrt_rational_in(x.to_rational(), f);
        if (r) return r;
    } else {
        unsigned long L = f->unity_order();
        FieldElem gen = unity_generator(f);
        FieldElem gpow(1);
        gpow = gpow.embedded_into(f);
        for (unsigned long k = 0; k < L; ++k) {
            if (k > 0) gpow = gpow * gen;
            FieldElem q = x * gpow.inverse();
            if (q.is_rational()) {
                Rat r = q.to_rational();
                std::optional<FieldElem> half;
                if (k % 2 == 0)
                    half = gen.pow(static_cast<long>(k / 2));
                else if (L % 2 == 1)
                    half = gen.pow(static_cast<long>((k + L) / 2));
                if (half) {
                    if (auto rr = sqrt_rational_in(r, f)) {
                        FieldElem cand = *half * *rr;
                        if (cand * cand == x) return cand;
                    }
                }
            }
            // half-angle pattern: x = (1 + gen^k)^2 * rational
            FieldElem w = FieldElem(1).embedded_into(f) + gpow;
            if (!w.is_zero()) {
                FieldElem q2 = x * (w * w).inverse();
                if (q2.is_rational()) {
                    if (auto rr = sqrt_rational_in(q2.to_rational(), f)) {
                        FieldElem cand = w * *rr;
                        if (cand * cand == x) return cand;
                    }
                }
            }
        }
    }
    if (use_layer && f->has_sqrt_layer()) {
        // x = c * w^2 pattern through the adjoined root
        FieldPtr base = f->cyclotomic_base();
        FieldElem c(base, f->sqrt_constant_coords());
        FieldElem xc(base, x.ucoords());
        auto w = try_sqrt_impl(xc / c, false);
        if (w) {
            FieldElem cand = FieldElem::sqrt_symbol(f) * w->embedded_into(f);
            if (cand * cand == x) return cand;
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline FieldPtr Field::with_sqrt(const FieldElem& c) {
    if (c.field()->has_sqrt_layer())
        throw field_mismatch("field towers allow a single sqrt layer");
    if (c.is_zero()) throw domain_error("cannot adjoin sqrt(0)");
    if (is_square(c)) throw domain_error("extension constant is a square in the base field");
    return FieldPtr(new Field(c.field()->cyclotomic_order(), c.ucoords()));
}

// Total order for canonical/deterministic output (lexicographic on the
// coordinates after alignment).
inline int cmp(const FieldElem& a, const FieldElem& b) {
    auto [x, y] = aligned(a, b);
    auto cmp_poly = [](const QPoly& p, const QPoly& q) {
        if (p.degree() != q.degree()) return p.degree() < q.degree() ? -1 : 1;
        for (int i = p.degree(); i >= 0; --i) {
            if (p.coeff(i) != q.coeff(i)) return p.coeff(i) < q.coeff(i) ? -1 : 1;
        }
        return 0;
    };
    if (int c = cmp_poly(x.ucoords(), y.ucoords())) return c;
    return cmp_poly(x.vcoords(), y.vcoords());
}

}  // namespace jonq

#endif
