#ifndef JONQ_STAB_HPP
#define JONQ_STAB_HPP

#include <set>
#include <vector>

#include "mobius.hpp"

namespace jonq {

// One inversion-type stabilizer element nu(y) = alpha / y with
// a(nu(y)) = a(y)^exponent.
struct StabEntry {
    FieldElem alpha;
    int exponent;  // +1 or -1
};

// Stabilizer data of a nonconstant a in K(y) within the dihedral-shaped
// family { omega y } u { alpha / y }.
struct StabResult {
    unsigned long diagonal_order = 1;     // exact order of { omega : a(omega y) = a }
    std::vector<FieldElem> diagonal;      // realized members (cyclic group)
    std::vector<FieldElem> anti_diagonal; // omega with a(omega y) = a(y)^{-1}
    std::vector<StabEntry> inversion;     // alpha / y members
    bool complete_within_family = true;
};

namespace detail {

// gcd over t of the y-coefficients of p(t y) q(y) - p(y) q(t y);
// its nonzero roots are exactly { omega : a(omega y) = a(y) }.
inline Poly diagonal_constraint(const Poly& p, const Poly& q) {
    int dp = p.degree(), dq = q.degree();
    Poly g;
    for (int m = 0; m <= dp + dq; ++m) {
        std::vector<FieldElem> cs(static_cast<size_t>(std::max(dp, dq)) + 1, FieldElem(0));
        for (int i = 0; i <= dp; ++i) {
            int j = m - i;
            if (j < 0 || j > dq) continue;
            cs[static_cast<size_t>(i)] = cs[static_cast<size_t>(i)] + p.coeff(i) * q.coeff(j);
        }
        for (int i = 0; i <= dq; ++i) {
            int j = m - i;
            if (j < 0 || j > dp) continue;
            cs[static_cast<size_t>(i)] = cs[static_cast<size_t>(i)] - q.coeff(i) * p.coeff(j);
        }
        g = gcd_poly(g, Poly(std::move(cs)));
        if (g.is_one()) break;
    }
    return g;
}

// gcd over t of the constraints for a(t/y) = a(y)^e.
inline Poly inversion_constraint(const Poly& p, const Poly& q, int e) {
    int dp = p.degree(), dq = q.degree();
    int D = std::max(dp, dq);
    // y^D p(t/y) has coefficient p_{D-k} t^{D-k} on y^k
    const Poly& r1 = (e == 1) ? q : p;  // multiplies the substituted p
    const Poly& r2 = (e == 1) ? p : q;  // multiplies the substituted q
    Poly g;
    for (int m = 0; m <= D + std::max(dp, dq); ++m) {
        std::vector<FieldElem> cs(static_cast<size_t>(D) + 1, FieldElem(0));
        for (int k = 0; k <= D; ++k) {
            int j = m - k;
            if (j >= 0) {
                FieldElem t1 = p.coeff(D - k) * r1.coeff(j);
                FieldElem t2 = q.coeff(D - k) * r2.coeff(j);
                cs[static_cast<size_t>(D - k)] = cs[static_cast<size_t>(D - k)] + t1 - t2;
            }
        }
        g = gcd_poly(g, Poly(std::move(cs)));
        if (g.is_one()) break;
    }
    return g;
}

inline Poly strip_valuation(const Poly& p) {
    int v = p.valuation();
    if (v <= 0) return p;
    std::vector<FieldElem> cs;
    for (int i = v; i <= p.degree(); ++i) cs.push_back(p.coeff(i));
    return Poly(std::move(cs));
}

// Rational roots of h (over K), via the gcd of its rational coordinates.
inline std::vector<Rat> rational_roots(const Poly& h) {
    std::vector<Rat> out;
    QPoly hq;
    for (auto& coord : rational_coordinates(h)) hq = gcd_poly(hq, coord);
    if (hq.is_zero() || hq.degree() == 0) return out;
    // integerize
    Int lden = 1;
    for (auto& c : hq.coeffs()) lden = boost::multiprecision::lcm(lden, denominator(c));
    std::vector<Int> ic;
    for (auto& c : hq.coeffs()) ic.push_back(numerator(c) * (lden / denominator(c)));
    while (!ic.empty() && ic.back() == 0) ic.pop_back();
    size_t v = 0;
    while (v < ic.size() && ic[v] == 0) ++v;
    if (v > 0) out.push_back(Rat(0));
    if (v >= ic.size()) return out;
    Int a0 = ic[v], ad = ic.back();
    auto f0 = factor_int(a0), fd = factor_int(ad);
    auto divisors = [](const IntFactorisation& f) {
        std::vector<Int> ds{1};
        for (auto& [p, e] : f.primes) {
            size_t n = ds.size();
            Int pw = 1;
            for (unsigned k = 1; k <= e; ++k) {
                pw *= p;
                for (size_t i = 0; i < n; ++i) ds.push_back(ds[i] * pw);
            }
        }
        return ds;
    };
    for (const Int& num : divisors(f0)) {
        for (const Int& den : divisors(fd)) {
            for (int sign : {1, -1}) {
                Rat cand(sign * num, den);
                if (hq.evaluate(cand) == 0 &&
                    std::find(out.begin(), out.end(), cand) == out.end())
                    out.push_back(cand);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// Stabilizer of a nonconstant rational function within { omega y, alpha/y }.
// Every reported element is verified by exact substitution.  The exact order
// of the diagonal stabilizer is always determined; members are realized in a
// cyclotomic extension when their order is <= max_root_order.
inline StabResult stab_search(const RatFunc& a, unsigned long max_root_order = 24,
                              bool with_inverse_exponent = true) {
    if (a.is_constant()) throw domain_error("stabilizer of a constant is all of PGL2");
    const Poly& p = a.num();
    const Poly& q = a.den();
    StabResult out;

    // ---- diagonal part ----
    Poly g = detail::diagonal_constraint(p, q);
    if (g.is_zero()) throw domain_error("internal error: empty diagonal constraint");
    Poly sf = squarefree_part(detail::strip_valuation(g));
    unsigned long dstar = static_cast<unsigned long>(sf.degree());
    // the nonzero roots form the group of d*-th roots of unity
    {
        Poly expect = Poly::monomial(FieldElem(1), static_cast<int>(dstar)) - Poly(1);
        if (sf != expect) throw domain_error("internal error: diagonal stabilizer is not cyclic");
    }
    out.diagonal_order = dstar;
    unsigned long realized = dstar;
    if (dstar > max_root_order) {
        realized = 1;
        for (unsigned long m = 1; m <= max_root_order; ++m)
            if (dstar % m == 0) realized = m;
        out.complete_within_family = false;
    }
    FieldPtr base_field = coefficient_field(a);
    FieldPtr E = FieldElem::common_field(base_field, Field::cyclotomic(static_cast<unsigned>(realized)));
    RatFunc aE = embedded_into(a, E);
    FieldElem zeta = *root_of_unity(E, realized);
    FieldElem omega = FieldElem(1).embedded_into(E);
    for (unsigned long j = 0; j < realized; ++j) {
        if (j > 0) omega = omega * zeta;
        if (!(aE.dilated(omega) == aE))
            throw domain_error("internal error: diagonal stabilizer member fails verification");
        out.diagonal.push_back(omega);
    }

    // ---- anti-diagonal part: omega y with a(omega y) = a^{-1} ----
    if (with_inverse_exponent) {
        unsigned long scan = 2 * dstar;
        if (scan > 2 * max_root_order) {
            scan = 2 * realized;
            out.complete_within_family = false;
        }
        FieldPtr E2 = FieldElem::common_field(base_field, Field::cyclotomic(static_cast<unsigned>(scan)));
        RatFunc a2 = embedded_into(a, E2);
        RatFunc a2inv = a2.inverse();
        FieldElem z2 = *root_of_unity(E2, scan);
        FieldElem w2 = FieldElem(1).embedded_into(E2);
        for (unsigned long j = 0; j < scan; ++j) {
            if (j > 0) w2 = w2 * z2;
            if (a2.dilated(w2) == a2inv) out.anti_diagonal.push_back(w2);
        }
    }

    // ---- inversion part: alpha / y ----
    for (int e : {1, -1}) {
        if (e == -1 && !with_inverse_exponent) continue;
        Poly h = detail::inversion_constraint(p, q, e);
        if (h.is_zero()) throw domain_error("internal error: empty inversion constraint");
        Poly hs = squarefree_part(detail::strip_valuation(h));
        if (hs.degree() == 0) continue;
        std::vector<FieldElem> roots;
        // rational roots
        for (auto& r : detail::rational_roots(h))
            if (r != 0) roots.push_back(FieldElem(r));
        // root-of-unity roots (scan the unity group of a modest extension)
        {
            unsigned long scan = std::min<unsigned long>(2 * dstar, 2 * max_root_order);
            scan = std::max<unsigned long>(scan, 2);
            FieldPtr E3 =
                FieldElem::common_field(base_field, Field::cyclotomic(static_cast<unsigned>(scan)));
            Poly hE = embedded_into(h, E3);
            FieldElem z3 = unity_generator(E3);
            FieldElem pw = FieldElem(1).embedded_into(E3);
            unsigned long L = E3->unity_order();
            for (unsigned long j = 0; j < L; ++j) {
                if (j > 0) pw = pw * z3;
                if (hE.evaluate(pw).is_zero()) {
                    bool dup = false;
                    for (auto& r : roots)
                        if (r == pw) dup = true;
                    if (!dup) roots.push_back(pw);
                }
            }
        }
        // close under the diagonal group (the solution set is a single coset)
        std::vector<FieldElem> family = roots;
        for (auto& r : roots)
            for (auto& omega : out.diagonal) {
                FieldElem cand = r * omega;
                bool dup = false;
                for (auto& x : family)
                    if (x == cand) dup = true;
                if (!dup) family.push_back(cand);
            }
        size_t verified = 0;
        for (auto& alpha : family) {
            FieldPtr Ef = FieldElem::common_field(alpha.field(), base_field);
            RatFunc af = embedded_into(a, Ef);
            RatFunc lhs = substitute(af, MobiusK::inversion(alpha.embedded_into(Ef)));
            RatFunc rhs = e == 1 ? af : af.inverse();
            if (lhs == rhs) {
                out.inversion.push_back({alpha, e});
                ++verified;
            }
        }
        if (verified < static_cast<size_t>(hs.degree())) out.complete_within_family = false;
    }
    return out;
}

// S(c; alpha): the stabilizer of the Baum-Bott function 4c^2/(c^2 - y)
// within the dihedral family, exponent +1 only.
inline StabResult s_of_c_alpha(const RatFunc& c, unsigned long max_root_order = 24) {
    if (c.is_zero()) throw domain_error("S(c; alpha) needs a nonzero multiplier");
    RatFunc c2 = c * c;
    RatFunc b = RatFunc(4) * c2 / (c2 - RatFunc::var());
    return stab_search(b, max_root_order, false);
}

}  // namespace jonq

#endif
