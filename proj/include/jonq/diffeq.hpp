#ifndef JONQ_DIFFEQ_HPP
#define JONQ_DIFFEQ_HPP

#include <set>
#include <vector>

#include "linsolve.hpp"
#include "ratfunc.hpp"

namespace jonq {

struct unsupported_equation : domain_error {
    using domain_error::domain_error;
};

// a1(y) f(sigma(y)) + a0(y) f(y) = rhs, with sigma(y) = y + 1 (Shift) or
// sigma(y) = beta * y (QShift, beta nonzero and not a root of unity).
struct ShiftEquation {
    enum class Kind { Shift, QShift };
    Kind kind = Kind::Shift;
    FieldElem beta = FieldElem(1);
    Poly a1, a0;
    RatFunc rhs;

    RatFunc apply_sigma(const RatFunc& f) const {
        return kind == Kind::Shift ? f.shifted(FieldElem(1)) : f.dilated(beta);
    }
    RatFunc residual(const RatFunc& f) const {
        return RatFunc(a1) * apply_sigma(f) + RatFunc(a0) * f - rhs;
    }
};

inline ShiftEquation shift_equation(Poly a1, Poly a0, RatFunc rhs) {
    return ShiftEquation{ShiftEquation::Kind::Shift, FieldElem(1), std::move(a1), std::move(a0),
                         std::move(rhs)};
}
inline ShiftEquation qshift_equation(const FieldElem& beta, Poly a1, Poly a0, RatFunc rhs) {
    return ShiftEquation{ShiftEquation::Kind::QShift, beta, std::move(a1), std::move(a0),
                         std::move(rhs)};
}

// particular + span(homogeneous_basis); every member satisfies the equation
// identically (verified at construction time by the solver).
struct SolutionSpace {
    std::optional<RatFunc> particular;
    std::vector<RatFunc> homogeneous_basis;
    bool complete = true;
};

// Res_y(p(y+j), q(y)) as a polynomial in the shift j, by interpolation.
inline Poly resultant_in_shift(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) throw domain_error("resultant of zero polynomial");
    int n = p.degree() * q.degree();
    std::vector<FieldElem> xs, ys;
    for (int j = 0; j <= n; ++j) {
        xs.push_back(FieldElem(j));
        ys.push_back(resultant(p.shifted(FieldElem(j)), q));
    }
    return lagrange_interpolate(xs, ys);
}

// { j >= 0 : gcd(p(y+j), q(y)) nonconstant }, via the integer roots of the
// shift resultant scanned over the root-difference range.
inline std::set<long> dispersion(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) throw domain_error("dispersion of zero polynomial");
    std::set<long> out;
    if (p.degree() == 0 || q.degree() == 0) return out;
    Poly R = resultant_in_shift(p, q);
    QPoly witness;
    for (auto& coord : detail::rational_coordinates(R)) witness = gcd_poly(witness, coord);
    Rat bound = detail::root_magnitude_bound(p) + detail::root_magnitude_bound(q);
    long B = static_cast<long>(numerator(bound) / denominator(bound)) + 1;
    for (long j = 0; j <= B; ++j) {
        if (!witness.evaluate(Rat(j)).is_zero() && !witness.is_zero()) continue;
        if (gcd_poly(p.shifted(FieldElem(static_cast<int>(j))), q).degree() > 0) out.insert(j);
    }
    return out;
}

namespace detail {

// is ratio = beta^k for some k in [0, bound]?  proven=true when the search
// space was exhausted with certainty (rational data or an actual hit).
struct BetaLog {
    std::optional<long> exponent;
    bool proven = true;
};

inline BetaLog exact_beta_log(const FieldElem& ratio, const FieldElem& beta, long bound) {
    if (ratio.is_one()) return {0, true};
    bool rational = beta.is_rational() && ratio.is_rational();
    Rat ab(0), ar(0);
    bool increasing = false;
    if (rational) {
        ab = rat_abs(beta.to_rational());
        ar = rat_abs(ratio.to_rational());
        increasing = ab > 1;
    }
    FieldElem pw(1);
    for (long k = 1; k <= bound; ++k) {
        pw = pw * beta;
        if (pw == ratio) return {k, true};
        if (rational) {
            Rat apw = rat_abs(pw.to_rational());
            if (increasing && apw > ar) return {std::nullopt, true};
            if (!increasing && apw < ar) return {std::nullopt, true};
        }
    }
    return {std::nullopt, rational};
}

// Bounded q-dispersion: { h in [0, bound] : gcd(p(beta^h y), q(y)) != 1 }.
struct QDispersion {
    std::set<long> values;
    bool proven = true;
};

inline QDispersion q_dispersion(const Poly& p, const Poly& q, const FieldElem& beta, long bound) {
    QDispersion out;
    if (p.degree() <= 0 || q.degree() <= 0) return out;
    // magnitude argument for rational beta: beta^h is a ratio of nonzero
    // roots, so |beta|^h is bounded by max/min root magnitudes
    bool proven = false;
    if (beta.is_rational()) {
        Rat ab = rat_abs(beta.to_rational());
        if (ab != 1) {
            auto nonzero_root_bounds = [](const Poly& f) {
                int v = f.valuation();
                Poly g = f;
                if (v > 0) {
                    std::vector<FieldElem> cs;
                    for (int i = v; i <= f.degree(); ++i) cs.push_back(f.coeff(i));
                    g = Poly(std::move(cs));
                }
                Rat upper = root_magnitude_bound(g);
                Rat lower_inv = root_magnitude_bound(g.reversed(g.degree()));
                return std::make_pair(upper, lower_inv);  // |root| <= upper, >= 1/lower_inv
            };
            auto [pu, pl] = nonzero_root_bounds(p);
            auto [qu, ql] = nonzero_root_bounds(q);
            // beta^h = alpha_q / alpha_p:  |beta|^h <= qu * pl and >= 1/(pu*ql)
            Rat cap = (qu == 0 || pl == 0) ? Rat(0) : qu * pl;
            Rat capinv = (pu == 0 || ql == 0) ? Rat(0) : pu * ql;
            Rat growth = ab > 1 ? ab : Rat(1) / ab;
            Rat reach = cap > capinv ? cap : capinv;
            Rat g(1);
            long need = 0;
            while (g <= reach && need <= bound) {
                g *= growth;
                ++need;
            }
            proven = need <= bound;
        }
    }
    out.proven = proven;
    for (long h = 0; h <= bound; ++h) {
        Poly ph = p.dilated(beta.pow(h));
        if (gcd_poly(ph, q).degree() > 0) out.values.insert(h);
    }
    return out;
}

struct UniversalDenominator {
    Poly u = Poly(1);
    bool proven = true;
};

// Abramov-style denominator bound for a1 f(sigma y) + a0 f = rhs.
inline UniversalDenominator universal_denominator_impl(const ShiftEquation& eq, long qbound) {
    UniversalDenominator out;
    const Poly dr = eq.rhs.den();
    if (eq.kind == ShiftEquation::Kind::Shift) {
        Poly A = (eq.a1 * dr).shifted(FieldElem(-1));
        Poly B = eq.a0 * dr;
        auto disp = dispersion(B, A);
        std::vector<long> hs(disp.rbegin(), disp.rend());
        for (long h : hs) {
            Poly g = gcd_poly(A, B.shifted(FieldElem(static_cast<int>(h))));
            if (g.degree() <= 0) continue;
            A = A / g;
            B = B / g.shifted(FieldElem(static_cast<int>(-h)));
            for (long k = 0; k <= h; ++k) out.u = out.u * g.shifted(FieldElem(static_cast<int>(-k)));
        }
        return out;
    }
    // QShift: pole at the origin handled by valuations, the rest by beta-chains
    const FieldElem& beta = eq.beta;
    int v1 = eq.a1.valuation(), v0 = eq.a0.valuation();
    int vr = eq.rhs.is_zero() ? 0 : eq.rhs.num().valuation() - eq.rhs.den().valuation();
    long s = 0;
    if (!eq.rhs.is_zero()) s = std::max<long>(s, std::min(v1, v0) - vr);
    if (v1 == v0) {
        // resonance beta^s = -c1/c0 at the lowest coefficients
        FieldElem c1 = eq.a1.coeff(v1), c0 = eq.a0.coeff(v0);
        auto res = exact_beta_log(-(c1 / c0), beta, qbound);
        if (res.exponent) s = std::max(s, *res.exponent);
        out.proven = out.proven && res.proven;
    }
    if (s > 0) out.u = out.u * Poly::var().pow(static_cast<unsigned>(s));
    auto strip0 = [](const Poly& f) {
        int v = f.valuation();
        if (v <= 0) return f;
        std::vector<FieldElem> cs;
        for (int i = v; i <= f.degree(); ++i) cs.push_back(f.coeff(i));
        return Poly(std::move(cs));
    };
    Poly A = strip0(eq.a1 * dr).dilated(beta.inverse());
    Poly B = strip0(eq.a0 * dr);
    auto qd = q_dispersion(B, A, beta, qbound);
    out.proven = out.proven && qd.proven;
    std::vector<long> hs(qd.values.rbegin(), qd.values.rend());
    for (long h : hs) {
        Poly g = gcd_poly(A, B.dilated(beta.pow(h)));
        if (g.degree() <= 0) continue;
        A = A / g;
        B = B / g.dilated(beta.pow(-h)).monic();
        for (long k = 0; k <= h; ++k) out.u = out.u * g.dilated(beta.pow(-k)).monic();
    }
    return out;
}

struct PolyLinearResult {
    std::optional<Poly> particular;
    std::vector<Poly> nullspace;
    bool complete = true;
};

// All polynomial solutions of alpha(y) p(sigma y) + beta0(y) p(y) = gamma(y).
inline PolyLinearResult solve_poly_linear(ShiftEquation::Kind kind, const FieldElem& beta,
                                          const Poly& alpha, const Poly& beta0, const Poly& gamma,
                                          long qbound) {
    PolyLinearResult out;
    if (alpha.is_zero() && beta0.is_zero()) throw domain_error("degenerate polynomial equation");
    long Dmax = -1;
    int m = std::max(alpha.degree(), beta0.degree());
    if (!gamma.is_zero()) Dmax = std::max(Dmax, static_cast<long>(gamma.degree() - m));
    if (alpha.degree() == beta0.degree() && !alpha.is_zero()) {
        if (kind == ShiftEquation::Kind::Shift) {
            if ((alpha.lc() + beta0.lc()).is_zero()) {
                if (!gamma.is_zero()) Dmax = std::max(Dmax, static_cast<long>(gamma.degree() - m + 1));
                FieldElem r = -(alpha.coeff(m - 1) + beta0.coeff(m - 1)) / alpha.lc();
                if (r.is_rational()) {
                    Rat rr = r.to_rational();
                    if (denominator(rr) == 1 && rr >= 0)
                        Dmax = std::max(Dmax, static_cast<long>(numerator(rr)));
                }
            }
        } else {
            auto res = exact_beta_log(-(beta0.lc() / alpha.lc()), beta, qbound);
            if (res.exponent) Dmax = std::max(Dmax, *res.exponent);
            out.complete = out.complete && res.proven;
        }
    }
    if (Dmax < 0) {
        if (gamma.is_zero()) out.particular = Poly();
        return out;
    }
    size_t cols = static_cast<size_t>(Dmax) + 1;
    size_t rows = static_cast<size_t>(std::max<long>(m + Dmax, gamma.degree())) + 1;
    std::vector<std::vector<FieldElem>> M(rows, std::vector<FieldElem>(cols, FieldElem(0)));
    for (size_t j = 0; j < cols; ++j) {
        Poly sig_yj = kind == ShiftEquation::Kind::Shift
                          ? Poly(std::vector<FieldElem>{FieldElem(1), FieldElem(1)}).pow(static_cast<unsigned>(j))
                          : Poly::monomial(beta.pow(static_cast<long>(j)), static_cast<int>(j));
        Poly col = alpha * sig_yj + beta0 * Poly::monomial(FieldElem(1), static_cast<int>(j));
        for (size_t i = 0; i < rows; ++i) M[i][j] = col.coeff(static_cast<int>(i));
    }
    std::vector<FieldElem> rhs(rows, FieldElem(0));
    for (size_t i = 0; i < rows; ++i) rhs[i] = gamma.coeff(static_cast<int>(i));
    auto sol = solve_linear(std::move(M), std::move(rhs));
    if (sol.particular) out.particular = Poly(std::move(*sol.particular));
    for (auto& v : sol.nullspace) out.nullspace.push_back(Poly(std::move(v)));
    return out;
}

}  // namespace detail

// Abramov universal denominator: every rational solution's denominator
// divides the returned polynomial.
inline Poly universal_denominator(const ShiftEquation& eq) {
    if (eq.kind != ShiftEquation::Kind::Shift)
        throw domain_error("universal_denominator is exposed for the shift case");
    return detail::universal_denominator_impl(eq, 64).u;
}

// All polynomial solutions of the denominator-cleared equation
// a1 p(sigma y) + a0 p = rhs (rhs must be polynomial).
inline SolutionSpace polynomial_solutions(const ShiftEquation& eq, long qbound = 64) {
    if (!eq.rhs.is_polynomial()) throw domain_error("polynomial stage needs a polynomial rhs");
    auto r = detail::solve_poly_linear(eq.kind, eq.beta, eq.a1, eq.a0, eq.rhs.num(), qbound);
    SolutionSpace out;
    out.complete = r.complete;
    if (r.particular) {
        out.particular = RatFunc(*r.particular);
        if (!eq.residual(*out.particular).is_zero())
            throw domain_error("internal error: particular solution fails verification");
    }
    for (auto& h : r.nullspace) {
        RatFunc f(h.monic());
        RatFunc hom = RatFunc(eq.a1) * eq.apply_sigma(f) + RatFunc(eq.a0) * f;
        if (!hom.is_zero())
            throw domain_error("internal error: homogeneous solution fails verification");
        out.homogeneous_basis.push_back(f);
    }
    return out;
}

// Complete rational solution space (complete relative to the exponent search
// bound in the q-shift case; the flag records when the bound may bind).
inline SolutionSpace solve(const ShiftEquation& eq, long qbound = 64) {
    if (eq.a1.is_zero() && eq.a0.is_zero()) throw domain_error("equation has zero operator");
    if (eq.kind == ShiftEquation::Kind::QShift) {
        if (eq.beta.is_zero()) throw unsupported_equation("q-shift ratio must be nonzero");
        if (root_of_unity_order(eq.beta))
            throw unsupported_equation(
                "q-shift ratio is a root of unity; reduce to the periodic-base analysis");
    }
    SolutionSpace out;
    if (eq.a1.is_zero()) {
        out.particular = eq.rhs / RatFunc(eq.a0);
        return out;
    }
    if (eq.a0.is_zero()) {
        RatFunc g = eq.rhs / RatFunc(eq.a1);
        out.particular = eq.kind == ShiftEquation::Kind::Shift ? g.shifted(FieldElem(-1))
                                                               : g.dilated(eq.beta.inverse());
        if (!eq.residual(*out.particular).is_zero())
            throw domain_error("internal error: degenerate solve failed");
        return out;
    }
    auto ud = detail::universal_denominator_impl(eq, qbound);
    const Poly& U = ud.u;
    Poly Usig = eq.kind == ShiftEquation::Kind::Shift ? U.shifted(FieldElem(1)) : U.dilated(eq.beta);
    // substitute f = p / U and clear denominators
    Poly alpha = eq.a1 * U * eq.rhs.den();
    Poly beta0 = eq.a0 * Usig * eq.rhs.den();
    Poly gamma = eq.rhs.num() * U * Usig;
    Poly content = gcd_poly(gcd_poly(alpha, beta0), gamma);
    if (content.degree() > 0) {
        alpha = alpha / content;
        beta0 = beta0 / content;
        gamma = gamma / content;
    }
    auto r = detail::solve_poly_linear(eq.kind, eq.beta, alpha, beta0, gamma, qbound);
    out.complete = ud.proven && r.complete;
    if (r.particular) {
        RatFunc f(*r.particular, U);
        if (!eq.residual(f).is_zero())
            throw domain_error("internal error: solution fails substitution check");
        out.particular = f;
    }
    for (auto& h : r.nullspace) {
        RatFunc f(h, U);
        RatFunc hom = RatFunc(eq.a1) * eq.apply_sigma(f) + RatFunc(eq.a0) * f;
        if (!hom.is_zero())
            throw domain_error("internal error: homogeneous solution fails substitution check");
        f = f * RatFunc(f.num().lc().inverse());
        out.homogeneous_basis.push_back(f);
    }
    if (out.homogeneous_basis.size() > 1)
        throw domain_error("internal error: first-order kernel has dimension > 1");
    return out;
}

// Necessary condition for solvability of f(y+1) - f(y) = a when a has only
// simple poles: residues over each shift-orbit of poles sum to zero.  Falls
// back to the full solver on higher-order poles.
inline bool residue_obstruction(const RatFunc& a) {
    if (a.is_polynomial()) return true;
    Poly d = a.den();
    bool simple = true;
    for (auto& [f, m] : squarefree_decomposition(d).factors)
        if (m > 1) simple = false;
    if (!simple) {
        auto sol = solve(shift_equation(Poly(1), Poly(-1), a));
        return sol.particular.has_value();
    }
    auto disp = dispersion(d, d);
    long m = disp.empty() ? 0 : *disp.rbegin();
    RatFunc c(0);
    for (long j = 0; j <= m; ++j) c += a.shifted(FieldElem(static_cast<int>(j)));
    Poly prod(1);
    for (long k = 1; k <= m; ++k) prod = prod * d.shifted(FieldElem(static_cast<int>(-k)));
    Poly dmin = d / gcd_poly(d, prod);
    if (c.is_polynomial()) return true;
    return gcd_poly(c.den(), dmin).degree() == 0;
}

}  // namespace jonq

#endif
