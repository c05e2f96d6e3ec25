#ifndef JONQ_CENTRALIZER_HPP
#define JONQ_CENTRALIZER_HPP

#include <memory>
#include <string>
#include <vector>

#include "diffeq.hpp"
#include "growth.hpp"
#include "map.hpp"
#include "stab.hpp"

namespace jonq {

inline bool commutes(const JonqMap& f, const JonqMap& g) { return compose(f, g) == compose(g, f); }

// ---- maximal abelian subgroups ---------------------------------------------

enum class AbKind { Ja, Jm, JF };

struct AbDescriptor {
    AbKind kind = AbKind::Ja;
    std::optional<Poly> F;  // JF: squarefree, monic
    JonqMap conjugator;     // chi with chi f chi^{-1} in the normal-form frame
};

// Ab(phi) for a nonperiodic fibre-preserving map: J_a, J_m or J_F by type.
inline AbDescriptor ab_of(const JonqMap& f) {
    if (!f.in_j0()) throw domain_error("Ab(phi) is defined for fibre-preserving maps");
    if (is_periodic(f).first) throw domain_error("Ab(phi) requires a nonperiodic map");
    NormalFormResult nf = normal_form(f);
    if (nf.needs_extension()) {
        FieldPtr ext = Field::with_sqrt(std::get<ExtensionRequired>(nf.conjugator).constant);
        nf = normal_form(embedded_into(f, ext));
    }
    AbDescriptor out;
    out.conjugator = nf.chi();
    switch (nf.type.kind) {
        case MapType::TypeA:
            out.kind = AbKind::Ja;
            break;
        case MapType::TypeB:
            out.kind = AbKind::Jm;
            break;
        case MapType::TypeC: {
            out.kind = AbKind::JF;
            Poly F = *nf.type.F;
            if (!F.lc().is_one()) {
                // reach the monic frame through sqrt(lead)
                FieldPtr ext = Field::with_sqrt(F.lc());
                nf = normal_form(embedded_into(f, ext));
                F = *nf.type.F;
                out.conjugator = nf.chi();
                if (!F.lc().is_one())
                    throw domain_error("internal error: monic normalization failed");
            }
            out.F = F;
            break;
        }
        case MapType::Identity:
            throw domain_error("identity has no Ab(phi)");
    }
    return out;
}

// ---- kernel of pi_2 restricted to the centralizer --------------------------

struct KernelDescription {
    enum class Kind {
        JaParametrized,          // { (x + b(y), y) }
        JmParametrized,          // { (b(y) x, y) }
        JFParametrized,          // J_F
        Translations,            // { (x + beta, y) : beta in K }
        Scalings,                // { (beta x, y) : beta in K* }
        ScalingsWithInvolution,  // < (beta x, y), (B(y)/x, y) >
        FiniteTorsion,           // explicit verified elements
        Trivial,
        MultipleFibrations,      // conjugate to (x, base): outside the table
        NotImplemented,
    };
    Kind kind = Kind::Trivial;
    std::optional<Poly> F;             // JFParametrized
    std::optional<RatFunc> involution_B;  // ScalingsWithInvolution
    std::optional<RatFunc> witness;    // MultipleFibrations: conjugating x-part
    std::vector<JonqMap> elements;     // FiniteTorsion members
    std::string note;
};

namespace detail {

struct XPart {
    enum class Family { Additive, Multiplicative, General } family;
    RatFunc value;  // a(y) or b(y)
};

inline XPart x_part_family(const JonqMap& f) {
    const ProjMatRF& M = f.matrix();
    if (M.c().is_zero() && M.b().is_zero())
        return {XPart::Family::Multiplicative, RatFunc(M.a()) / RatFunc(M.d())};
    if (M.c().is_zero() && M.a() == M.d())
        return {XPart::Family::Additive, RatFunc(M.b()) / RatFunc(M.d())};
    return {XPart::Family::General, RatFunc(0)};
}

// Solve f(sigma y) - f(y) = rhs for base translation y + tau (any tau != 0)
// or scaling beta y, by reducing translations to step 1.
inline SolutionSpace solve_twisted(const MobiusK& base, const Poly& a1, const Poly& a0,
                                   const RatFunc& rhs, long qbound) {
    if (base.c().is_zero() && base.a() == base.d()) {
        FieldElem tau = base.b() / base.d();
        if (tau.is_zero()) throw domain_error("trivial base in twisted solve");
        if (tau.is_one()) return solve(shift_equation(a1, a0, rhs), qbound);
        // substitute y = tau z
        Poly a1z = a1.dilated(tau), a0z = a0.dilated(tau);
        RatFunc rz = rhs.dilated(tau);
        auto sol = solve(shift_equation(a1z, a0z, rz), qbound);
        SolutionSpace out;
        out.complete = sol.complete;
        FieldElem inv = tau.inverse();
        if (sol.particular) out.particular = sol.particular->dilated(inv);
        for (auto& h : sol.homogeneous_basis) out.homogeneous_basis.push_back(h.dilated(inv));
        return out;
    }
    if (base.c().is_zero() && base.b().is_zero()) {
        FieldElem beta = base.a() / base.d();
        return solve(qshift_equation(beta, a1, a0, rhs), qbound);
    }
    throw domain_error("twisted solve expects a translation or scaling base");
}

}  // namespace detail

// ker(pi_2 | C(phi)) for maps in the table's normal-form families.
inline KernelDescription kernel_pi2(const JonqMap& f, long qbound = 64) {
    KernelDescription out;
    if (f.in_j0()) {
        if (f.is_identity()) throw domain_error("kernel of the identity is everything");
        TypeClass tc = classify_type(f);
        switch (tc.kind) {
            case MapType::TypeA:
                out.kind = KernelDescription::Kind::JaParametrized;
                break;
            case MapType::TypeB:
                out.kind = KernelDescription::Kind::JmParametrized;
                break;
            case MapType::TypeC:
                out.kind = KernelDescription::Kind::JFParametrized;
                out.F = tc.F;
                break;
            default:
                break;
        }
        return out;
    }
    auto ord = mobius_order(f.base());
    if (ord) {
        out.kind = KernelDescription::Kind::NotImplemented;
        out.note = "finite-order base: see the power report";
        return out;
    }
    const MobiusK& base = f.base();
    bool translation = base.c().is_zero() && base.a() == base.d();
    bool scaling = base.c().is_zero() && base.b().is_zero();
    if (!translation && !scaling) {
        out.kind = KernelDescription::Kind::NotImplemented;
        out.note = "base is not in translation/scaling normal form";
        return out;
    }
    auto xp = detail::x_part_family(f);
    if (xp.family == detail::XPart::Family::Additive) {
        const RatFunc& a = xp.value;
        // telescoping: T(sigma y) - T(y) = -a conjugates to (x, base)
        auto tel = detail::solve_twisted(base, Poly(1), Poly(-1), -a, qbound);
        if (tel.particular) {
            out.kind = KernelDescription::Kind::MultipleFibrations;
            out.witness = *tel.particular;
            out.note = "conjugate to the base-only map by (x + w(y), y); several invariant fibrations";
            return out;
        }
        out.kind = KernelDescription::Kind::Translations;
        return out;
    }
    if (xp.family == detail::XPart::Family::Multiplicative) {
        const RatFunc& b = xp.value;
        // (**): T(sigma y) = b T(y)
        auto star2 = detail::solve_twisted(base, Poly(b.den()), -b.num(), RatFunc(0), qbound);
        if (!star2.homogeneous_basis.empty()) {
            out.kind = KernelDescription::Kind::MultipleFibrations;
            out.witness = star2.homogeneous_basis[0];
            out.note = "conjugate to the base-only map by (w(y) x, y); several invariant fibrations";
            return out;
        }
        // (diamond): B(sigma y) = b(y)^2 B(y)
        RatFunc b2 = b * b;
        auto diam = detail::solve_twisted(base, Poly(b2.den()), -b2.num(), RatFunc(0), qbound);
        if (!diam.homogeneous_basis.empty()) {
            if (scaling)
                throw domain_error(
                    "inconsistency: the multiplicative square equation has a rational solution "
                    "over an infinite-order scaling base");
            out.kind = KernelDescription::Kind::ScalingsWithInvolution;
            out.involution_B = diam.homogeneous_basis[0];
            return out;
        }
        out.kind = KernelDescription::Kind::Scalings;
        return out;
    }
    out.kind = KernelDescription::Kind::NotImplemented;
    out.note = "x-part outside the additive/multiplicative families; use the bounded torsion search";
    return out;
}

// ---- the summary-table dispatch --------------------------------------------

enum class TableLine { L1, L2, L3, L4, L5, L6, L7, L8, L9, L10, L11, L12, L13, None };
enum class Scope { FullCentralizer, CentralizerWithinJ, PeriodicUnsupported };

struct CentralizerReport {
    TableLine line = TableLine::None;
    Scope scope = Scope::CentralizerWithinJ;
    std::optional<AbDescriptor> ab;
    KernelDescription kernel;
    std::string image_constraint;
    std::vector<JonqMap> generators;  // verified against the input map
    std::vector<std::string> notes;
    std::optional<JonqMap> frame_conjugator;  // chi: chi (input) chi^{-1} = reported frame
    std::shared_ptr<CentralizerReport> power_report;  // L6
    std::optional<StabResult> stab;
    std::optional<GrowthClass> growth;
};

namespace detail {

inline void add_generator(CentralizerReport& rep, const JonqMap& original, const JonqMap& g) {
    if (g.is_identity()) return;
    if (!commutes(g, original))
        throw domain_error("internal error: emitted generator fails the commutation check");
    for (auto& h : rep.generators)
        if (h == g) return;
    rep.generators.push_back(g);
}

inline JonqMap pull_back(const JonqMap& frame_chi, const JonqMap& g) {
    return compose(compose(inverse(frame_chi), g), frame_chi);
}

// Verified torsion candidates commuting with f: scalings by roots of unity
// and the derived anti-diagonal involution.
inline std::vector<JonqMap> torsion_kernel_search(const JonqMap& f) {
    std::vector<JonqMap> out;
    FieldPtr K = Field::rationals();
    for (const Poly* p : {&f.matrix().a(), &f.matrix().b(), &f.matrix().c(), &f.matrix().d()})
        K = FieldElem::common_field(K, coefficient_field(*p));
    unsigned long L = K->unity_order();
    FieldElem gen = unity_generator(K);
    FieldElem w = FieldElem(1).embedded_into(K);
    for (unsigned long j = 1; j < L; ++j) {
        w = w * gen;
        JonqMap cand = JonqMap::multiplicative(RatFunc(w));
        if (commutes(cand, f)) out.push_back(cand);
    }
    const ProjMatRF& M = f.matrix();
    if (!M.a().is_zero() && !M.b().is_zero() && !M.c().is_zero() && !M.d().is_zero()) {
        RatFunc B = RatFunc(M.b() * M.d()) / RatFunc(M.a() * M.c());
        JonqMap cand(ProjMatRF::from_ratfuncs(RatFunc(0), B, RatFunc(1), RatFunc(0)), MobiusK());
        if (commutes(cand, f)) out.push_back(cand);
    }
    return out;
}

// Conjugate an infinite-order base into y + 1 or beta y; returns the frame
// map X = (x, mu(y)) (possibly over an extension) or nullopt when the base
// is already normalized.
struct BaseNormalization {
    JonqMap frame;       // X with X f X^{-1} having a normalized base
    FieldPtr field;      // field of the normalized data
    bool extended = false;
};

inline std::optional<BaseNormalization> normalize_base(const JonqMap& f) {
    const MobiusK& nu = f.base();
    bool translation = nu.c().is_zero() && nu.a() == nu.d();
    bool scaling = nu.c().is_zero() && nu.b().is_zero();
    if (translation || scaling) return std::nullopt;
    FieldPtr K = Field::rationals();
    for (const FieldElem* e : {&nu.a(), &nu.b(), &nu.c(), &nu.d()})
        K = FieldElem::common_field(K, e->field());
    BaseNormalization out;
    out.field = K;
    if (nu.c().is_zero()) {
        // affine base a/d y + b/d with a != d: fixed point y0 = b/(d-a)
        FieldElem y0 = nu.b() / (nu.d() - nu.a());
        MobiusK mu = MobiusK::translation(-y0);
        out.frame = JonqMap::base_only(mu);
        return out;
    }
    FieldElem disc = (nu.d() - nu.a()) * (nu.d() - nu.a()) + FieldElem(4) * nu.b() * nu.c();
    auto s = try_sqrt(disc);
    if (!s) {
        FieldPtr E = Field::with_sqrt(disc);
        out.field = E;
        out.extended = true;
        JonqMap fe = embedded_into(f, E);
        MobiusK nue = fe.base();
        FieldElem de = disc.embedded_into(E);
        s = try_sqrt(de);
        if (!s) throw domain_error("internal error: sqrt missing after extension");
        FieldElem r1 = (nue.a() - nue.d() + *s) / (FieldElem(2) * nue.c()).embedded_into(E);
        FieldElem r2 = (nue.a() - nue.d() - *s) / (FieldElem(2) * nue.c()).embedded_into(E);
        MobiusK mu(FieldElem(1).embedded_into(E), -r1, FieldElem(1).embedded_into(E), -r2);
        out.frame = JonqMap::base_only(mu);
        return out;
    }
    if (s->is_zero()) {
        // parabolic: single fixed point r; send it to infinity
        FieldElem r = (nu.a() - nu.d()) / (FieldElem(2) * nu.c());
        MobiusK mu(FieldElem(0), FieldElem(1), FieldElem(1), -r);
        JonqMap X = JonqMap::base_only(mu);
        // rescale the resulting translation to step 1
        MobiusK t = (mu * nu) * mu.inverse();
        FieldElem step = t.b() / t.d();
        MobiusK rescale = MobiusK::scaling(step.inverse());
        out.frame = compose(JonqMap::base_only(rescale), X);
        return out;
    }
    FieldElem r1 = (nu.a() - nu.d() + *s) / (FieldElem(2) * nu.c());
    FieldElem r2 = (nu.a() - nu.d() - *s) / (FieldElem(2) * nu.c());
    MobiusK mu(FieldElem(1), -r1, FieldElem(1), -r2);
    out.frame = JonqMap::base_only(mu);
    return out;
}

}  // namespace detail

CentralizerReport centralizer_report(const JonqMap& f, unsigned long max_root_order = 24,
                                     long qbound = 64);

namespace detail {

// Lines l1-l5: fibre-preserving nonperiodic maps.
inline CentralizerReport report_j0(const JonqMap& f, unsigned long max_root_order, long qbound) {
    CentralizerReport rep;
    rep.scope = Scope::FullCentralizer;  // Prop. carac: C(phi) lies in J
    NormalFormResult nf = normal_form(f);
    if (nf.needs_extension()) {
        FieldPtr ext = Field::with_sqrt(std::get<ExtensionRequired>(nf.conjugator).constant);
        CentralizerReport sub = centralizer_report(embedded_into(f, ext), max_root_order, qbound);
        sub.notes.insert(sub.notes.begin(),
                         "diagonalization needs a constant square root; field extended");
        return sub;
    }
    const JonqMap& chi = nf.chi();
    rep.frame_conjugator = chi;
    rep.growth = classify_growth_bb(f).cls;
    switch (nf.type.kind) {
        case MapType::TypeA: {
            rep.line = TableLine::L1;
            rep.kernel.kind = KernelDescription::Kind::JaParametrized;
            rep.image_constraint = "PGL2(K)";
            rep.ab = ab_of(f);
            // sample generators of J_a x PGL2 in the canonical frame
            RatFunc Yv = RatFunc::var();
            for (const RatFunc& b : {RatFunc(1), Yv, Yv.inverse()})
                add_generator(rep, f, pull_back(chi, JonqMap::additive(b)));
            for (const MobiusK& m :
                 {MobiusK::translation(FieldElem(1)), MobiusK::scaling(FieldElem(2)),
                  MobiusK::inversion(FieldElem(1))})
                add_generator(rep, f, pull_back(chi, JonqMap::base_only(m)));
            break;
        }
        case MapType::TypeB: {
            RatFunc b = RatFunc(nf.canonical.matrix().a()) / RatFunc(nf.canonical.matrix().d());
            if (b.is_constant()) {
                rep.line = TableLine::L2;
                rep.kernel.kind = KernelDescription::Kind::JmParametrized;
                rep.image_constraint = "PGL2(K)";
                rep.ab = ab_of(f);
                RatFunc Yv = RatFunc::var();
                for (const RatFunc& s : {RatFunc(2), Yv, (Yv + RatFunc(1)) / Yv})
                    add_generator(rep, f, pull_back(chi, JonqMap::multiplicative(s)));
                for (const MobiusK& m :
                     {MobiusK::translation(FieldElem(1)), MobiusK::scaling(FieldElem(3)),
                      MobiusK::inversion(FieldElem(1))})
                    add_generator(rep, f, pull_back(chi, JonqMap::base_only(m)));
            } else {
                rep.line = TableLine::L3;
                rep.kernel.kind = KernelDescription::Kind::JmParametrized;
                rep.ab = ab_of(f);
                StabResult st = stab_search(b, max_root_order);
                rep.image_constraint = "Stab(b), finite";
                // lifts of the stabilizer into the centralizer
                for (auto& w : st.diagonal)
                    add_generator(rep, f,
                                  pull_back(chi, JonqMap::base_only(MobiusK::scaling(w))));
                for (auto& w : st.anti_diagonal) {
                    JonqMap lift(ProjMatRF::from_ratfuncs(RatFunc(0), RatFunc(1), RatFunc(1), RatFunc(0)),
                                 MobiusK::scaling(w));
                    add_generator(rep, f, pull_back(chi, lift));
                }
                for (auto& entry : st.inversion) {
                    ProjMatRF top = entry.exponent == 1
                                        ? ProjMatRF()
                                        : ProjMatRF::from_ratfuncs(RatFunc(0), RatFunc(1),
                                                                   RatFunc(1), RatFunc(0));
                    JonqMap lift(top, MobiusK::inversion(entry.alpha));
                    add_generator(rep, f, pull_back(chi, lift));
                }
                // J_m members
                RatFunc Yv = RatFunc::var();
                for (const RatFunc& s : {RatFunc(2), Yv})
                    add_generator(rep, f, pull_back(chi, JonqMap::multiplicative(s)));
                rep.stab = st;
            }
            break;
        }
        case MapType::TypeC: {
            Poly F = *nf.type.F;
            RatFunc c = *nf.type.c;
            rep.ab = ab_of(f);
            if (F.degree() >= 3) {
                rep.line = TableLine::L4;
                rep.kernel.kind = KernelDescription::Kind::JFParametrized;
                rep.kernel.F = F;
                rep.image_constraint = "finite (automorphisms of the fixed curve)";
                rep.notes.push_back(
                    "finite extension of J_F; trivial for most F; only verified candidate "
                    "generators are listed");
                // candidates (x, w y) with F(w y) = F and c(w y) = c
                StabResult stF = stab_search(RatFunc(F), max_root_order);
                for (auto& w : stF.diagonal) {
                    if (w.is_one()) continue;
                    FieldPtr E = FieldElem::common_field(w.field(), coefficient_field(c));
                    RatFunc cE = embedded_into(c, E);
                    if (!c.is_constant() && !(cE.dilated(w.embedded_into(E)) == cE)) continue;
                    JonqMap cand = JonqMap::base_only(MobiusK::scaling(w));
                    add_generator(rep, embedded_into(f, E),
                                  pull_back(embedded_into(chi, E), cand));
                }
                // J_F members
                RatFunc Yv = RatFunc::var();
                for (const RatFunc& cc : {RatFunc(0), RatFunc(1), Yv})
                    add_generator(rep, f,
                                  pull_back(chi, JonqMap::fibered_involution_type(cc, RatFunc(F))));
                rep.stab = stF;
            } else {
                rep.line = TableLine::L5;
                // reduce to F = y
                JonqMap g = nf.canonical;
                JonqMap chi_total = chi;
                JonqMap forig = f;
                if (F.degree() == 2) {
                    FieldElem disc = F.coeff(1) * F.coeff(1) -
                                     FieldElem(4) * F.coeff(2) * F.coeff(0);
                    auto sq = try_sqrt(disc);
                    if (!sq) {
                        FieldPtr E = Field::with_sqrt(disc);
                        CentralizerReport sub =
                            centralizer_report(embedded_into(f, E), max_root_order, qbound);
                        sub.notes.insert(sub.notes.begin(),
                                         "quadratic F needs a root; field extended");
                        return sub;
                    }
                    FieldElem r1 = (-F.coeff(1) + *sq) / (FieldElem(2) * F.coeff(2));
                    FieldElem r2 = (-F.coeff(1) - *sq) / (FieldElem(2) * F.coeff(2));
                    // mu^{-1}(y) = (r2 y + r1)/(y + 1); conjugate by (g(y) x, mu(y))
                    MobiusK mu = MobiusK(r2, r1, FieldElem(1), FieldElem(1)).inverse();
                    JonqMap X1 = compose(JonqMap::multiplicative(RatFunc::var() + RatFunc(1)),
                                         JonqMap::base_only(mu));
                    g = conjugate(X1, g);
                    chi_total = compose(X1, chi_total);
                    // now F' = e y: rescale base by e
                    RatFunc Fc = RatFunc(g.matrix().b()) / RatFunc(g.matrix().c());
                    FieldElem e = (Fc / RatFunc::var()).constant_value();
                    JonqMap X2 = JonqMap::base_only(MobiusK::scaling(e));
                    g = conjugate(X2, g);
                    chi_total = compose(X2, chi_total);
                } else {  // deg F = 1
                    MobiusK mu(F.coeff(1), F.coeff(0), FieldElem(0), FieldElem(1));
                    JonqMap X1 = JonqMap::base_only(mu);
                    g = conjugate(X1, g);
                    chi_total = compose(X1, chi_total);
                }
                RatFunc cg = RatFunc(g.matrix().a()) / RatFunc(g.matrix().c());
                RatFunc Fg = RatFunc(g.matrix().b()) / RatFunc(g.matrix().c());
                if (!(Fg == RatFunc::var()))
                    throw domain_error("internal error: reduction to F = y failed");
                forig = embedded_into(f, coefficient_field(cg));
                rep.frame_conjugator = chi_total;
                rep.kernel.kind = KernelDescription::Kind::JFParametrized;
                rep.kernel.F = Poly::var();
                rep.image_constraint = "S(c; alpha), finite";
                StabResult st = s_of_c_alpha(cg, max_root_order);
                rep.stab = st;
                // lifts: (v x, w y) with v = c(w y)/c(y), v^2 = w
                for (auto& w : st.diagonal) {
                    if (w.is_one()) continue;
                    FieldPtr E = FieldElem::common_field(w.field(), coefficient_field(cg));
                    RatFunc cE = embedded_into(cg, E);
                    RatFunc ratio = cE.dilated(w.embedded_into(E)) / cE;
                    if (!ratio.is_constant()) continue;
                    FieldElem v = ratio.constant_value();
                    if (!(v * v == w.embedded_into(E))) continue;
                    JonqMap lift = JonqMap::multiplicative(RatFunc(v), MobiusK::scaling(w.embedded_into(E)));
                    add_generator(rep, embedded_into(forig, E),
                                  pull_back(embedded_into(chi_total, E), lift));
                }
                // lifts: (b x / y, alpha / y) with b = y c(alpha/y)/c(y), b^2 = alpha
                for (auto& entry : st.inversion) {
                    FieldPtr E = FieldElem::common_field(entry.alpha.field(), coefficient_field(cg));
                    RatFunc cE = embedded_into(cg, E);
                    FieldElem alpha = entry.alpha.embedded_into(E);
                    RatFunc ratio = RatFunc::var() * substitute(cE, MobiusK::inversion(alpha)) / cE;
                    if (!ratio.is_constant()) continue;
                    FieldElem bconst = ratio.constant_value();
                    if (!(bconst * bconst == alpha)) continue;
                    JonqMap lift(
                        ProjMatRF::from_ratfuncs(RatFunc(bconst), RatFunc(0), RatFunc(0), RatFunc::var()),
                        MobiusK::inversion(alpha));
                    add_generator(rep, embedded_into(forig, E),
                                  pull_back(embedded_into(chi_total, E), lift));
                }
                // J_y members
                RatFunc Yv = RatFunc::var();
                for (const RatFunc& cc : {RatFunc(0), RatFunc(1), Yv, Yv * Yv})
                    add_generator(rep, forig,
                                  pull_back(chi_total,
                                            JonqMap::fibered_involution_type(cc, Yv)));
            }
            break;
        }
        case MapType::Identity:
            throw domain_error("identity has no centralizer report");
    }
    add_generator(rep, f, f);
    return rep;
}

}  // namespace detail

// Structured description of C(phi) following the summary table.  Every listed
// generator is verified to commute with the input exactly.
inline CentralizerReport centralizer_report(const JonqMap& f, unsigned long max_root_order,
                                            long qbound) {
    if (f.is_identity()) throw domain_error("centralizer of the identity is the whole group");
    {
        auto [per, ord] = is_periodic(f);
        if (per) {
            CentralizerReport rep;
            rep.line = TableLine::None;
            rep.scope = Scope::PeriodicUnsupported;
            rep.notes.push_back("periodic map (order " + std::to_string(*ord) +
                                "); torsion centralizers are out of scope");
            return rep;
        }
    }
    if (f.in_j0()) return detail::report_j0(f, max_root_order, qbound);

    auto ord = mobius_order(f.base());
    if (ord) {
        // L6: C(phi) embeds in C(phi^k) with phi^k fibre-preserving
        JonqMap g = pow(f, static_cast<long>(*ord));
        CentralizerReport rep;
        rep.line = TableLine::L6;
        rep.scope = Scope::FullCentralizer;
        rep.image_constraint = "order-" + std::to_string(*ord) + " base; C(phi) inside C(phi^k)";
        rep.power_report =
            std::make_shared<CentralizerReport>(centralizer_report(g, max_root_order, qbound));
        rep.growth = rep.power_report->growth;
        rep.kernel.kind = KernelDescription::Kind::NotImplemented;
        rep.kernel.note = "see the power report";
        rep.notes.push_back("description bounds C(phi) by C(phi^k), k = " + std::to_string(*ord));
        detail::add_generator(rep, f, f);
        for (auto& g2 : rep.power_report->generators)
            if (commutes(g2, f)) detail::add_generator(rep, f, g2);
        return rep;
    }

    // infinite-order base: bring it to y + 1 or beta y first
    if (auto norm = detail::normalize_base(f)) {
        JonqMap fe = norm->extended ? embedded_into(f, norm->field) : f;
        JonqMap g = conjugate(norm->frame, fe);
        CentralizerReport rep = centralizer_report(g, max_root_order, qbound);
        // transport generators back to the original frame
        std::vector<JonqMap> gens;
        std::swap(gens, rep.generators);
        for (auto& h : gens) detail::add_generator(rep, fe, detail::pull_back(norm->frame, h));
        rep.frame_conjugator = rep.frame_conjugator
                                   ? compose(*rep.frame_conjugator, norm->frame)
                                   : norm->frame;
        rep.notes.push_back(norm->extended
                                ? "base normalized to translation/scaling over a quadratic extension"
                                : "base normalized to a translation or scaling");
        return rep;
    }

    CentralizerReport rep;
    const MobiusK& base = f.base();
    bool translation = base.c().is_zero() && base.a() == base.d();
    auto xp = detail::x_part_family(f);

    // bounded-growth escapes: constant multiplier / trivial x-part / telescoping
    if (xp.family == detail::XPart::Family::Multiplicative && xp.value.is_constant()) {
        rep.line = TableLine::None;
        rep.scope = Scope::CentralizerWithinJ;
        rep.kernel.kind = KernelDescription::Kind::Scalings;
        rep.growth = GrowthClass::Bounded;
        rep.notes.push_back(
            "bounded growth (constant multiplier over an infinite-order base); linearizable "
            "normal form, outside the linear-growth table");
        detail::add_generator(rep, f, f);
        return rep;
    }
    rep.kernel = kernel_pi2(f, qbound);
    if (rep.kernel.kind == KernelDescription::Kind::MultipleFibrations) {
        rep.line = TableLine::None;
        rep.scope = Scope::CentralizerWithinJ;
        rep.growth = GrowthClass::Bounded;
        rep.notes.push_back("conjugate to its base-only part: preserves several fibrations");
        detail::add_generator(rep, f, f);
        return rep;
    }
    rep.scope = Scope::CentralizerWithinJ;
    rep.growth = classify_growth_empirical(degree_sequence(f, 10));
    switch (xp.family) {
        case detail::XPart::Family::Additive: {
            rep.line = translation ? TableLine::L10 : TableLine::L7;
            rep.image_constraint = translation
                                       ? "subgroup of the translations of y containing the base"
                                       : "subgroup of the scalings of y containing the base";
            if (translation) rep.notes.push_back("metabelian: 0 -> K -> C(phi) -> im pi2 -> 1");
            detail::add_generator(rep, f, JonqMap::additive(RatFunc(1)));
            detail::add_generator(rep, f, JonqMap::additive(RatFunc(5)));
            break;
        }
        case detail::XPart::Family::Multiplicative: {
            bool invol = rep.kernel.kind == KernelDescription::Kind::ScalingsWithInvolution;
            rep.line = translation ? (invol ? TableLine::L12 : TableLine::L11) : TableLine::L8;
            rep.image_constraint = translation
                                       ? "subgroup of the translations of y containing the base"
                                       : "subgroup of the scalings of y containing the base";
            detail::add_generator(rep, f, JonqMap::multiplicative(RatFunc(2)));
            detail::add_generator(rep, f, JonqMap::multiplicative(RatFunc(-1)));
            if (invol) {
                JonqMap inv_gen(ProjMatRF::from_ratfuncs(RatFunc(0), *rep.kernel.involution_B,
                                                         RatFunc(1), RatFunc(0)),
                                MobiusK());
                detail::add_generator(rep, f, inv_gen);
            }
            break;
        }
        case detail::XPart::Family::General: {
            rep.line = translation ? TableLine::L13 : TableLine::L9;
            rep.image_constraint = translation
                                       ? "subgroup of the translations of y containing the base"
                                       : "subgroup of the scalings of y containing the base";
            if (rep.growth == GrowthClass::Bounded) {
                rep.line = TableLine::None;
                rep.notes.push_back("bounded growth: outside the linear-growth table");
                detail::add_generator(rep, f, f);
                return rep;
            }
            auto torsion = detail::torsion_kernel_search(f);
            rep.kernel.kind = torsion.empty() ? KernelDescription::Kind::Trivial
                                              : KernelDescription::Kind::FiniteTorsion;
            rep.kernel.elements = torsion;
            rep.kernel.note = "torsion kernel; bounded candidate search (no normal form)";
            for (auto& t : torsion) detail::add_generator(rep, f, t);
            break;
        }
    }
    detail::add_generator(rep, f, f);
    return rep;
}

}  // namespace jonq

#endif
