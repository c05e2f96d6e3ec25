#ifndef JONQ_MAP_HPP
#define JONQ_MAP_HPP

#include <optional>
#include <variant>

#include "mobius.hpp"

namespace jonq {

// Projective 2x2 matrix [[a, b], [c, d]] over K[y]: content-free entries,
// leading coefficient of the first nonzero entry (scan a, b, c, d) equal 1.
// Equality is syntactic on this canonical form.
class ProjMatRF {
  public:
    ProjMatRF() : a_(1), b_(), c_(), d_(1) {}
    ProjMatRF(Poly a, Poly b, Poly c, Poly d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        if ((a_ * d_ - b_ * c_).is_zero()) throw domain_error("singular fibre matrix");
        normalize();
    }

    static ProjMatRF from_ratfuncs(const RatFunc& a, const RatFunc& b, const RatFunc& c,
                                   const RatFunc& d) {
        Poly l = lcm_poly(lcm_poly(a.den(), b.den()), lcm_poly(c.den(), d.den()));
        auto clear = [&](const RatFunc& r) { return r.num() * (l / r.den()); };
        return ProjMatRF(clear(a), clear(b), clear(c), clear(d));
    }

    const Poly& a() const { return a_; }
    const Poly& b() const { return b_; }
    const Poly& c() const { return c_; }
    const Poly& d() const { return d_; }

    Poly det() const { return a_ * d_ - b_ * c_; }
    Poly trace() const { return a_ + d_; }

    bool is_identity() const {
        return a_.is_one() && b_.is_zero() && c_.is_zero() && d_.is_one();
    }

    bool operator==(const ProjMatRF& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
    }
    bool operator!=(const ProjMatRF& o) const { return !(*this == o); }

    friend ProjMatRF operator*(const ProjMatRF& m, const ProjMatRF& n) {
        return ProjMatRF(m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
                         m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_);
    }

    ProjMatRF adjugate() const { return ProjMatRF(d_, -b_, -c_, a_); }

    // Entry-wise composition with a Moebius change of the fibre coordinate y.
    ProjMatRF substituted(const MobiusK& m) const {
        if (m.is_identity()) return *this;
        return from_ratfuncs(substitute(RatFunc(a_), m), substitute(RatFunc(b_), m),
                             substitute(RatFunc(c_), m), substitute(RatFunc(d_), m));
    }

  private:
    void normalize() {
        Poly g = gcd_poly(gcd_poly(a_, b_), gcd_poly(c_, d_));
        if (g.degree() > 0) {
            a_ = a_ / g;
            b_ = b_ / g;
            c_ = c_ / g;
            d_ = d_ / g;
        }
        for (Poly* p : {&a_, &b_, &c_, &d_}) {
            if (!p->is_zero()) {
                FieldElem inv = p->lc().inverse();
                a_ = a_.scaled_by(inv);
                b_ = b_.scaled_by(inv);
                c_ = c_.scaled_by(inv);
                d_ = d_.scaled_by(inv);
                break;
            }
        }
    }

    Poly a_, b_, c_, d_;
};

// Element of the Jonquieres group:
//   (x, y) -> ( (A(y) x + B(y)) / (C(y) x + D(y)) , base(y) ).
class JonqMap {
  public:
    JonqMap() = default;
    JonqMap(ProjMatRF m, MobiusK base) : m_(std::move(m)), base_(std::move(base)) {}

    static JonqMap identity() { return JonqMap(); }
    // (x + a(y), base)
    static JonqMap additive(const RatFunc& a, const MobiusK& base = MobiusK()) {
        return JonqMap(ProjMatRF::from_ratfuncs(RatFunc(1), a, RatFunc(0), RatFunc(1)), base);
    }
    // (b(y) x, base)
    static JonqMap multiplicative(const RatFunc& b, const MobiusK& base = MobiusK()) {
        return JonqMap(ProjMatRF::from_ratfuncs(b, RatFunc(0), RatFunc(0), RatFunc(1)), base);
    }
    // ((c(y) x + F(y)) / (x + c(y)), base)
    static JonqMap fibered_involution_type(const RatFunc& c, const RatFunc& F,
                                           const MobiusK& base = MobiusK()) {
        return JonqMap(ProjMatRF::from_ratfuncs(c, F, RatFunc(1), c), base);
    }
    static JonqMap base_only(const MobiusK& base) { return JonqMap(ProjMatRF(), base); }

    const ProjMatRF& matrix() const { return m_; }
    const MobiusK& base() const { return base_; }
    bool in_j0() const { return base_.is_identity(); }
    bool is_identity() const { return m_.is_identity() && base_.is_identity(); }

    bool operator==(const JonqMap& o) const { return m_ == o.m_ && base_ == o.base_; }
    bool operator!=(const JonqMap& o) const { return !(*this == o); }

  private:
    ProjMatRF m_;
    MobiusK base_;
};

// (f o g)(p) = f(g(p)); the twisted product M_f(base_g(y)) * M_g(y).
inline JonqMap compose(const JonqMap& f, const JonqMap& g) {
    return JonqMap(f.matrix().substituted(g.base()) * g.matrix(), f.base() * g.base());
}

inline JonqMap inverse(const JonqMap& f) {
    MobiusK nu_inv = f.base().inverse();
    return JonqMap(f.matrix().adjugate().substituted(nu_inv), nu_inv);
}

inline JonqMap pow(const JonqMap& f, long n) {
    if (n < 0) return pow(inverse(f), -n);
    JonqMap r, b = f;
    unsigned long k = static_cast<unsigned long>(n);
    while (k) {
        if (k & 1ul) r = compose(r, b);
        b = compose(b, b);
        k >>= 1ul;
    }
    return r;
}

// chi f chi^breve{-1}
inline JonqMap conjugate(const JonqMap& chi, const JonqMap& f) {
    return compose(compose(chi, f), inverse(chi));
}

// Baum-Bott index (tr M)^2 / det M for fibre-preserving maps.
inline RatFunc bb(const JonqMap& f) {
    if (!f.in_j0()) throw domain_error("Baum-Bott index requires a trivial base action");
    Poly t = f.matrix().trace();
    return RatFunc(t * t, f.matrix().det());
}

// Discriminant tr^2 - 4 det of the fibre matrix.
inline Poly fibre_discriminant(const JonqMap& f) {
    Poly t = f.matrix().trace();
    return t * t - f.matrix().det().scaled_by(FieldElem(4));
}

enum class MapType { Identity, TypeA, TypeB, TypeC };

struct TypeClass {
    MapType kind = MapType::Identity;
    std::optional<RatFunc> c;  // TypeC: x-coefficient after normalization
    std::optional<Poly> F;     // TypeC: squarefree
};

struct ExtensionRequired {
    FieldElem constant;  // re-run over Field::with_sqrt(constant)
};

struct NormalFormResult {
    TypeClass type;
    JonqMap canonical;
    std::variant<JonqMap, ExtensionRequired> conjugator;

    bool needs_extension() const { return std::holds_alternative<ExtensionRequired>(conjugator); }
    const JonqMap& chi() const { return std::get<JonqMap>(conjugator); }
};

namespace detail {

struct TypeCNormalization {
    RatFunc c;
    Poly F;
    JonqMap chi;
};

// Reduce a type-c fibre matrix to ((c x + F)/(x + c), y) with F squarefree,
// monic whenever the leading constant is a square in K.
inline TypeCNormalization typec_normalize(const JonqMap& f) {
    const ProjMatRF& M = f.matrix();
    if (M.c().is_zero()) throw domain_error("type-c matrix must have a nonzero lower-left entry");
    JonqMap chi1 = JonqMap::multiplicative(RatFunc(M.c()));
    JonqMap g1 = conjugate(chi1, f);
    // now the matrix is projectively [[A, B],[1, D]]
    RatFunc A(g1.matrix().a()), B(g1.matrix().b()), C(g1.matrix().c()), D(g1.matrix().d());
    RatFunc e = (D - A) / (RatFunc(2) * C);
    JonqMap chi2 = JonqMap::additive(e);
    JonqMap g2 = conjugate(chi2, g1);
    RatFunc c0 = RatFunc(g2.matrix().a()) / RatFunc(g2.matrix().c());
    RatFunc F0 = RatFunc(g2.matrix().b()) / RatFunc(g2.matrix().c());
    // F0 is a non-square; rescale by a square to reach a squarefree polynomial
    auto dn = squarefree_decomposition(F0.num());
    auto dd = squarefree_decomposition(F0.den());
    Poly w(1), Fsf(1);
    for (auto& [p, m] : dn.factors) {
        w = w * p.pow(static_cast<unsigned>(m / 2));
        if (m % 2) Fsf = Fsf * p;
    }
    for (auto& [p, m] : dd.factors) {
        w = w * p.pow(static_cast<unsigned>(m / 2));
        if (m % 2) Fsf = Fsf * p;
    }
    RatFunc scale(F0.den(), w);  // g = den/w, so g^2 F0 = lc * squarefree
    FieldElem lead = dn.leading;
    if (auto root = try_sqrt(lead)) {
        scale = scale / RatFunc(*root);
        lead = FieldElem(1);
    }
    Poly F = Fsf.scaled_by(lead);
    JonqMap chi3 = JonqMap::multiplicative(scale);
    RatFunc c = scale * c0;
    JonqMap chi = compose(chi3, compose(chi2, chi1));
    return {c, F, chi};
}

}  // namespace detail

// The paper's trichotomy on the discriminant: double root (a), distinct roots
// in C(y) (b), no root in C(y) (c).
inline TypeClass classify_type(const JonqMap& f) {
    if (!f.in_j0()) throw domain_error("classification requires a trivial base action");
    if (f.is_identity()) throw domain_error("identity has no type");
    Poly disc = fibre_discriminant(f);
    TypeClass out;
    if (disc.is_zero()) {
        out.kind = MapType::TypeA;
        return out;
    }
    if (is_square_in_Cy(RatFunc(disc))) {
        out.kind = MapType::TypeB;
        return out;
    }
    out.kind = MapType::TypeC;
    auto norm = detail::typec_normalize(f);
    out.c = norm.c;
    out.F = norm.F;
    return out;
}

inline NormalFormResult normal_form(const JonqMap& f) {
    if (!f.in_j0()) throw domain_error("normal form requires a trivial base action");
    if (f.is_identity()) throw domain_error("identity has no normal form");
    TypeClass tc = classify_type(f);
    NormalFormResult out;
    out.type = tc;
    switch (tc.kind) {
        case MapType::TypeA: {
            JonqMap g = f;
            JonqMap chi_jordan;
            if (!g.matrix().c().is_zero()) {
                // Jordan step: send the unique eigendirection to infinity
                RatFunc A(g.matrix().a()), C(g.matrix().c()), D(g.matrix().d());
                RatFunc lambda = (A + D) / RatFunc(2);
                ProjMatRF P = ProjMatRF::from_ratfuncs(RatFunc(0), RatFunc(1), C, lambda - A);
                chi_jordan = JonqMap(P, MobiusK());
                g = conjugate(chi_jordan, g);
            }
            // affine with equal diagonal: (x + a0(y), y)
            RatFunc a0 = RatFunc(g.matrix().b()) / RatFunc(g.matrix().a());
            JonqMap chi2 = JonqMap::multiplicative(a0.inverse());
            JonqMap chi = compose(chi2, chi_jordan);
            out.canonical = JonqMap::additive(RatFunc(1));
            out.conjugator = chi;
            break;
        }
        case MapType::TypeB: {
            auto [s, cc] = sqrt_in_Cy(RatFunc(fibre_discriminant(f)));
            if (!cc.is_one()) {
                out.canonical = f;
                out.conjugator = ExtensionRequired{cc};
                return out;
            }
            RatFunc A(f.matrix().a()), B(f.matrix().b()), C(f.matrix().c()), D(f.matrix().d());
            RatFunc tr = A + D;
            RatFunc lp = (tr + s) / RatFunc(2), lm = (tr - s) / RatFunc(2);
            RatFunc b = lp / lm;
            JonqMap chi;
            if (C.is_zero() && B.is_zero()) {
                b = A / D;
                if (cmp(b, b.inverse()) < 0) {
                    b = b.inverse();
                    chi = JonqMap(ProjMatRF(Poly(), Poly(1), Poly(1), Poly()), MobiusK());
                }
            } else {
                if (cmp(b, b.inverse()) < 0) {
                    std::swap(lp, lm);
                    b = b.inverse();
                }
                RatFunc v1a, v1b, v2a, v2b;  // eigenvector columns
                if (!C.is_zero()) {
                    v1a = lp - D;
                    v1b = C;
                    v2a = lm - D;
                    v2b = C;
                } else {
                    v1a = B;
                    v1b = lp - A;
                    v2a = B;
                    v2b = lm - A;
                }
                // chi = [columns v1 v2]^{-1}
                ProjMatRF P = ProjMatRF::from_ratfuncs(v2b, -v2a, -v1b, v1a);
                chi = JonqMap(P, MobiusK());
            }
            out.canonical = JonqMap::multiplicative(b);
            out.conjugator = chi;
            break;
        }
        case MapType::TypeC: {
            auto n = detail::typec_normalize(f);
            out.canonical = JonqMap::fibered_involution_type(n.c, RatFunc(n.F));
            out.conjugator = n.chi;
            break;
        }
        case MapType::Identity:
            break;
    }
    if (!out.needs_extension() && !(conjugate(out.chi(), f) == out.canonical))
        throw domain_error("internal error: conjugation identity failed");
    return out;
}

// Exact periodicity test; order when periodic.
inline std::pair<bool, std::optional<unsigned long>> is_periodic(const JonqMap& f) {
    if (f.is_identity()) return {true, 1};
    if (!f.in_j0()) {
        auto k = mobius_order(f.base());
        if (!k) return {false, std::nullopt};
        auto [per, ord] = is_periodic(pow(f, static_cast<long>(*k)));
        if (!per) return {false, std::nullopt};
        return {true, *k * *ord};
    }
    RatFunc index = bb(f);
    if (!index.is_constant()) return {false, std::nullopt};
    unsigned deg = 1;
    for (const Poly* p : {&f.matrix().a(), &f.matrix().b(), &f.matrix().c(), &f.matrix().d()})
        for (auto& coef : p->coeffs()) deg = std::max(deg, coef.field()->degree());
    unsigned long bound = max_root_of_unity_order(2ul * deg);
    JonqMap g = f;
    for (unsigned long k = 1; k <= bound; ++k) {
        if (g.is_identity()) return {true, k};
        g = compose(g, f);
    }
    return {false, std::nullopt};
}

// ---- field embeddings for whole maps (used when a computation needs a
// quadratic or larger cyclotomic extension) ----------------------------------

inline JonqMap embedded_into(const JonqMap& g, const FieldPtr& f) {
    ProjMatRF m(embedded_into(g.matrix().a(), f), embedded_into(g.matrix().b(), f),
                embedded_into(g.matrix().c(), f), embedded_into(g.matrix().d(), f));
    return JonqMap(std::move(m), embedded_into(g.base(), f));
}

inline int cmp(const ProjMatRF& m, const ProjMatRF& n) {
    if (int c = cmp(m.a(), n.a())) return c;
    if (int c = cmp(m.b(), n.b())) return c;
    if (int c = cmp(m.c(), n.c())) return c;
    return cmp(m.d(), n.d());
}

inline int cmp(const JonqMap& f, const JonqMap& g) {
    if (int c = cmp(f.base(), g.base())) return c;
    return cmp(f.matrix(), g.matrix());
}

}  // namespace jonq

#endif
