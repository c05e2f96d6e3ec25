#ifndef JONQ_GROWTH_HPP
#define JONQ_GROWTH_HPP

#include <vector>

#include "map.hpp"
#include "ternary.hpp"

namespace jonq {

// (phi0 : phi1 : phi2) of equal degree with gcd_content 1.
struct HomogeneousTriple {
    TernaryForm phi0, phi1, phi2;
    int degree = 1;
};

enum class GrowthClass { Bounded, Linear, Undetermined };

struct GrowthResult {
    GrowthClass cls = GrowthClass::Undetermined;
    std::optional<RatFunc> bb_witness;  // non-constant exactly when cls == Linear
};

// Homogenization to P^2 in the chart z = 1, with the content removed.
inline HomogeneousTriple homogenize(const JonqMap& f) {
    const ProjMatRF& M = f.matrix();
    int m = 0;
    for (const Poly* p : {&M.a(), &M.b(), &M.c(), &M.d()}) m = std::max(m, p->degree());
    TernaryForm X = TernaryForm::monomial(FieldElem(1), 1, 0, 0);
    TernaryForm Z = TernaryForm::monomial(FieldElem(1), 0, 0, 1);
    auto lift = [&](const Poly& p) { return homogenize_in_yz(p, m); };
    TernaryForm num_x = lift(M.a()) * X + lift(M.b()) * Z;
    TernaryForm den_x = lift(M.c()) * X + lift(M.d()) * Z;
    const MobiusK& nu = f.base();
    TernaryForm num_y = TernaryForm::monomial(nu.a(), 0, 1, 0) + TernaryForm::monomial(nu.b(), 0, 0, 1);
    TernaryForm den_y = TernaryForm::monomial(nu.c(), 0, 1, 0) + TernaryForm::monomial(nu.d(), 0, 0, 1);
    TernaryForm p0 = num_x * den_y;
    TernaryForm p1 = num_y * den_x;
    TernaryForm p2 = den_x * den_y;
    TernaryForm content = gcd_content({p0, p1, p2});
    if (content.degree() > 0) {
        p0 = p0.exact_divide(content);
        p1 = p1.exact_divide(content);
        p2 = p2.exact_divide(content);
    }
    // canonical scaling: lex-leading coefficient of phi2 equal 1
    FieldElem s = p2.coeffs().rbegin()->second.inverse();
    if (!s.is_one()) {
        p0 = p0.scaled_by(s);
        p1 = p1.scaled_by(s);
        p2 = p2.scaled_by(s);
    }
    return {p0, p1, p2, p0.degree()};
}

inline int deg_p2(const JonqMap& f) { return homogenize(f).degree; }

// [deg f, deg f^2, ..., deg f^N]
inline std::vector<int> degree_sequence(const JonqMap& f, int N) {
    if (N < 1) throw domain_error("degree sequence needs N >= 1");
    std::vector<int> out;
    out.reserve(static_cast<size_t>(N));
    JonqMap g = f;
    for (int n = 1; n <= N; ++n) {
        out.push_back(deg_p2(g));
        if (n < N) g = compose(g, f);
    }
    return out;
}

// Verdict from the tail of an exact degree sequence (last ceil(N/2) terms).
inline GrowthClass classify_growth_empirical(const std::vector<int>& seq) {
    if (seq.size() < 6) throw domain_error("degree sequence too short to classify");
    size_t start = seq.size() - (seq.size() + 1) / 2;
    bool constant = true;
    for (size_t i = start + 1; i < seq.size(); ++i)
        if (seq[i] != seq[start]) constant = false;
    if (constant) return GrowthClass::Bounded;
    int d = seq[start + 1] - seq[start];
    if (d > 0) {
        bool arithmetic = true;
        for (size_t i = start + 1; i + 1 < seq.size(); ++i)
            if (seq[i + 1] - seq[i] != d) arithmetic = false;
        if (arithmetic) return GrowthClass::Linear;
    }
    return GrowthClass::Undetermined;
}

// Baum-Bott growth criterion: linear growth iff BB lies outside the constants.
// Requires a finite-order base (the index is taken on the power lying in J0).
inline GrowthResult classify_growth_bb(const JonqMap& f) {
    auto k = mobius_order(f.base());
    if (!k)
        throw inapplicable_criterion(
            "Baum-Bott criterion needs a finite-order base; use the empirical classifier");
    JonqMap g = *k == 1 ? f : pow(f, static_cast<long>(*k));
    RatFunc w = bb(g);
    GrowthResult out;
    out.bb_witness = w;
    out.cls = w.is_constant() ? GrowthClass::Bounded : GrowthClass::Linear;
    return out;
}

inline bool is_indeterminacy_point(const HomogeneousTriple& t, const FieldElem& x,
                                   const FieldElem& y, const FieldElem& z) {
    if (x.is_zero() && y.is_zero() && z.is_zero())
        throw domain_error("(0:0:0) is not a projective point");
    return t.phi0.evaluate(x, y, z).is_zero() && t.phi1.evaluate(x, y, z).is_zero() &&
           t.phi2.evaluate(x, y, z).is_zero();
}

inline TernaryForm jacobian_det(const HomogeneousTriple& t) {
    return jacobian_det(t.phi0, t.phi1, t.phi2);
}

// y-values of degenerate fibres: squarefree factors of det M, monic.
inline std::vector<Poly> candidate_exceptional_fibers(const JonqMap& f) {
    Poly det = f.matrix().det();
    std::vector<Poly> out;
    for (auto& [p, m] : squarefree_decomposition(det).factors) out.push_back(p);
    return out;
}

}  // namespace jonq

#endif
