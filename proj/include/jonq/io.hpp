#ifndef JONQ_IO_HPP
#define JONQ_IO_HPP

#include <cctype>
#include <string>

#include "centralizer.hpp"
#include "growth.hpp"

namespace jonq {

struct ParseError : domain_error {
    ParseError(const std::string& msg, size_t position)
        : domain_error(msg + " (at position " + std::to_string(position) + ")"), pos(position) {}
    size_t pos;
};

// ---- printing ---------------------------------------------------------------

inline std::string to_string(const Rat& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

namespace detail {

inline bool is_atom(const std::string& s) {
    if (s.empty()) return false;
    size_t i = 0;
    if (s[0] == '-') i = 1;
    bool slash = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '/' && !slash) {
            slash = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

inline std::string qpoly_string(const QPoly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        Rat c = p.coeff(k);
        if (c == 0) continue;
        std::string term;
        Rat ac = rat_abs(c);
        if (k == 0) {
            term = to_string(ac);
        } else {
            if (ac != 1) term = to_string(ac) + "*";
            term += var;
            if (k > 1) term += "^" + std::to_string(k);
        }
        if (out.empty())
            out = (c < 0 ? "-" : "") + term;
        else
            out += (c < 0 ? "-" : "+") + term;
    }
    return out;
}

}  // namespace detail

inline std::string to_string(const FieldElem& e) {
    if (e.is_rational()) return to_string(e.to_rational());
    std::string u = detail::qpoly_string(e.ucoords(), "zeta");
    if (e.vcoords().is_zero()) return u;
    std::string v = detail::qpoly_string(e.vcoords(), "zeta");
    std::string vpart = v == "1" ? "sqrtc" : (detail::is_atom(v) ? v + "*sqrtc" : "(" + v + ")*sqrtc");
    if (e.ucoords().is_zero()) return vpart;
    return u + "+" + vpart;
}

namespace detail {

// one monomial c * var^k, with the coefficient parenthesized when needed
inline std::string coeff_term(const FieldElem& c, const std::string& var, int k, bool& negated) {
    negated = false;
    std::string cs = to_string(c);
    if (k == 0) {
        if (is_atom(cs) && cs[0] == '-') {
            negated = true;
            return cs.substr(1);
        }
        return is_atom(cs) ? cs : "(" + cs + ")";
    }
    std::string vs = var + (k > 1 ? "^" + std::to_string(k) : "");
    if (c.is_one()) return vs;
    if ((-c).is_one()) {
        negated = true;
        return vs;
    }
    if (is_atom(cs)) {
        if (cs[0] == '-') {
            negated = true;
            return cs.substr(1) + "*" + vs;
        }
        return cs + "*" + vs;
    }
    return "(" + cs + ")*" + vs;
}

}  // namespace detail

inline std::string to_string(const Poly& p, const std::string& var = "y") {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        FieldElem c = p.coeff(k);
        if (c.is_zero()) continue;
        bool neg = false;
        std::string term = detail::coeff_term(c, var, k, neg);
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? "-" : "+") + term;
    }
    return out;
}

namespace detail {

inline bool single_term(const Poly& p) {
    int n = 0;
    for (auto& c : p.coeffs())
        if (!c.is_zero()) ++n;
    return n == 1;
}

}  // namespace detail

inline std::string to_string(const RatFunc& r, const std::string& var = "y") {
    std::string n = to_string(r.num(), var);
    if (r.is_polynomial()) return n;
    std::string d = to_string(r.den(), var);
    bool nsimple = detail::single_term(r.num()) && n[0] != '-';
    // the denominator is monic: a single term is y or y^k and binds correctly
    bool dsimple = detail::single_term(r.den());
    return (nsimple ? n : "(" + n + ")") + "/" + (dsimple ? d : "(" + d + ")");
}

inline std::string to_string(const MobiusK& m) { return to_string(m.as_ratfunc(), "y"); }

inline std::string to_string(const JonqMap& f) {
    const ProjMatRF& M = f.matrix();
    auto affine_part = [&](const Poly& coef_x, const Poly& coef_1) {
        // coef_x * x + coef_1 as a string
        std::string out;
        if (!coef_x.is_zero()) {
            if (coef_x.is_one())
                out = "x";
            else if ((-coef_x).is_one())
                out = "-x";
            else if (coef_x.is_constant() || detail::single_term(coef_x))
                out = to_string(coef_x, "y") + "*x";
            else
                out = "(" + to_string(coef_x, "y") + ")*x";
        }
        if (!coef_1.is_zero()) {
            std::string c = to_string(coef_1, "y");
            if (out.empty())
                out = c;
            else
                out += (c[0] == '-') ? c : "+" + c;
        }
        if (out.empty()) out = "0";
        return out;
    };
    std::string xpart;
    if (M.c().is_zero() && M.d().is_one()) {
        xpart = affine_part(M.a(), M.b());
    } else {
        xpart = "(" + affine_part(M.a(), M.b()) + ")/(" + affine_part(M.c(), M.d()) + ")";
    }
    return "(" + xpart + ", " + to_string(f.base()) + ")";
}

inline std::string to_string(MapType t) {
    switch (t) {
        case MapType::Identity: return "identity";
        case MapType::TypeA: return "a";
        case MapType::TypeB: return "b";
        case MapType::TypeC: return "c";
    }
    return "?";
}

inline std::string to_string(GrowthClass g) {
    switch (g) {
        case GrowthClass::Bounded: return "Bounded";
        case GrowthClass::Linear: return "Linear";
        case GrowthClass::Undetermined: return "Undetermined";
    }
    return "?";
}

inline std::string to_string(TableLine l) {
    switch (l) {
        case TableLine::L1: return "l1";
        case TableLine::L2: return "l2";
        case TableLine::L3: return "l3";
        case TableLine::L4: return "l4";
        case TableLine::L5: return "l5";
        case TableLine::L6: return "l6";
        case TableLine::L7: return "l7";
        case TableLine::L8: return "l8";
        case TableLine::L9: return "l9";
        case TableLine::L10: return "l10";
        case TableLine::L11: return "l11";
        case TableLine::L12: return "l12";
        case TableLine::L13: return "l13";
        case TableLine::None: return "none";
    }
    return "?";
}

inline std::string to_string(Scope s) {
    switch (s) {
        case Scope::FullCentralizer: return "full-centralizer";
        case Scope::CentralizerWithinJ: return "centralizer-within-J";
        case Scope::PeriodicUnsupported: return "periodic-unsupported";
    }
    return "?";
}

inline std::string to_string(AbKind k) {
    switch (k) {
        case AbKind::Ja: return "Ja";
        case AbKind::Jm: return "Jm";
        case AbKind::JF: return "JF";
    }
    return "?";
}

inline std::string to_string(KernelDescription::Kind k) {
    using K = KernelDescription::Kind;
    switch (k) {
        case K::JaParametrized: return "Ja";
        case K::JmParametrized: return "Jm";
        case K::JFParametrized: return "JF";
        case K::Translations: return "translations";
        case K::Scalings: return "scalings";
        case K::ScalingsWithInvolution: return "scalings-with-involution";
        case K::FiniteTorsion: return "finite-torsion";
        case K::Trivial: return "trivial";
        case K::MultipleFibrations: return "multiple-fibrations";
        case K::NotImplemented: return "not-implemented";
    }
    return "?";
}

// ---- parsing ----------------------------------------------------------------

namespace detail {

// rational function in x over K(y); the parser's working value
struct BiRat {
    DensePoly<RatFunc> num, den;

    BiRat() : num(RatFunc(0)), den(RatFunc(1)) {}
    BiRat(DensePoly<RatFunc> n, DensePoly<RatFunc> d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw domain_error("division by zero in expression");
        reduce();
    }
    static BiRat constant(const RatFunc& r) { return BiRat(DensePoly<RatFunc>(r), DensePoly<RatFunc>(RatFunc(1))); }

    void reduce() {
        if (num.is_zero()) {
            den = DensePoly<RatFunc>(RatFunc(1));
            return;
        }
        auto g = gcd_poly(num, den);
        if (g.degree() > 0) {
            num = num / g;
            den = den / g;
        }
        RatFunc lc = den.lc();
        num = num.scaled_by(lc.inverse());
        den = den.scaled_by(lc.inverse());
    }

    friend BiRat operator+(const BiRat& a, const BiRat& b) {
        return BiRat(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend BiRat operator-(const BiRat& a, const BiRat& b) {
        return BiRat(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend BiRat operator*(const BiRat& a, const BiRat& b) {
        return BiRat(a.num * b.num, a.den * b.den);
    }
    friend BiRat operator/(const BiRat& a, const BiRat& b) {
        if (b.num.is_zero()) throw domain_error("division by zero in expression");
        return BiRat(a.num * b.den, a.den * b.num);
    }
    BiRat negated() const { return BiRat(-num, den); }
    BiRat power(long e) const {
        if (e < 0) {
            if (num.is_zero()) throw domain_error("zero to a negative power");
            return BiRat(den, num).power(-e);
        }
        BiRat r = constant(RatFunc(1)), b = *this;
        unsigned long k = static_cast<unsigned long>(e);
        while (k) {
            if (k & 1ul) r = r * b;
            b = b * b;
            k >>= 1ul;
        }
        return r;
    }

    bool is_yonly() const { return num.degree() <= 0 && den.degree() <= 0; }
    RatFunc as_ratfunc() const {
        if (!is_yonly()) throw domain_error("expression depends on x");
        return num.coeff(0) / den.coeff(0);
    }
};

class ExprParser {
  public:
    ExprParser(std::string src, FieldPtr field, bool allow_x)
        : src_(std::move(src)), field_(std::move(field)), allow_x_(allow_x) {}

    BiRat parse_full() {
        BiRat v = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
        return v;
    }

    BiRat parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            ++pos_;
            neg = true;
        } else if (peek() == '+') {
            ++pos_;
        }
        BiRat v = parse_term();
        if (neg) v = v.negated();
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                ++pos_;
                v = v + parse_term();
            } else if (c == '-') {
                ++pos_;
                v = v - parse_term();
            } else {
                return v;
            }
        }
    }

    size_t position() const { return pos_; }
    void expect(char c) {
        skip_ws();
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }
    bool try_consume(char c) {
        skip_ws();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    bool at_end() {
        skip_ws();
        return pos_ == src_.size();
    }

  private:
    BiRat parse_term() {
        BiRat v = parse_factor();
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                v = v * parse_factor();
            } else if (c == '/') {
                ++pos_;
                size_t at = pos_;
                try {
                    v = v / parse_factor();
                } catch (const domain_error& e) {
                    throw ParseError(e.what(), at);
                }
            } else {
                return v;
            }
        }
    }

    BiRat parse_factor() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return parse_factor().negated();
        }
        BiRat base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            bool neg = false;
            if (peek() == '-') {
                neg = true;
                ++pos_;
            }
            long e = parse_int();
            size_t at = pos_;
            try {
                return base.power(neg ? -e : e);
            } catch (const domain_error& err) {
                throw ParseError(err.what(), at);
            }
        }
        return base;
    }

    BiRat parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            BiRat v = parse_expr();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long n = parse_int();
            return BiRat::constant(RatFunc(FieldElem(Rat(n)).embedded_into(field_)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            std::string id;
            while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_])))
                id += src_[pos_++];
            if (id == "x") {
                if (!allow_x_) throw ParseError("'x' is not allowed here", start);
                return BiRat(DensePoly<RatFunc>::var(), DensePoly<RatFunc>(RatFunc(1)));
            }
            if (id == "y") return BiRat::constant(RatFunc::var());
            if (id == "zeta") return BiRat::constant(RatFunc(FieldElem::zeta(field_)));
            if (id == "sqrtc") {
                if (!field_->has_sqrt_layer())
                    throw ParseError("'sqrtc' needs a quadratic extension field", start);
                return BiRat::constant(RatFunc(FieldElem::sqrt_symbol(field_)));
            }
            throw ParseError("unknown identifier '" + id + "'", start);
        }
        throw ParseError("expected a value", pos_);
    }

    long parse_int() {
        skip_ws();
        size_t start = pos_;
        std::string digits;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            digits += src_[pos_++];
        if (digits.empty()) throw ParseError("expected an integer", start);
        if (digits.size() > 9) throw ParseError("integer literal too large", start);
        return std::stol(digits);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    std::string src_;
    FieldPtr field_;
    bool allow_x_;
    size_t pos_ = 0;
};

}  // namespace detail

inline RatFunc parse_ratfunc(const std::string& s, const FieldPtr& field = Field::rationals()) {
    detail::ExprParser p(s, field, false);
    return p.parse_full().as_ratfunc();
}

inline FieldElem parse_constant(const std::string& s, const FieldPtr& field = Field::rationals()) {
    RatFunc r = parse_ratfunc(s, field);
    if (!r.is_constant()) throw domain_error("expected a constant expression");
    return r.constant_value();
}

// Map literal `(<rat expr in x, y>, <moebius in y>)`; the x-component must
// have degree <= 1 in x after normalization.
inline JonqMap parse_map(const std::string& s, const FieldPtr& field = Field::rationals()) {
    detail::ExprParser p(s, field, true);
    p.expect('(');
    detail::BiRat xpart = p.parse_expr();
    p.expect(',');
    detail::BiRat ypart = p.parse_expr();
    p.expect(')');
    if (!p.at_end()) throw ParseError("unexpected trailing input", p.position());
    if (xpart.num.degree() > 1 || xpart.den.degree() > 1)
        throw ParseError("x-component has degree > 1 in x: not a Jonquieres map", 0);
    if (!ypart.is_yonly()) throw ParseError("the base component must not involve x", 0);
    RatFunc nu = ypart.as_ratfunc();
    if (nu.num().degree() > 1 || nu.den().degree() > 1 || nu.is_constant())
        throw ParseError("the base component must be a Moebius map of y", 0);
    auto coef = [](const Poly& q, int i) { return i <= q.degree() ? q.coeff(i) : FieldElem(0); };
    MobiusK base(coef(nu.num(), 1), coef(nu.num(), 0), coef(nu.den(), 1), coef(nu.den(), 0));
    RatFunc A = xpart.num.coeff(1), B = xpart.num.coeff(0);
    RatFunc C = xpart.den.coeff(1), D = xpart.den.coeff(0);
    try {
        return JonqMap(ProjMatRF::from_ratfuncs(A, B, C, D), base);
    } catch (const domain_error& e) {
        throw ParseError(std::string("degenerate x-component: ") + e.what(), 0);
    }
}

// Projective point literal `(a:b:c)` with constant entries.
inline std::array<FieldElem, 3> parse_point(const std::string& s,
                                            const FieldPtr& field = Field::rationals()) {
    detail::ExprParser p(s, field, false);
    p.expect('(');
    std::array<FieldElem, 3> out{FieldElem(0), FieldElem(0), FieldElem(0)};
    for (int i = 0; i < 3; ++i) {
        detail::BiRat v = p.parse_expr();
        RatFunc r = v.as_ratfunc();
        if (!r.is_constant()) throw ParseError("point coordinates must be constants", p.position());
        out[static_cast<size_t>(i)] = r.constant_value();
        if (i < 2) p.expect(':');
    }
    p.expect(')');
    return out;
}

}  // namespace jonq

#endif
