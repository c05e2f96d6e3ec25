#ifndef JONQ_RATIONAL_HPP
#define JONQ_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jonq {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by classify_growth_bb when the base has infinite order.
struct inapplicable_criterion : domain_error {
    using domain_error::domain_error;
};

struct field_mismatch : domain_error {
    using domain_error::domain_error;
};

inline Int int_pow(Int b, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

inline std::optional<Int> int_sqrt_exact(const Int& n) {
    if (n < 0) return std::nullopt;
    Int r = sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// Exact square root of a rational, if it exists in Q.
inline std::optional<Rat> rat_sqrt_exact(const Rat& q) {
    if (q < 0) return std::nullopt;
    auto sn = int_sqrt_exact(numerator(q));
    if (!sn) return std::nullopt;
    auto sd = int_sqrt_exact(denominator(q));
    if (!sd) return std::nullopt;
    return Rat(*sn, *sd);
}

inline Rat rat_pow(const Rat& b, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (b == 0) throw domain_error("division by zero");
        return Rat(1) / rat_pow(b, -e);
    }
    Rat r = 1, x = b;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1ul) r *= x;
        x *= x;
        k >>= 1ul;
    }
    return r;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline int cmp(const Rat& a, const Rat& b) { return a < b ? -1 : (b < a ? 1 : 0); }

// Trial-division factorisation.  Coefficients at desk scale are small; a
// leftover composite cofactor makes the caller bail out conservatively.
struct IntFactorisation {
    std::vector<std::pair<Int, unsigned>> primes;
    bool complete = true;
};

inline IntFactorisation factor_int(Int n, const Int& trial_bound = Int(1000000)) {
    IntFactorisation out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    auto push = [&](const Int& p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.primes.push_back({p, e});
    };
    push(Int(2));
    Int p = 3;
    while (p * p <= n && p <= trial_bound) {
        push(p);
        p += 2;
    }
    if (n > 1) {
        if (n <= trial_bound * trial_bound) {
            out.primes.push_back({n, 1});  // remaining cofactor is prime
        } else {
            out.complete = false;
            out.primes.push_back({n, 1});
        }
    }
    return out;
}

// q = s * t^2 with s a squarefree integer carrying the sign.
// Fails (nullopt) when the factorisation gives up.
inline std::optional<std::pair<Int, Rat>> rat_squarefree_part(const Rat& q) {
    if (q == 0) return std::make_pair(Int(0), Rat(0));
    Int m = numerator(q) * denominator(q);
    bool neg = m < 0;
    if (neg) m = -m;
    auto f = factor_int(m);
    if (!f.complete) return std::nullopt;
    Int s = neg ? -1 : 1;
    Int t_num = 1;
    for (auto& [p, e] : f.primes) {
        if (e & 1u) s *= p;
        t_num *= int_pow(p, e / 2);
    }
    // q = s * (t_num / denominator(q))^2
    Rat t(t_num, denominator(q));
    return std::make_pair(s, t);
}

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    unsigned long m = n;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// Largest m with euler_phi(m) <= d; orders of roots of unity in a degree-d
// extension of Q are bounded by this.
inline unsigned long max_root_of_unity_order(unsigned long d) {
    unsigned long best = 1;
    for (unsigned long m = 1; m <= 2 * d * d + 4; ++m)
        if (euler_phi(m) <= d) best = m;
    return best;
}

}  // namespace jonq

#endif
