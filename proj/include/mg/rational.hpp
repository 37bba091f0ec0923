#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace mg {

// Exact rational scalar used everywhere in the library. No floating point
// enters any computation; identities that hold exactly are tested with
// zero tolerance.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p/q" or "p" (decimal digits, optional leading '-').
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + s + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    return q;
}

inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Largest d > 0 with a/d, b/d integral; used to pick a uniform
// subdivision unit for a set of rational edge lengths.
inline Rat rat_gcd(const Rat& a, const Rat& b) {
    if (a == 0) return rat_abs(b);
    if (b == 0) return rat_abs(a);
    Int num, den;
    mpz_gcd(num.get_mpz_t(), Int(a.get_num() * b.get_den()).get_mpz_t(),
            Int(b.get_num() * a.get_den()).get_mpz_t());
    den = a.get_den() * b.get_den();
    Rat g(num, den);
    g.canonicalize();
    return g;
}

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer out of long range");
    return z.get_si();
}

// Exact integer quotient a/b; throws if b does not divide a.
inline Int exact_div(const Rat& a, const Rat& b) {
    Rat q = a / b;
    if (q.get_den() != 1) throw std::logic_error("exact_div: not divisible");
    return q.get_num();
}

}  // namespace mg
