#pragma once

// Exact rational arithmetic. A thin layer over GMP's mpq_class; everything
// that must be bit-stable in reports goes through the canonical string form
// produced here ("a" or "a/b", b > 0, reduced).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fflab {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// q^e for integer e of either sign.
inline Rational rational_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0 && e < 0) throw std::invalid_argument("rational_pow: 0^negative");
    Rational acc(1), b = base;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    while (k) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    if (e < 0) return Rational(1) / acc;
    return acc;
}

inline Rational pow_of(long base, long e) { return rational_pow(Rational(base), e); }

inline double to_double(const Rational& r) { return r.get_d(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string rational_str(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Accepts "a", "a/b", and an optional trailing "+eps" marker handled by the
// exponent layer; here only the plain forms.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rational: empty string");
    try {
        Rational r(s);
        r.canonicalize();
        if (r.get_den() == 0) throw std::invalid_argument("rational: zero denominator");
        return r;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (...) {
        throw std::invalid_argument("rational: cannot parse '" + s + "'");
    }
}

}  // namespace fflab
