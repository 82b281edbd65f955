// Exact coefficient arithmetic: arbitrary-precision integers and rationals.

#ifndef NOVIK_NUMERIC_HPP
#define NOVIK_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

#include "novik/errors.hpp"

namespace novik {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Int& z) { return z.str(); }

// Canonical rational rendering: "p" when integral, "p/q" otherwise.
inline std::string to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p" or "p/q" with optional sign. Rejects q = 0 and garbage.
inline Rat parse_rational(const std::string& text) {
    std::string s = text;
    auto bad = [&]() -> ParseError {
        return ParseError("not a rational literal: '" + text + "'");
    };
    if (s.empty()) throw bad();
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw bad();
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

// Coefficient-domain hooks shared by Series<Int> and Series<Rat>.

inline bool coeff_is_unit(const Int& c) { return c == 1 || c == -1; }
inline bool coeff_is_unit(const Rat& c) { return c != 0; }

inline const char* domain_name(const Int&) { return "Z"; }
inline const char* domain_name(const Rat&) { return "Q"; }

// Exact division in the coefficient domain; returns false when the quotient
// does not exist (integers only).
inline bool coeff_divide(const Int& num, const Int& den, Int& out) {
    if (den == 0) return false;
    if (num % den != 0) return false;
    out = num / den;
    return true;
}
inline bool coeff_divide(const Rat& num, const Rat& den, Rat& out) {
    if (den == 0) return false;
    out = num / den;
    return true;
}

inline Rat coeff_to_rational(const Int& c) { return Rat(c); }
inline Rat coeff_to_rational(const Rat& c) { return c; }

// Checked narrowing from a rational literal into the coefficient domain.
template <class C>
C coeff_from_rational(const Rat& r);

template <>
inline Int coeff_from_rational<Int>(const Rat& r) {
    if (denominator(r) != 1)
        throw ParseError("coefficient " + to_string(r) +
                         " is not an integer; use --coeffs rat");
    return numerator(r);
}

template <>
inline Rat coeff_from_rational<Rat>(const Rat& r) {
    return r;
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;  // truncated
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Fractional part in [0, 1).
inline Rat mod_one(const Rat& r) {
    Int f = floor_div(numerator(r), denominator(r));
    return r - Rat(f);
}

}  // namespace novik

#endif  // NOVIK_NUMERIC_HPP
