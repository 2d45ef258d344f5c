#pragma once

#include <gmpxx.h>

#include <string>

#include "supergeo/errors.hpp"

namespace supergeo {

// All coefficient arithmetic is exact.  GMP's mpq_class is canonical
// (normalized sign, reduced fraction), so == is structural equality.
using Rational = mpq_class;

inline std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

// mpq_class(p, q) does not reduce; this does.  Use it whenever numerator and
// denominator are built separately.
inline Rational make_rational(long p, long q) {
    if (q == 0) throw ParseError("make_rational: zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p", "p/q" with arbitrary-precision integers.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    for (char c : text) {
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw ParseError("bad character in rational literal: '" + text + "'");
    }
    try {
        Rational r(text);
        if (r.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("unparsable rational literal: '" + text + "'");
    }
}

}  // namespace supergeo
