#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "itkit/errors.hpp"

namespace itkit {

using Rational = mpq_class;
using BigInt = mpz_class;

// Builds num/den in canonical form. mpq_class does not canonicalize on its
// own when constructed from a numerator/denominator pair.
inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw Error("rational with zero denominator");
    Rational q(num);
    q /= Rational(den);
    return q;
}

// Accepts "p" or "p/q" with optional leading '-'. Decimals are rejected so
// that exactness is preserved end to end.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational");
    std::size_t slash = std::string::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '/') {
            if (slash != std::string::npos)
                throw ParseError("malformed rational '" + text + "'");
            slash = i;
            continue;
        }
        if (ch == '-' && (i == 0 || i == slash + 1)) continue;
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw ParseError("malformed rational '" + text + "' (use p or p/q)");
    }
    std::string num = slash == std::string::npos ? text : text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (num.empty() || num == "-" || den.empty() || den == "-")
        throw ParseError("malformed rational '" + text + "'");
    BigInt n, d;
    if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0)
        throw ParseError("malformed rational '" + text + "'");
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    Rational q(n);
    q /= Rational(d);
    return q;
}

// Canonical "p" or "p/q".
inline std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

} // namespace itkit
