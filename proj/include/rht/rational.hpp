#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace rht {

// Exact scalar types used throughout. No floating point anywhere in the
// algebraic kernel; all comparisons are exact.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Parses a rational literal "p", "-p" or "p/q".
inline Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("empty rational literal");
    try {
        return Rational(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: '" + text + "'");
    }
}

inline std::string to_string(const Rational& q) {
    return q.str();
}

}  // namespace rht
