#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "lpr/types.hpp"

namespace lpr {

// Exact fraction type for thresholds: arbitrary-precision, canonical form
// (positive denominator, lowest terms) maintained by the backend.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rational_floor(const Rational& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    BigInt quot = num / den;
    if (num < 0 && quot * den != num) --quot;
    return quot;
}

inline BigInt rational_ceil(const Rational& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    BigInt quot = num / den;
    if (num > 0 && quot * den != num) ++quot;
    return quot;
}

inline long long to_longlong(const BigInt& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw RangeError("value does not fit in 64 bits");
    return v.convert_to<long long>();
}

// "3" for integers, "17/6" otherwise.
inline std::string rational_str(const Rational& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace lpr
