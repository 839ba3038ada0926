#pragma once

// Exact rational arithmetic for the urn identities. The recursions and path
// enumerations are exact statements; floating point would mask transcription
// errors, so they run on arbitrary-precision rationals.

#include <boost/multiprecision/cpp_int.hpp>

namespace rwalks {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational(long long num, long long den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

} // namespace rwalks
