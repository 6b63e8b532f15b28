#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace plift {

/// Arbitrary-precision integers and rationals. Rationals are kept canonical
/// (reduced, positive denominator) by the backend, so equality is structural.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(Rational const& r) {
    return r.convert_to<double>();
}

inline Rational rational_from_double(double x) {
    // doubles are dyadic rationals, so this conversion is exact
    return Rational(x);
}

inline Integer numerator(Rational const& r) {
    return boost::multiprecision::numerator(r);
}
inline Integer denominator(Rational const& r) {
    return boost::multiprecision::denominator(r);
}

inline bool is_integer(Rational const& r) {
    return denominator(r) == 1;
}

inline Rational rat_pow(Rational const& r, unsigned k) {
    Rational result(1);
    Rational base = r;
    while (k) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

/// Renders `r` as "n" or "n/d".
inline std::string rational_to_string(Rational const& r) {
    std::string s = numerator(r).str();
    if (!is_integer(r)) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace plift
