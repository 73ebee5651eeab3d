#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace geonoether {

// Exact rational scalar used by the expression engine's constant folding and
// by the determining-equation solver.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational_pow(const Rational& base, long long e) {
    Rational r = 1;
    Rational b = base;
    long long n = e < 0 ? -e : e;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    if (e < 0) r = Rational(1) / r;
    return r;
}

inline std::string rational_str(const Rational& r) {
    return r.str();
}

}  // namespace geonoether
