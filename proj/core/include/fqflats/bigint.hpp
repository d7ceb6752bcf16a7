#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "fqflats/errors.hpp"

namespace fqflats {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(BigInt base, long long exp) {
    if (exp < 0) fail(errc::invalid_parameters, "negative exponent");
    BigInt r = 1;
    while (exp > 0) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline long long to_int64_checked(const BigInt& v) {
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
        fail(errc::too_large, "value does not fit in 64 bits: " + v.str());
    return static_cast<long long>(v);
}

} // namespace fqflats
