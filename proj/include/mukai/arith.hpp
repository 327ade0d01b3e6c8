#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace mukai {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/** Sign of an exact integer: -1, 0, or +1. */
inline int sign_of(const Int& x) {
    return x < 0 ? -1 : (x > 0 ? 1 : 0);
}

inline Int gcd3(const Int& a, const Int& b, const Int& c) {
    using boost::multiprecision::gcd;
    return gcd(gcd(a, b), c);
}

/** Exact binomial coefficient C(n, k); zero outside 0 <= k <= n. */
inline Int binomial(const Int& n, const Int& k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Int kk = k;
    if (n - k < kk) kk = n - k;
    Int result = 1;
    // dividing by i after multiplying i consecutive factors is always exact
    for (Int i = 1; i <= kk; ++i) {
        result *= n - kk + i;
        result /= i;
    }
    return result;
}

/** Quotient a/b that must be exact; a remainder signals an internal bug. */
inline Int exact_quotient(const Int& a, const Int& b, const char* where) {
    if (a == 0) return 0;
    if (b == 0 || a % b != 0)
        throw std::logic_error(std::string(where) + ": division is not exact");
    return a / b;
}

/** Renders a rational as "p" or "p/q" in lowest terms. */
inline std::string rat_string(const Rat& x) {
    const Int num = boost::multiprecision::numerator(x);
    const Int den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace mukai
