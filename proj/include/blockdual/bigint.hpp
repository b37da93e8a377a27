#pragma once

// Arbitrary-precision integer helpers. Everything downstream works with
// residues modulo q^f - 1, which overflows 64 bits already at modest q and f.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace blockdual {

using Int = boost::multiprecision::cpp_int;

inline Int pow_int(Int base, std::int64_t exp) {
    if (exp < 0) throw std::invalid_argument("pow_int: negative exponent");
    Int r = 1;
    while (exp > 0) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline Int mod_reduce(Int x, const Int& m) {
    x %= m;
    if (x < 0) x += m;
    return x;
}

// Largest v with p^v | n (n != 0).
inline std::int64_t valuation(Int n, const Int& p) {
    std::int64_t v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == sp) return true;
        if (n % sp == 0) return false;
    }
    return boost::multiprecision::miller_rabin_test(n, 32);
}

// Extended Euclid: returns g = gcd(a, b) and x with a*x = g (mod b).
inline Int mod_inverse(const Int& a, const Int& m) {
    Int old_r = mod_reduce(a, m), r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::invalid_argument("mod_inverse: not coprime");
    return mod_reduce(old_s, m);
}

}  // namespace blockdual
