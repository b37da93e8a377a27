#pragma once

// Residue data and relative extension shapes of non-archimedean local fields.
// An extension is tracked only through its ramification index e and residue
// degree f; every computation downstream depends on (e, f, q, p, ell) alone.

#include <compare>
#include <cstdint>
#include <numeric>

#include "blockdual/bigint.hpp"
#include "blockdual/errors.hpp"

namespace blockdual {

// Residue field of cardinality q = p^a.
struct ResidueDatum {
    Int p = 2;
    std::int64_t a = 1;
    Int q = 2;

    friend bool operator==(const ResidueDatum&, const ResidueDatum&) = default;
};

inline ResidueDatum residue_datum_from_pa(const Int& p, std::int64_t a) {
    if (!is_prime(p)) throw validation_error("residue characteristic must be prime");
    if (a < 1) throw validation_error("residue exponent must be positive");
    return ResidueDatum{p, a, pow_int(p, a)};
}

// Recover (p, a) from q: find the largest a with q a perfect a-th power of a
// prime. Roots are located by binary search, so large prime powers work too.
inline ResidueDatum residue_datum_from_q(const Int& q) {
    if (q < 2) throw validation_error("residue cardinality must be at least 2");
    std::int64_t bits = static_cast<std::int64_t>(boost::multiprecision::msb(q)) + 1;
    for (std::int64_t a = bits; a >= 1; --a) {
        Int lo = 2, hi = (Int(1) << ((bits + a - 1) / a)) + 1;
        while (lo < hi) {
            Int mid = (lo + hi) / 2;
            if (pow_int(mid, a) < q)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (pow_int(lo, a) == q && is_prime(lo)) return ResidueDatum{lo, a, q};
    }
    throw validation_error("residue cardinality is not a prime power");
}

// Shape (e, f) of a finite separable extension: ramification index and
// residue degree. Composition along a tower multiplies componentwise.
struct ExtShape {
    std::int64_t e = 1;
    std::int64_t f = 1;

    std::int64_t degree() const { return e * f; }
    bool is_trivial() const { return e == 1 && f == 1; }
    bool is_tame(const Int& p) const { return Int(e) % p != 0; }

    friend bool operator==(const ExtShape&, const ExtShape&) = default;
    friend auto operator<=>(const ExtShape&, const ExtShape&) = default;
};

inline ExtShape make_ext_shape(std::int64_t e, std::int64_t f) {
    if (e < 1 || f < 1) throw validation_error("extension shape must have positive e and f");
    return ExtShape{e, f};
}

inline ExtShape compose_extensions(const ExtShape& outer, const ExtShape& inner) {
    return ExtShape{outer.e * inner.e, outer.f * inner.f};
}

// Choice of the closed normal subgroup K of inertia the parameters live on:
// all of inertia, its maximal prime-to-ell closed subgroup, or wild inertia.
enum class InertiaTag { full_inertia, prime_to_ell, wild };

struct InertiaKind {
    InertiaTag tag = InertiaTag::full_inertia;
    Int ell = 0;  // set only for prime_to_ell

    static InertiaKind full() { return InertiaKind{InertiaTag::full_inertia, 0}; }
    static InertiaKind prime_to(const Int& ell) {
        if (!is_prime(ell)) throw validation_error("ell must be prime");
        return InertiaKind{InertiaTag::prime_to_ell, ell};
    }
    static InertiaKind wild_inertia() { return InertiaKind{InertiaTag::wild, 0}; }

    friend bool operator==(const InertiaKind&, const InertiaKind&) = default;
};

// Shape of the intermediate field F'' with W_{F''} = W_{F'} K. F'/F'' is
// totally ramified and F''/F divides ext componentwise:
//   K = I          -> (1, f')                 (maximal unramified part)
//   K = I^(ell)    -> (ell^{v_ell(e')}, f')
//   K = P (wild)   -> (e' / p^{v_p(e')}, f')  (maximal tame part)
inline ExtShape intermediate_field(const ExtShape& ext, const InertiaKind& kind, const Int& p) {
    switch (kind.tag) {
        case InertiaTag::full_inertia:
            return ExtShape{1, ext.f};
        case InertiaTag::prime_to_ell: {
            if (kind.ell == p) throw validation_error("ell must differ from the residue characteristic");
            std::int64_t part = 1, e = ext.e;
            while (Int(e) % kind.ell == 0) {
                e = static_cast<std::int64_t>(Int(e) / kind.ell);
                part = static_cast<std::int64_t>(Int(part) * kind.ell);
            }
            return ExtShape{part, ext.f};
        }
        case InertiaTag::wild: {
            std::int64_t e = ext.e;
            while (Int(e) % p == 0) e = static_cast<std::int64_t>(Int(e) / p);
            return ExtShape{e, ext.f};
        }
    }
    throw validation_error("unknown inertia kind");
}

}  // namespace blockdual
