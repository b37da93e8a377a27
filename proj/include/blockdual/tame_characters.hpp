#pragma once

// Smooth characters of tame inertia in canonical form. A character of level f
// over a residue field of size q is a residue class x in Z/(q^f - 1); the
// direct-limit transition from level d to level f (d | f) multiplies x by
// (q^f - 1)/(q^d - 1), and Frobenius acts by x -> q x. Canonical form means
// minimal level, so the Frobenius orbit of a level-f character has size f.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

#include "blockdual/local_fields.hpp"

namespace blockdual {

struct TameChar {
    std::int64_t level = 1;
    Int residue = 0;
    ResidueDatum base;

    bool is_trivial() const { return level == 1 && residue == 0; }

    friend bool operator==(const TameChar& a, const TameChar& b) {
        return a.level == b.level && a.residue == b.residue && a.base == b.base;
    }
    // Total order on (level, residue); deterministic representatives rely on it.
    friend bool operator<(const TameChar& a, const TameChar& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.residue < b.residue;
    }
};

inline Int char_modulus(const ResidueDatum& base, std::int64_t level) {
    return pow_int(base.q, level) - 1;
}

inline TameChar trivial_char(const ResidueDatum& base) { return TameChar{1, 0, base}; }

// x * (q^F - 1)/(q^f - 1), the image of chi in the level-F character group.
inline Int embed(const TameChar& chi, std::int64_t ambient_level) {
    if (ambient_level < 1 || ambient_level % chi.level != 0)
        throw validation_error("embed: level does not divide the ambient level");
    Int transition = char_modulus(chi.base, ambient_level) / char_modulus(chi.base, chi.level);
    return chi.residue * transition;
}

// Unique primitive (d, y) with d | f and embed((d, y), f) = x. The admissible
// levels are closed under gcd, so scanning divisors in increasing order finds
// the minimal one.
inline TameChar canonicalize(std::int64_t level, Int residue, const ResidueDatum& base) {
    if (level < 1) throw validation_error("canonicalize: level must be positive");
    Int modulus = char_modulus(base, level);
    residue = mod_reduce(residue, modulus);
    for (std::int64_t d = 1; d <= level; ++d) {
        if (level % d != 0) continue;
        Int transition = modulus / char_modulus(base, d);
        if (residue % transition == 0) return TameChar{d, residue / transition, base};
    }
    return TameChar{level, residue, base};  // unreachable: d = level always divides
}

inline bool is_canonical(const TameChar& chi) {
    if (chi.level < 1 || chi.residue < 0 || chi.residue >= char_modulus(chi.base, chi.level))
        return false;
    return canonicalize(chi.level, chi.residue, chi.base).level == chi.level;
}

// Frobenius orbit of a canonical character under x -> q^g x, kept at the
// character's own level. g is the Frobenius power of the acting field.
struct FrobOrbit {
    TameChar rep;                      // minimum of the orbit under (level, residue)
    std::int64_t size = 1;
    std::int64_t frobenius_power = 1;  // the orbit is taken under x -> q^g x

    friend bool operator==(const FrobOrbit& a, const FrobOrbit& b) {
        return a.rep == b.rep && a.size == b.size && a.frobenius_power == b.frobenius_power;
    }
    friend bool operator<(const FrobOrbit& a, const FrobOrbit& b) {
        if (!(a.rep == b.rep)) return a.rep < b.rep;
        return a.size < b.size;
    }
};

// Residues of the orbit of chi under x -> q^g x, in orbit order starting at chi.
inline std::vector<Int> orbit_residues(const TameChar& chi, std::int64_t g) {
    Int modulus = char_modulus(chi.base, chi.level);
    Int step = mod_reduce(pow_int(chi.base.q, g), modulus);
    std::vector<Int> out{chi.residue};
    Int y = mod_reduce(chi.residue * step, modulus);
    while (y != chi.residue) {
        out.push_back(y);
        y = mod_reduce(y * step, modulus);
    }
    return out;
}

inline FrobOrbit frobenius_orbit(const TameChar& chi, std::int64_t g) {
    if (g < 1) throw validation_error("frobenius power must be positive");
    if (!is_canonical(chi)) throw validation_error("frobenius_orbit: character not canonical");
    std::vector<Int> elems = orbit_residues(chi, g);
    Int least = *std::min_element(elems.begin(), elems.end());
    return FrobOrbit{TameChar{chi.level, least, chi.base}, static_cast<std::int64_t>(elems.size()), g};
}

// Prime-to-ell component under the CRT splitting of Z/(q^f - 1); realizes
// restriction to the prime-to-ell inertia subgroup and is idempotent.
inline TameChar ell_regular_part(const TameChar& chi, const Int& ell) {
    if (!is_prime(ell)) throw validation_error("ell must be prime");
    if (ell == chi.base.p) throw validation_error("ell must differ from the residue characteristic");
    Int modulus = char_modulus(chi.base, chi.level);
    std::int64_t a = valuation(modulus, ell);
    if (a == 0) return canonicalize(chi.level, chi.residue, chi.base);
    Int ell_part = pow_int(ell, a);
    Int m = modulus / ell_part;
    if (m == 1) return trivial_char(chi.base);
    // y = x mod m, y = 0 mod ell^a
    Int y = mod_reduce(chi.residue, m) * ell_part % modulus * mod_inverse(ell_part, m) % modulus;
    return canonicalize(chi.level, y, chi.base);
}

inline bool is_ell_regular(const TameChar& chi, const Int& ell) {
    return ell_regular_part(chi, ell) == chi;
}

// Restriction along the tame-inertia inclusion of a totally ramified
// extension of degree e': multiplication by e' on Z/(q^f - 1).
inline TameChar restrict_totally_ramified(const TameChar& chi, std::int64_t e_prime) {
    if (e_prime < 1) throw validation_error("ramification degree must be positive");
    if (Int(e_prime) % chi.base.p == 0)
        throw validation_error("wild ramification: p divides the base-change degree");
    return canonicalize(chi.level, chi.residue * e_prime, chi.base);
}

// Pointwise product of characters, computed at the least common level.
inline TameChar char_product(const TameChar& a, const TameChar& b) {
    if (!(a.base == b.base)) throw validation_error("char_product: mismatched residue data");
    std::int64_t level = std::lcm(a.level, b.level);
    return canonicalize(level, embed(a, level) + embed(b, level), a.base);
}

// Frobenius shift chi -> q^power * chi at the character's own level.
inline TameChar frobenius_shift(const TameChar& chi, std::int64_t power) {
    Int modulus = char_modulus(chi.base, chi.level);
    Int step = mod_reduce(pow_int(chi.base.q, power), modulus);
    return TameChar{chi.level, mod_reduce(chi.residue * step, modulus), chi.base};
}

}  // namespace blockdual
