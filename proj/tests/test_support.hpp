#pragma once

// Deterministic random generators shared by the property tests.

#include <random>
#include <vector>

#include "blockdual/parameters.hpp"

namespace testgen {

using namespace blockdual;

inline std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Int pick_int(std::mt19937_64& rng, const Int& bound) {
    // bound is small in every test that uses this
    std::int64_t b = static_cast<std::int64_t>(bound);
    return Int(pick(rng, 0, b - 1));
}

inline TameChar random_char(std::mt19937_64& rng, const ResidueDatum& base, std::int64_t max_level) {
    std::int64_t level = pick(rng, 1, max_level);
    return canonicalize(level, pick_int(rng, char_modulus(base, level)), base);
}

// Random valid parameter on a single factor of the given rank and shape.
inline InertialParam random_param(std::mt19937_64& rng, const GLTypeGroup& group,
                                  const InertiaKind& kind = InertiaKind::full()) {
    std::vector<std::vector<WeightedOrbit>> raw(group.factors.size());
    for (std::size_t i = 0; i < group.factors.size(); ++i) {
        const GLFactor& factor = group.factors[i];
        std::map<TameChar, std::int64_t> mults;
        std::int64_t remaining = factor.rank;
        while (remaining > 0) {
            TameChar chi = random_char(rng, group.base, factor.rank);
            if (kind.tag == InertiaTag::prime_to_ell) chi = ell_regular_part(chi, kind.ell);
            FrobOrbit orbit = frobenius_orbit(chi, factor.ext.f);
            if (orbit.size > remaining) continue;
            std::int64_t mult = pick(rng, 1, remaining / orbit.size);
            mults[orbit.rep] += mult;
            remaining -= mult * orbit.size;
        }
        for (const auto& [rep, mult] : mults)
            raw[i].push_back(WeightedOrbit{FrobOrbit{rep, 1, 1}, mult});
    }
    return validate(group, kind, raw);
}

}  // namespace testgen
