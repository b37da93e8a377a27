#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "blockdual/tame_characters.hpp"
#include "test_support.hpp"

using namespace blockdual;

namespace {
const ResidueDatum q2 = residue_datum_from_q(2);
const ResidueDatum q3 = residue_datum_from_q(3);
const ResidueDatum q5 = residue_datum_from_q(5);
}  // namespace

TEST_CASE("embed") {
    CHECK(embed(TameChar{1, 1, q3}, 2) == 4);  // 1 * (8/2)
    CHECK(embed(trivial_char(q5), 3) == 0);
    CHECK(embed(TameChar{2, 1, q2}, 4) == 5);  // 1 * (15/3)
    CHECK_THROWS_AS(embed(TameChar{2, 1, q2}, 3), validation_error);
}

TEST_CASE("canonicalize") {
    CHECK(canonicalize(4, 5, q2) == TameChar{2, 1, q2});
    CHECK(canonicalize(2, 8, q5) == TameChar{2, 8, q5});  // 8 not divisible by 24/4 = 6
    CHECK(canonicalize(3, 0, q5) == trivial_char(q5));
    CHECK(canonicalize(2, 4, q3) == TameChar{1, 1, q3});
    CHECK(is_canonical(TameChar{2, 8, q5}));
    CHECK_FALSE(is_canonical(TameChar{2, 6, q5}));  // 6 = 1 * (24/4), lives at level 1
}

TEST_CASE("canonicalize/embed roundtrip") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const ResidueDatum& base = (trial % 2) ? q3 : q5;
        TameChar chi = testgen::random_char(rng, base, 4);
        std::int64_t ambient = chi.level * testgen::pick(rng, 1, 3);
        CHECK(canonicalize(ambient, embed(chi, ambient), base) == chi);
    }
}

TEST_CASE("frobenius_orbit") {
    FrobOrbit orbit = frobenius_orbit(TameChar{2, 8, q5}, 1);
    CHECK(orbit.rep == TameChar{2, 8, q5});
    CHECK(orbit.size == 2);
    CHECK(orbit_residues(orbit.rep, 1) == std::vector<Int>{8, 16});

    FrobOrbit triv = frobenius_orbit(trivial_char(q3), 5);
    CHECK(triv.size == 1);
    CHECK(triv.rep.is_trivial());

    // Frobenius over the quadratic extension fixes the level-2 characters
    FrobOrbit fixed = frobenius_orbit(TameChar{2, 1, q3}, 2);
    CHECK(fixed.size == 1);
}

TEST_CASE("orbit size matches direct iteration") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const ResidueDatum& base = (trial % 2) ? q2 : q3;
        TameChar chi = testgen::random_char(rng, base, 6);
        std::int64_t g = testgen::pick(rng, 1, 4);
        FrobOrbit orbit = frobenius_orbit(chi, g);
        CHECK(orbit.size == chi.level / std::gcd(chi.level, g));
        // brute force: iterate multiplication by q^g at the ambient level
        Int modulus = char_modulus(base, chi.level);
        Int step = mod_reduce(pow_int(base.q, g), modulus);
        Int x = chi.residue;
        std::int64_t count = 1;
        for (Int y = mod_reduce(x * step, modulus); y != x; y = mod_reduce(y * step, modulus)) ++count;
        CHECK(orbit.size == count);
    }
}

TEST_CASE("ell_regular_part") {
    CHECK(ell_regular_part(TameChar{2, 8, q5}, 3).is_trivial());  // 24 = 3 * 8, 8 = 0 mod 8
    CHECK(ell_regular_part(TameChar{1, 1, q3}, 2).is_trivial());  // q - 1 is a 2-power
    CHECK(ell_regular_part(trivial_char(q5), 7).is_trivial());
    CHECK(ell_regular_part(TameChar{1, 3, q5}, 2).is_trivial());           // Z/4 is a 2-group
    CHECK(ell_regular_part(TameChar{1, 3, q5}, 3) == TameChar{1, 3, q5});  // 3 does not divide 4
    CHECK_THROWS_AS(ell_regular_part(TameChar{1, 1, q5}, 5), validation_error);
    CHECK_THROWS_AS(ell_regular_part(TameChar{1, 1, q5}, 6), validation_error);
}

TEST_CASE("ell_regular_part is idempotent and Frobenius-equivariant") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 400; ++trial) {
        const ResidueDatum& base = (trial % 2) ? q3 : q5;
        Int ell = (trial % 3 == 0) ? 2 : ((trial % 3 == 1) ? 3 : 7);
        if (ell == base.p) ell = 2;
        TameChar chi = testgen::random_char(rng, base, 4);
        TameChar reg = ell_regular_part(chi, ell);
        CHECK(ell_regular_part(reg, ell) == reg);
        // the orbit of the regular part is the elementwise regular part of the orbit
        std::set<std::pair<std::int64_t, Int>> lhs, rhs;
        for (const Int& r : orbit_residues(reg, 1)) {
            TameChar c = canonicalize(reg.level, r, base);
            lhs.insert({c.level, c.residue});
        }
        for (const Int& r : orbit_residues(chi, 1)) {
            TameChar c = ell_regular_part(canonicalize(chi.level, r, base), ell);
            rhs.insert({c.level, c.residue});
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("ell_regular_part injective when ell does not divide q^d - 1") {
    // q = 3, ell = 7: 7 divides neither 2 nor 8, so level <= 2 characters are separated
    std::set<std::pair<std::int64_t, Int>> images;
    std::int64_t total = 0;
    for (std::int64_t level = 1; level <= 2; ++level) {
        Int modulus = char_modulus(q3, level);
        for (Int x = 0; x < modulus; ++x) {
            TameChar chi = canonicalize(level, x, q3);
            if (chi.level != level) continue;  // enumerate canonical characters once
            TameChar reg = ell_regular_part(chi, 7);
            images.insert({reg.level, reg.residue});
            ++total;
        }
    }
    CHECK(static_cast<std::int64_t>(images.size()) == total);
}

TEST_CASE("restrict_totally_ramified") {
    CHECK(restrict_totally_ramified(TameChar{2, 8, q5}, 3).is_trivial());  // 24 = 0 mod 24
    TameChar chi{2, 5, q3};
    CHECK(restrict_totally_ramified(chi, 1) == chi);
    CHECK(restrict_totally_ramified(TameChar{1, 1, q3}, 2).is_trivial());
    CHECK_THROWS_AS(restrict_totally_ramified(TameChar{1, 1, q5}, 10), validation_error);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        TameChar psi = testgen::random_char(rng, q5, 4);
        std::int64_t e1 = testgen::pick(rng, 1, 4), e2 = testgen::pick(rng, 1, 4);
        CHECK(restrict_totally_ramified(psi, e1 * e2) ==
              restrict_totally_ramified(restrict_totally_ramified(psi, e1), e2));
    }
}
