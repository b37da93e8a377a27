#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "blockdual/parameters.hpp"
#include "test_support.hpp"

using namespace blockdual;

namespace {
const ResidueDatum q2 = residue_datum_from_q(2);
const ResidueDatum q3 = residue_datum_from_q(3);
const ResidueDatum q5 = residue_datum_from_q(5);

InertialParam cuspidal_gl2_q5() {
    return make_param(make_gl(2, q5), InertiaKind::full(), {{{TameChar{2, 8, q5}, 1}}});
}

InertialParam two_piece_gl4_q3() {
    // trivial with multiplicity 2 plus the orbit {1,3} in Z/8
    return make_param(make_gl(4, q3), InertiaKind::full(),
                      {{{trivial_char(q3), 2}, {TameChar{2, 1, q3}, 1}}});
}
}  // namespace

TEST_CASE("group construction rejects wild shapes") {
    CHECK_THROWS_AS(make_group({GLFactor{2, ExtShape{3, 1}}}, q3), validation_error);
    CHECK_NOTHROW(make_group({GLFactor{2, ExtShape{3, 1}}}, q5));
    CHECK_THROWS_AS(make_group({GLFactor{0, ExtShape{1, 1}}}, q3), validation_error);
}

TEST_CASE("validate") {
    GLTypeGroup gl2 = make_gl(2, q3);
    InertialParam principal = make_param(gl2, InertiaKind::full(), {{{trivial_char(q3), 2}}});
    CHECK(principal.data[0].size() == 1);
    CHECK(principal.data[0][0].mult == 2);

    InertialParam cusp = cuspidal_gl2_q5();
    CHECK(cusp.data[0][0].orbit.size == 2);

    // weight 1 != 2
    CHECK_THROWS_AS(make_param(gl2, InertiaKind::full(), {{{trivial_char(q3), 1}}}), validation_error);
    // duplicate orbit: {1,3} listed twice
    CHECK_THROWS_AS(make_param(make_gl(4, q3), InertiaKind::full(),
                               {{{TameChar{2, 1, q3}, 1}, {TameChar{2, 3, q3}, 1}}}),
                    validation_error);
    // wild kinds are rejected
    CHECK_THROWS_AS(trivial_param(gl2, InertiaKind::wild_inertia()), validation_error);
    // ell'-parameters must be ell-regular: the order-2 character is not 2-regular
    CHECK_THROWS_AS(make_param(gl2, InertiaKind::prime_to(2), {{{TameChar{1, 1, q3}, 2}}}),
                    validation_error);
    CHECK_NOTHROW(make_param(gl2, InertiaKind::prime_to(5), {{{TameChar{1, 1, q3}, 2}}}));
}

TEST_CASE("isotypic decomposition is the stored data") {
    InertialParam phi = two_piece_gl4_q3();
    const auto& pieces = isotypic_decomposition(phi);
    REQUIRE(pieces.size() == 1);
    REQUIRE(pieces[0].size() == 2);
    CHECK(pieces[0][0].orbit.rep.is_trivial());
    CHECK(pieces[0][1].orbit.rep == TameChar{2, 1, q3});
    CHECK(trivial_param(make_gl(3, q3)).data[0].size() == 1);
}

TEST_CASE("centralizer shape") {
    CHECK(centralizer_shape(trivial_param(make_gl(4, q3))).components ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{{4, 1}});
    CHECK(centralizer_dim(centralizer_shape(trivial_param(make_gl(4, q3)))) == 16);

    CHECK(centralizer_shape(cuspidal_gl2_q5()).components ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 2}});

    CentralizerShape two = centralizer_shape(two_piece_gl4_q3());
    CHECK(two.components == std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 2}, {2, 1}});
    CHECK(centralizer_dim(two) == 6);

    // restriction of scalars multiplies copies by the intermediate degree
    GLTypeGroup res = make_group({GLFactor{2, ExtShape{1, 2}}}, q3);
    CHECK(centralizer_shape(trivial_param(res)).components ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}});
    GLTypeGroup ram = make_group({GLFactor{2, ExtShape{2, 1}}}, q3);
    CHECK(centralizer_shape(trivial_param(ram)).components ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 1}});
    // under the ell-prime kind the ell-part of the ramification survives
    CHECK(centralizer_shape(trivial_param(ram, InertiaKind::prime_to(2))).components ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}});
}

TEST_CASE("unipotent group") {
    GLTypeGroup gl4 = make_gl(4, q3);
    CHECK(unipotent_group(trivial_param(gl4)) == gl4);

    CHECK(unipotent_group(cuspidal_gl2_q5()) ==
          make_group({GLFactor{1, ExtShape{1, 2}}}, q5));

    CHECK(unipotent_group(two_piece_gl4_q3()) ==
          make_group({GLFactor{2, ExtShape{1, 1}}, GLFactor{1, ExtShape{1, 2}}}, q3));

    // weight conservation: sum of rank * residue degree
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        GLTypeGroup g = make_group({GLFactor{testgen::pick(rng, 1, 4),
                                             ExtShape{1, testgen::pick(rng, 1, 2)}}},
                                   (trial % 2) ? q3 : q5);
        InertialParam phi = testgen::random_param(rng, g);
        CHECK(group_weight(unipotent_group(phi)) == group_weight(g));
    }
}

TEST_CASE("hecke descriptor") {
    CHECK(hecke_descriptor(trivial_param(make_gl(3, q3))).tensor_factors ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 1}});
    CHECK(hecke_descriptor(cuspidal_gl2_q5()).tensor_factors ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 2}});
    CHECK(hecke_descriptor(two_piece_gl4_q3()).tensor_factors ==
          std::vector<std::pair<std::int64_t, std::int64_t>>{{1, 2}, {2, 1}});
    // the principal block of GL_n over the degree-f unramified field and the
    // size-f cuspidal piece of GL_{nf} have the same descriptor
    GLTypeGroup res = make_group({GLFactor{1, ExtShape{1, 2}}}, q5);
    CHECK(hecke_equivalent(trivial_param(res), cuspidal_gl2_q5()));
}

TEST_CASE("enumerate_blocks frozen counts") {
    CHECK(enumerate_blocks(make_gl(2, q2), InertiaKind::full()).size() == 2);
    CHECK(enumerate_blocks(make_gl(2, q3), InertiaKind::full()).size() == 6);
    CHECK(enumerate_blocks(make_gl(1, q3), InertiaKind::full()).size() == 2);
    CHECK(enumerate_blocks(make_gl(1, q5), InertiaKind::full()).size() == 4);
    CHECK(enumerate_blocks(make_gl(3, q2), InertiaKind::full()).size() == 4);
    CHECK(enumerate_blocks(make_gl(4, q2), InertiaKind::full()).size() == 8);
    CHECK(enumerate_blocks(make_gl(3, q3), InertiaKind::full()).size() == 18);
    // ell'-atlases
    CHECK(enumerate_blocks(make_gl(2, q3), InertiaKind::prime_to(2)).size() == 1);
    CHECK(enumerate_blocks(make_gl(2, q3), InertiaKind::prime_to(5)).size() == 6);
    CHECK(enumerate_blocks(make_gl(2, q5), InertiaKind::prime_to(2)).size() == 2);
    // products multiply
    GLTypeGroup prod = make_group({GLFactor{1, ExtShape{1, 1}}, GLFactor{2, ExtShape{1, 1}}}, q3);
    CHECK(enumerate_blocks(prod, InertiaKind::full()).size() == 12);
}

TEST_CASE("enumerate_blocks GL2 q=3 block list") {
    auto blocks = enumerate_blocks(make_gl(2, q3), InertiaKind::full());
    REQUIRE(blocks.size() == 6);
    // three from the level-1 characters, then the orbits {1,3}, {2,6}, {5,7}
    CHECK(blocks[0].data[0].size() == 2);  // {0, 1}
    CHECK(blocks[1].data[0][0].mult == 2);  // {0, 0}
    std::set<Int> cuspidal_reps;
    for (std::size_t b = 3; b < 6; ++b) {
        REQUIRE(blocks[b].data[0].size() == 1);
        CHECK(blocks[b].data[0][0].orbit.size == 2);
        cuspidal_reps.insert(blocks[b].data[0][0].orbit.rep.residue);
    }
    CHECK(cuspidal_reps == std::set<Int>{1, 2, 5});
}

TEST_CASE("oracle agreement on desk-scale groups") {
    for (const ResidueDatum& base : {q2, q3, q5}) {
        for (std::int64_t n = 1; n <= 3; ++n) {
            OracleComparison cmp = compare_with_oracle(make_gl(n, base), InertiaKind::full());
            INFO("GL" << n << " q=" << base.q);
            CHECK(cmp.agree);
        }
    }
    CHECK(compare_with_oracle(make_gl(2, q3), InertiaKind::prime_to(2)).agree);
    CHECK(compare_with_oracle(make_group({GLFactor{2, ExtShape{1, 2}}}, q3), InertiaKind::full()).agree);
    CHECK(compare_with_oracle(make_group({GLFactor{2, ExtShape{2, 1}}}, q3), InertiaKind::full()).agree);
    // products are compared factor by factor
    GLTypeGroup prod = make_group({GLFactor{1, ExtShape{1, 1}}, GLFactor{3, ExtShape{1, 1}}}, q3);
    CHECK(compare_with_oracle(prod, InertiaKind::full()).agree);
    CHECK(oracle_enumerate(make_gl(1, q5), InertiaKind::full()).count == 4);
    CHECK_THROWS_AS(oracle_enumerate(make_gl(7, q2), InertiaKind::full()), validation_error);
}

TEST_CASE("restrict_to_ell_prime") {
    InertialParam cusp = cuspidal_gl2_q5();
    InertialParam reg = restrict_to_ell_prime(cusp, 3);
    CHECK(reg == trivial_param(cusp.group, InertiaKind::prime_to(3)));

    InertialParam triv = trivial_param(make_gl(3, q3));
    CHECK(restrict_to_ell_prime(triv, 2) == trivial_param(triv.group, InertiaKind::prime_to(2)));

    InertialParam level2 = make_param(make_gl(2, q3), InertiaKind::full(), {{{TameChar{2, 1, q3}, 1}}});
    CHECK(restrict_to_ell_prime(level2, 2) ==
          trivial_param(level2.group, InertiaKind::prime_to(2)));  // Z/8 is a 2-group

    CHECK_THROWS_AS(restrict_to_ell_prime(cusp, 5), validation_error);

    // weight is preserved
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        InertialParam phi = testgen::random_param(rng, make_gl(4, q5));
        InertialParam res = restrict_to_ell_prime(phi, (trial % 2) ? 2 : 3);
        std::int64_t w = 0;
        for (const WeightedOrbit& wo : res.data[0]) w += wo.mult * wo.orbit.size;
        CHECK(w == 4);
    }
}

TEST_CASE("fuse_blocks") {
    auto atlas = enumerate_blocks(make_gl(2, q3), InertiaKind::full());
    auto fused2 = fuse_blocks(atlas, 2);
    REQUIRE(fused2.size() == 1);
    CHECK(fused2[0].members.size() == 6);

    auto fused5 = fuse_blocks(atlas, 5);
    CHECK(fused5.size() == 6);
    for (const FusionClass& c : fused5) CHECK(c.members.size() == 1);

    auto gl1 = enumerate_blocks(make_gl(1, q5), InertiaKind::full());
    auto fused = fuse_blocks(gl1, 2);
    REQUIRE(fused.size() == 1);
    CHECK(fused[0].members.size() == 4);  // Z/4 is a 2-group

    // partition: each block in exactly one class, classes keyed by the restriction
    auto atlas4 = enumerate_blocks(make_gl(4, q3), InertiaKind::full());
    auto classes = fuse_blocks(atlas4, 2);
    std::set<std::size_t> seen;
    for (const FusionClass& c : classes) {
        for (std::size_t m : c.members) {
            CHECK(restrict_to_ell_prime(atlas4[m], 2) == c.ell_param);
            CHECK(seen.insert(m).second);
        }
    }
    CHECK(seen.size() == atlas4.size());
    CHECK(classes.size() == 6);  // frozen via the independent enumeration
}

TEST_CASE("fusion classes are exactly the ell'-atlas") {
    for (auto [rank, ell] : {std::pair<std::int64_t, Int>{2, 2}, {3, 2}, {4, 5}, {2, 7}}) {
        GLTypeGroup g = make_gl(rank, q3);
        auto classes = fuse_blocks(enumerate_blocks(g, InertiaKind::full()), ell);
        auto ell_atlas = enumerate_blocks(g, InertiaKind::prime_to(ell));
        std::sort(ell_atlas.begin(), ell_atlas.end(), param_less);
        REQUIRE(classes.size() == ell_atlas.size());
        for (std::size_t i = 0; i < classes.size(); ++i) CHECK(classes[i].ell_param == ell_atlas[i]);
    }
    // same consistency over a restriction-of-scalars factor
    GLTypeGroup res = make_group({GLFactor{2, ExtShape{1, 2}}}, q3);
    auto classes = fuse_blocks(enumerate_blocks(res, InertiaKind::full()), 2);
    auto ell_atlas = enumerate_blocks(res, InertiaKind::prime_to(2));
    std::sort(ell_atlas.begin(), ell_atlas.end(), param_less);
    REQUIRE(classes.size() == ell_atlas.size());
    for (std::size_t i = 0; i < classes.size(); ++i) CHECK(classes[i].ell_param == ell_atlas[i]);
}

TEST_CASE("validation never crashes on junk input") {
    std::mt19937_64 rng(71);
    int accepted = 0, rejected = 0;
    for (int trial = 0; trial < 500; ++trial) {
        GLTypeGroup g = make_group({GLFactor{testgen::pick(rng, 1, 3),
                                             ExtShape{1, testgen::pick(rng, 1, 2)}}},
                                   q5);
        std::vector<std::vector<WeightedOrbit>> raw(1);
        for (int k = testgen::pick(rng, 0, 3); k > 0; --k) {
            TameChar chi{testgen::pick(rng, 1, 3), Int(testgen::pick(rng, 0, 200)), q5};
            raw[0].push_back(WeightedOrbit{FrobOrbit{chi, testgen::pick(rng, 0, 4),
                                                     testgen::pick(rng, 0, 3)},
                                           testgen::pick(rng, 0, 3)});
        }
        try {
            InertialParam phi = validate(g, InertiaKind::full(), raw);
            ++accepted;
            // whatever validates must satisfy the weight invariant
            std::int64_t w = 0;
            for (const WeightedOrbit& wo : phi.data[0]) w += wo.mult * wo.orbit.size;
            CHECK(w == g.factors[0].rank);
        } catch (const validation_error&) {
            ++rejected;
        }
    }
    CHECK(accepted > 0);
    CHECK(rejected > 0);
}

TEST_CASE("shapiro transport error paths") {
    GLTypeGroup res = make_group({GLFactor{1, ExtShape{1, 2}}}, q5);
    InertialParam phi = trivial_param(res);
    // the F'-side parameter must match the claimed extension shape
    InertialParam field_side = shapiro_to_field(phi);
    CHECK_THROWS_AS(shapiro_from_field(field_side, ExtShape{1, 3}, q5), validation_error);
    CHECK_THROWS_AS(shapiro_from_field(field_side, ExtShape{1, 2}, q3), validation_error);
    // multi-factor parameters are not transported
    GLTypeGroup prod = make_group({GLFactor{1, ExtShape{1, 1}}, GLFactor{1, ExtShape{1, 1}}}, q5);
    CHECK_THROWS_AS(shapiro_to_field(trivial_param(prod)), validation_error);
}

TEST_CASE("shapiro transport") {
    // unramified: the F'-side character (2,8) of GL_1 over F_2, q = 5
    GLTypeGroup res = make_group({GLFactor{1, ExtShape{1, 2}}}, q5);
    InertialParam factor_side = make_param(res, InertiaKind::full(), {{{TameChar{2, 8, q5}, 1}}});
    CHECK(factor_side.data[0][0].orbit.size == 1);  // 25 * 8 = 8 mod 24
    InertialParam field_side = shapiro_to_field(factor_side);
    CHECK(field_side.group.base.q == 25);
    CHECK(field_side.data[0][0].orbit.rep.level == 1);
    CHECK(field_side.data[0][0].orbit.rep.residue == 8);
    CHECK(shapiro_from_field(field_side, ExtShape{1, 2}, q5) == factor_side);

    // totally ramified transport is character-preserving on the F'-data
    GLTypeGroup ram = make_group({GLFactor{2, ExtShape{3, 1}}}, q5);
    InertialParam phi = make_param(ram, InertiaKind::full(), {{{TameChar{2, 8, q5}, 1}}});
    InertialParam over_f = shapiro_to_field(phi);
    CHECK(over_f.group.base.q == 5);
    CHECK(over_f.data[0][0].orbit.rep == TameChar{2, 8, q5});
    CHECK(shapiro_from_field(over_f, ExtShape{3, 1}, q5) == phi);

    // trivial on both sides
    InertialParam triv = trivial_param(res);
    CHECK(shapiro_to_field(triv) == trivial_param(make_gl(1, residue_datum_from_pa(5, 2))));

    // copies ratio across transport equals the intermediate-field degree
    CentralizerShape before = centralizer_shape(factor_side);
    CentralizerShape after = centralizer_shape(shapiro_to_field(factor_side));
    CHECK(before.components[0].second == 2 * after.components[0].second);
}

TEST_CASE("shapiro roundtrip on random parameters") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const ResidueDatum& base = (trial % 2) ? q3 : q5;
        std::int64_t e = (base.p == 3) ? std::vector<std::int64_t>{1, 2, 4}[testgen::pick(rng, 0, 2)]
                                       : std::vector<std::int64_t>{1, 2, 3}[testgen::pick(rng, 0, 2)];
        std::int64_t f = testgen::pick(rng, 1, 3);
        GLTypeGroup g = make_group({GLFactor{testgen::pick(rng, 1, 4), ExtShape{e, f}}}, base);
        InertialParam phi = testgen::random_param(rng, g);
        CHECK(shapiro_from_field(shapiro_to_field(phi), ExtShape{e, f}, base) == phi);
    }
}

TEST_CASE("centralizer of phi equals centralizer of the trivial parameter of G_phi") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        const ResidueDatum& base = (trial % 2) ? q3 : q5;
        GLTypeGroup g = make_gl(testgen::pick(rng, 1, 4), base);
        InertialParam phi = testgen::random_param(rng, g);
        CHECK(centralizer_shape(phi) == centralizer_shape(trivial_param(unipotent_group(phi))));
    }
}
