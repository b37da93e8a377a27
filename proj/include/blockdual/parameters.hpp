#pragma once

// Inertial and ell'-inertial parameters of GL-type groups. A parameter is a
// Frobenius-stable weighted multiset of character orbits per group factor;
// one parameter per block. From it we read off the isotypic decomposition,
// the centralizer shape, the unramified group attached to the block, the
// Hecke descriptor, block enumeration, mod-ell fusion and Shapiro transport.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "blockdual/tame_characters.hpp"

namespace blockdual {

// Product of restriction-of-scalars general linear factors Res_{F_i|F} GL_{n_i}.
struct GLFactor {
    std::int64_t rank = 1;
    ExtShape ext;

    friend bool operator==(const GLFactor&, const GLFactor&) = default;
};

struct GLTypeGroup {
    std::vector<GLFactor> factors;
    ResidueDatum base;

    friend bool operator==(const GLTypeGroup&, const GLTypeGroup&) = default;
};

inline GLTypeGroup make_group(std::vector<GLFactor> factors, const ResidueDatum& base) {
    if (factors.empty()) throw validation_error("group needs at least one factor");
    for (const GLFactor& f : factors) {
        if (f.rank < 1) throw validation_error("factor rank must be positive");
        if (f.ext.e < 1 || f.ext.f < 1) throw validation_error("factor extension shape invalid");
        if (!f.ext.is_tame(base.p))
            throw validation_error("wild extension: factor ramification divisible by p");
    }
    return GLTypeGroup{std::move(factors), base};
}

inline GLTypeGroup make_gl(std::int64_t rank, const ResidueDatum& base) {
    return make_group({GLFactor{rank, ExtShape{1, 1}}}, base);
}

// Sum of rank * residue degree; conserved by the unramified-group construction.
inline std::int64_t group_weight(const GLTypeGroup& g) {
    std::int64_t w = 0;
    for (const GLFactor& f : g.factors) w += f.rank * f.ext.f;
    return w;
}

struct WeightedOrbit {
    FrobOrbit orbit;
    std::int64_t mult = 1;

    friend bool operator==(const WeightedOrbit&, const WeightedOrbit&) = default;
};

struct InertialParam {
    GLTypeGroup group;
    InertiaKind kind;
    std::vector<std::vector<WeightedOrbit>> data;  // per factor, sorted by orbit rep

    friend bool operator==(const InertialParam&, const InertialParam&) = default;
};

// Deterministic total order used to index fusion classes and atlas files.
inline bool param_less(const InertialParam& a, const InertialParam& b) {
    if (a.data.size() != b.data.size()) return a.data.size() < b.data.size();
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const auto& da = a.data[i];
        const auto& db = b.data[i];
        if (da.size() != db.size()) return da.size() < db.size();
        for (std::size_t j = 0; j < da.size(); ++j) {
            if (!(da[j].orbit.rep == db[j].orbit.rep)) return da[j].orbit.rep < db[j].orbit.rep;
            if (da[j].mult != db[j].mult) return da[j].mult < db[j].mult;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Validation

// Canonicalizes and checks a raw parameter: characters are put in canonical
// form, orbits recomputed under the factor's Frobenius power, pairs sorted.
// Errors on weight mismatch, duplicate orbits, wild data and, for ell'-kinds,
// characters that are not ell-regular.
inline InertialParam validate(const GLTypeGroup& group, const InertiaKind& kind,
                              const std::vector<std::vector<WeightedOrbit>>& raw) {
    if (kind.tag == InertiaTag::wild)
        throw validation_error("wild parameters are out of range: only the level-0 summand is modeled");
    if (kind.tag == InertiaTag::prime_to_ell && kind.ell == group.base.p)
        throw validation_error("ell must differ from the residue characteristic");
    if (raw.size() != group.factors.size())
        throw validation_error("parameter data must list one multiset per factor");

    InertialParam out{group, kind, {}};
    out.data.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const GLFactor& factor = group.factors[i];
        std::int64_t weight = 0;
        std::vector<WeightedOrbit> pieces;
        for (const WeightedOrbit& wo : raw[i]) {
            if (wo.mult < 1) throw validation_error("orbit multiplicity must be positive");
            if (!(wo.orbit.rep.base == group.base))
                throw validation_error("character residue data does not match the group");
            TameChar rep = canonicalize(wo.orbit.rep.level, wo.orbit.rep.residue, group.base);
            FrobOrbit orbit = frobenius_orbit(rep, factor.ext.f);
            if (kind.tag == InertiaTag::prime_to_ell && !is_ell_regular(orbit.rep, kind.ell))
                throw validation_error("ell'-parameter contains a character that is not ell-regular");
            weight += orbit.size * wo.mult;
            pieces.push_back(WeightedOrbit{orbit, wo.mult});
        }
        if (weight != factor.rank)
            throw validation_error("weight mismatch: multiset weight " + std::to_string(weight) +
                                   " != rank " + std::to_string(factor.rank));
        std::sort(pieces.begin(), pieces.end(), [](const WeightedOrbit& a, const WeightedOrbit& b) {
            return a.orbit.rep < b.orbit.rep;
        });
        for (std::size_t j = 0; j + 1 < pieces.size(); ++j)
            if (pieces[j].orbit.rep == pieces[j + 1].orbit.rep)
                throw validation_error("duplicate orbit in isotypic data");
        out.data[i] = std::move(pieces);
    }
    return out;
}

inline InertialParam make_param(const GLTypeGroup& group, const InertiaKind& kind,
                                const std::vector<std::vector<std::pair<TameChar, std::int64_t>>>& chars) {
    std::vector<std::vector<WeightedOrbit>> raw(chars.size());
    for (std::size_t i = 0; i < chars.size(); ++i)
        for (const auto& [chi, mult] : chars[i])
            raw[i].push_back(WeightedOrbit{FrobOrbit{chi, 1, 1}, mult});
    return validate(group, kind, raw);
}

inline InertialParam trivial_param(const GLTypeGroup& group, const InertiaKind& kind = InertiaKind::full()) {
    std::vector<std::vector<WeightedOrbit>> raw(group.factors.size());
    for (std::size_t i = 0; i < group.factors.size(); ++i)
        raw[i].push_back(WeightedOrbit{FrobOrbit{trivial_char(group.base), 1, 1}, group.factors[i].rank});
    return validate(group, kind, raw);
}

// The stored pairs are the unique decomposition into isotypic pieces; the
// data model enforces existence and uniqueness.
inline const std::vector<std::vector<WeightedOrbit>>& isotypic_decomposition(const InertialParam& phi) {
    return phi.data;
}

// ---------------------------------------------------------------------------
// Centralizer, unramified group, Hecke descriptor

// Multiset of (e, copies) meaning GL_e^copies, Frobenius permuting the copies
// of one component transitively.
struct CentralizerShape {
    std::vector<std::pair<std::int64_t, std::int64_t>> components;  // sorted

    friend bool operator==(const CentralizerShape&, const CentralizerShape&) = default;
};

inline Int centralizer_dim(const CentralizerShape& shape) {
    Int dim = 0;
    for (const auto& [e, copies] : shape.components) dim += Int(e) * e * copies;
    return dim;
}

// Copies contributed by one isotypic piece: orbit size times the degree of
// the intermediate field F'' of the factor under the parameter's kind. For
// full inertia this is the residue degree of the factor.
inline std::int64_t copies_multiplier(const GLFactor& factor, const InertiaKind& kind, const Int& p) {
    ExtShape mid = intermediate_field(factor.ext, kind, p);
    return mid.degree();
}

inline CentralizerShape centralizer_shape(const InertialParam& phi) {
    CentralizerShape shape;
    for (std::size_t i = 0; i < phi.data.size(); ++i) {
        std::int64_t mult = copies_multiplier(phi.group.factors[i], phi.kind, phi.group.base.p);
        for (const WeightedOrbit& wo : phi.data[i])
            shape.components.emplace_back(wo.mult, wo.orbit.size * mult);
    }
    std::sort(shape.components.begin(), shape.components.end());
    return shape;
}

// The GL-type group whose dual is the centralizer: one factor Res_{E|F} GL_e
// per isotypic piece, E of shape (e'', k f'') with (e'', f'') the intermediate
// field of the enclosing factor and k the orbit size. For full inertia E is
// unramified of degree k f'.
inline GLTypeGroup unipotent_group(const InertialParam& phi) {
    std::vector<GLFactor> factors;
    for (std::size_t i = 0; i < phi.data.size(); ++i) {
        ExtShape mid = intermediate_field(phi.group.factors[i].ext, phi.kind, phi.group.base.p);
        for (const WeightedOrbit& wo : phi.data[i])
            factors.push_back(GLFactor{wo.mult, ExtShape{mid.e, wo.orbit.size * mid.f}});
    }
    return make_group(std::move(factors), phi.group.base);
}

// Tensor factors H(e, q^m) of the extended affine Hecke algebra attached to
// the block; m is the orbit size times the factor's residue degree. Blocks
// with equal descriptors are Hecke-equivalent.
struct HeckeDescriptor {
    std::vector<std::pair<std::int64_t, std::int64_t>> tensor_factors;  // (rank e, exponent m), sorted

    friend bool operator==(const HeckeDescriptor&, const HeckeDescriptor&) = default;
};

inline HeckeDescriptor hecke_descriptor(const InertialParam& phi) {
    HeckeDescriptor h;
    for (std::size_t i = 0; i < phi.data.size(); ++i) {
        std::int64_t f = phi.group.factors[i].ext.f;
        for (const WeightedOrbit& wo : phi.data[i])
            h.tensor_factors.emplace_back(wo.mult, wo.orbit.size * f);
    }
    std::sort(h.tensor_factors.begin(), h.tensor_factors.end());
    return h;
}

inline bool hecke_equivalent(const InertialParam& a, const InertialParam& b) {
    return hecke_descriptor(a) == hecke_descriptor(b);
}

// ---------------------------------------------------------------------------
// Enumeration

// All canonical Frobenius orbits (under x -> q^g x) of size at most max_size;
// for ell'-kinds only ell-regular characters contribute. Sorted by rep.
inline std::vector<FrobOrbit> enumerate_orbits(const ResidueDatum& base, std::int64_t g,
                                               std::int64_t max_size, const InertiaKind& kind) {
    std::vector<FrobOrbit> orbits;
    for (std::int64_t level = 1; level <= g * max_size; ++level) {
        if (level / std::gcd(level, g) > max_size) continue;
        Int modulus = char_modulus(base, level);
        std::vector<Int> transitions;
        for (std::int64_t d = 1; d < level; ++d)
            if (level % d == 0) transitions.push_back(modulus / char_modulus(base, d));
        Int ell_part = 1;
        if (kind.tag == InertiaTag::prime_to_ell)
            ell_part = pow_int(kind.ell, valuation(modulus, kind.ell));
        Int step = mod_reduce(pow_int(base.q, g), modulus);
        for (Int x = 0; x < modulus; ++x) {
            bool primitive = true;
            for (const Int& t : transitions)
                if (x % t == 0) { primitive = false; break; }
            if (!primitive) continue;
            if (kind.tag == InertiaTag::prime_to_ell && x % ell_part != 0) continue;
            // keep only orbit minima; each orbit is produced once
            bool minimal = true;
            std::int64_t size = 1;
            for (Int y = mod_reduce(x * step, modulus); y != x; y = mod_reduce(y * step, modulus)) {
                if (y < x) { minimal = false; break; }
                ++size;
            }
            if (!minimal) continue;
            orbits.push_back(FrobOrbit{TameChar{level, x, base}, size, g});
        }
    }
    std::sort(orbits.begin(), orbits.end(), [](const FrobOrbit& a, const FrobOrbit& b) {
        return a.rep < b.rep;
    });
    return orbits;
}

inline void enumerate_weighted_multisets(const std::vector<FrobOrbit>& orbits, std::int64_t weight,
                                         std::size_t from, std::vector<WeightedOrbit>& acc,
                                         std::vector<std::vector<WeightedOrbit>>& out) {
    if (weight == 0) {
        out.push_back(acc);
        return;
    }
    for (std::size_t i = from; i < orbits.size(); ++i) {
        if (orbits[i].size > weight) continue;
        for (std::int64_t m = 1; m * orbits[i].size <= weight; ++m) {
            acc.push_back(WeightedOrbit{orbits[i], m});
            enumerate_weighted_multisets(orbits, weight - m * orbits[i].size, i + 1, acc, out);
            acc.pop_back();
        }
    }
}

inline std::vector<std::vector<WeightedOrbit>> enumerate_factor_blocks(const GLFactor& factor,
                                                                       const ResidueDatum& base,
                                                                       const InertiaKind& kind) {
    std::vector<FrobOrbit> orbits = enumerate_orbits(base, factor.ext.f, factor.rank, kind);
    std::vector<std::vector<WeightedOrbit>> out;
    std::vector<WeightedOrbit> acc;
    enumerate_weighted_multisets(orbits, factor.rank, 0, acc, out);
    return out;
}

// All depth-zero parameters of the given kind, in deterministic order:
// factors in given order, pieces sorted by orbit representative.
inline std::vector<InertialParam> enumerate_blocks(const GLTypeGroup& group, const InertiaKind& kind) {
    if (kind.tag == InertiaTag::wild)
        throw validation_error("wild parameters are out of range: only the level-0 summand is modeled");
    if (kind.tag == InertiaTag::prime_to_ell && kind.ell == group.base.p)
        throw validation_error("ell must differ from the residue characteristic");
    std::vector<std::vector<std::vector<WeightedOrbit>>> per_factor;
    for (const GLFactor& f : group.factors)
        per_factor.push_back(enumerate_factor_blocks(f, group.base, kind));

    std::vector<InertialParam> blocks;
    std::vector<std::size_t> idx(per_factor.size(), 0);
    for (bool done = false; !done;) {
        InertialParam phi{group, kind, {}};
        for (std::size_t i = 0; i < per_factor.size(); ++i) phi.data.push_back(per_factor[i][idx[i]]);
        blocks.push_back(std::move(phi));
        done = true;
        for (std::size_t i = per_factor.size(); i-- > 0;) {
            if (++idx[i] < per_factor[i].size()) {
                done = false;
                break;
            }
            idx[i] = 0;
        }
    }
    return blocks;
}

// ---------------------------------------------------------------------------
// Brute-force oracle

// Independent enumeration at ambient level L = lcm(1..n) over the factor's
// field, with no canonical-form machinery: characters are raw residues at
// level L, Frobenius stability is checked by direct iteration. Only residues
// lying in a level <= n subgroup can occur in a weight-n stable multiset, so
// candidates are the multiples of (q'^L - 1)/(q'^d - 1) for d <= n.
struct OracleFactorReport {
    Int count = 0;
    std::vector<std::string> fingerprints;  // sorted multisets of ambient residues
};

struct OracleReport {
    Int count = 1;
    std::vector<OracleFactorReport> factors;
};

namespace detail {

inline std::string fingerprint_of(std::vector<Int> residues) {
    std::sort(residues.begin(), residues.end());
    std::string out;
    for (const Int& r : residues) {
        if (!out.empty()) out += ',';
        out += r.str();
    }
    return out;
}

inline void oracle_multisets(const std::vector<std::vector<Int>>& orbits, std::int64_t weight,
                             std::size_t from, std::vector<Int>& acc,
                             std::vector<std::string>& out) {
    if (weight == 0) {
        out.push_back(fingerprint_of(acc));
        return;
    }
    for (std::size_t i = from; i < orbits.size(); ++i) {
        std::int64_t size = static_cast<std::int64_t>(orbits[i].size());
        if (size > weight) continue;
        for (std::int64_t m = 1; m * size <= weight; ++m) {
            for (std::int64_t t = 0; t < m; ++t)
                acc.insert(acc.end(), orbits[i].begin(), orbits[i].end());
            oracle_multisets(orbits, weight - m * size, i + 1, acc, out);
            for (std::int64_t t = 0; t < m * size; ++t) acc.pop_back();
        }
    }
}

}  // namespace detail

inline OracleFactorReport oracle_factor(const GLFactor& factor, const ResidueDatum& base,
                                        const InertiaKind& kind) {
    std::int64_t n = factor.rank;
    Int qp = pow_int(base.q, factor.ext.f);  // residue cardinality of the factor's field
    std::int64_t ambient = 1;
    for (std::int64_t d = 1; d <= n; ++d) ambient = std::lcm(ambient, d);
    Int modulus = pow_int(qp, ambient) - 1;
    Int ell_part = 1;
    if (kind.tag == InertiaTag::prime_to_ell) ell_part = pow_int(kind.ell, valuation(modulus, kind.ell));

    std::vector<Int> candidates;
    for (std::int64_t d = 1; d <= n; ++d) {
        Int level_size = pow_int(qp, d) - 1;
        Int transition = modulus / level_size;
        for (Int y = 0; y < level_size; ++y) {
            Int x = y * transition;
            if (kind.tag == InertiaTag::prime_to_ell && x % ell_part != 0) continue;
            candidates.push_back(x);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<std::vector<Int>> orbits;
    std::map<Int, bool> seen;
    for (const Int& x : candidates) {
        if (seen.count(x)) continue;
        std::vector<Int> orbit{x};
        seen[x] = true;
        for (Int y = mod_reduce(x * qp, modulus); y != x; y = mod_reduce(y * qp, modulus)) {
            orbit.push_back(y);
            seen[y] = true;
        }
        orbits.push_back(std::move(orbit));
    }

    OracleFactorReport report;
    std::vector<Int> acc;
    detail::oracle_multisets(orbits, n, 0, acc, report.fingerprints);
    std::sort(report.fingerprints.begin(), report.fingerprints.end());
    report.count = static_cast<std::int64_t>(report.fingerprints.size());
    return report;
}

inline OracleReport oracle_enumerate(const GLTypeGroup& group, const InertiaKind& kind) {
    std::int64_t total_weight = 0;
    for (const GLFactor& f : group.factors) total_weight += f.rank;
    if (total_weight > 6 || group.base.q > 9)
        throw validation_error("oracle size bound exceeded: total weight <= 6, q <= 9");
    OracleReport report;
    for (const GLFactor& f : group.factors) {
        report.factors.push_back(oracle_factor(f, group.base, kind));
        report.count *= report.factors.back().count;
    }
    return report;
}

// Ambient fingerprint of one factor's pairs, comparable with the oracle's.
inline std::string ambient_fingerprint(const GLFactor& factor, const std::vector<WeightedOrbit>& pairs,
                                       const ResidueDatum& base) {
    std::int64_t ambient = 1;
    for (std::int64_t d = 1; d <= factor.rank; ++d) ambient = std::lcm(ambient, d);
    std::vector<Int> residues;
    for (const WeightedOrbit& wo : pairs) {
        for (const Int& r : orbit_residues(wo.orbit.rep, factor.ext.f)) {
            TameChar elem{wo.orbit.rep.level, r, base};
            Int at_ambient = embed(elem, static_cast<std::int64_t>(wo.orbit.rep.level *
                                                                   (ambient * factor.ext.f / wo.orbit.rep.level)));
            // embed wants a multiple of the level; ambient * f' is one
            for (std::int64_t m = 0; m < wo.mult; ++m) residues.push_back(at_ambient);
        }
    }
    return detail::fingerprint_of(std::move(residues));
}

// Cross-check enumerate_blocks against the oracle, per factor: equal counts
// and equal fingerprint multisets.
struct OracleComparison {
    bool agree = true;
    Int oracle_count = 0;
    Int enumerated_count = 0;
    std::string detail;
};

inline OracleComparison compare_with_oracle(const GLTypeGroup& group, const InertiaKind& kind) {
    OracleComparison cmp;
    OracleReport oracle = oracle_enumerate(group, kind);
    cmp.oracle_count = oracle.count;
    cmp.enumerated_count = 1;
    for (std::size_t i = 0; i < group.factors.size(); ++i) {
        auto factor_blocks = enumerate_factor_blocks(group.factors[i], group.base, kind);
        cmp.enumerated_count *= static_cast<std::int64_t>(factor_blocks.size());
        std::vector<std::string> fps;
        for (const auto& pairs : factor_blocks)
            fps.push_back(ambient_fingerprint(group.factors[i], pairs, group.base));
        std::sort(fps.begin(), fps.end());
        if (fps != oracle.factors[i].fingerprints) {
            cmp.agree = false;
            cmp.detail = "fingerprint mismatch on factor " + std::to_string(i);
        }
    }
    if (cmp.oracle_count != cmp.enumerated_count) {
        cmp.agree = false;
        if (cmp.detail.empty()) cmp.detail = "count mismatch";
    }
    return cmp;
}

// ---------------------------------------------------------------------------
// Mod-ell restriction and fusion

// Applies the ell-regular part to every character, re-collects orbits with
// multiplicities. Realizes the restriction map to prime-to-ell inertia; the
// weight is preserved.
inline InertialParam restrict_to_ell_prime(const InertialParam& phi, const Int& ell) {
    if (phi.kind.tag != InertiaTag::full_inertia)
        throw validation_error("restrict_to_ell_prime expects a full-inertia parameter");
    if (ell == phi.group.base.p) throw validation_error("ell must differ from the residue characteristic");
    std::vector<std::vector<WeightedOrbit>> raw(phi.data.size());
    for (std::size_t i = 0; i < phi.data.size(); ++i) {
        std::int64_t g = phi.group.factors[i].ext.f;
        std::map<std::pair<std::int64_t, Int>, WeightedOrbit> collected;
        for (const WeightedOrbit& wo : phi.data[i]) {
            TameChar reg = ell_regular_part(wo.orbit.rep, ell);
            FrobOrbit orbit = frobenius_orbit(reg, g);
            // the image orbit size divides the source orbit size
            std::int64_t mult = wo.mult * (wo.orbit.size / orbit.size);
            auto key = std::make_pair(orbit.rep.level, orbit.rep.residue);
            auto it = collected.find(key);
            if (it == collected.end())
                collected.emplace(key, WeightedOrbit{orbit, mult});
            else
                it->second.mult += mult;
        }
        for (auto& [key, wo] : collected) raw[i].push_back(wo);
    }
    return validate(phi.group, InertiaKind::prime_to(ell), raw);
}

struct FusionClass {
    InertialParam ell_param;
    std::vector<std::size_t> members;  // indices into the atlas
};

// Fibers of restrict_to_ell_prime over an atlas; a partition indexed by
// canonical ell'-parameters.
inline std::vector<FusionClass> fuse_blocks(const std::vector<InertialParam>& atlas, const Int& ell) {
    auto cmp = [](const InertialParam& a, const InertialParam& b) { return param_less(a, b); };
    std::map<InertialParam, std::vector<std::size_t>, decltype(cmp)> fibers(cmp);
    for (std::size_t i = 0; i < atlas.size(); ++i)
        fibers[restrict_to_ell_prime(atlas[i], ell)].push_back(i);
    std::vector<FusionClass> classes;
    for (auto& [key, members] : fibers) classes.push_back(FusionClass{key, std::move(members)});
    return classes;
}

// ---------------------------------------------------------------------------
// Shapiro transport

// Re-bases a single-factor parameter of Res_{F'|F} GL_n to a parameter of
// GL_n over F': same orbits, re-read over the residue field of cardinality
// q^{f'} with Frobenius power 1. A character of F-level d becomes a character
// of F'-level d / gcd(d, f'). Roundtrip with shapiro_from_field is the identity.
inline InertialParam shapiro_to_field(const InertialParam& phi) {
    if (phi.group.factors.size() != 1)
        throw validation_error("shapiro transport works on a single factor");
    const GLFactor& factor = phi.group.factors[0];
    if (!factor.ext.is_tame(phi.group.base.p)) throw validation_error("wild extension");
    std::int64_t fp = factor.ext.f;
    ResidueDatum base_prime = residue_datum_from_pa(phi.group.base.p, phi.group.base.a * fp);
    GLTypeGroup target = make_gl(factor.rank, base_prime);

    std::vector<std::vector<WeightedOrbit>> raw(1);
    for (const WeightedOrbit& wo : phi.data[0]) {
        std::int64_t d = wo.orbit.rep.level;
        std::int64_t level_prime = d / std::gcd(d, fp);
        Int residue = embed(wo.orbit.rep, level_prime * fp);
        TameChar chi{level_prime, residue, base_prime};
        raw[0].push_back(WeightedOrbit{FrobOrbit{chi, 1, 1}, wo.mult});
    }
    return validate(target, phi.kind, raw);
}

// Inverse transport: tags a parameter of GL_n over F' to the factor
// Res_{F'|F} GL_n, F'/F of the given tame shape over the base of size q.
inline InertialParam shapiro_from_field(const InertialParam& phi_prime, const ExtShape& ext,
                                        const ResidueDatum& base) {
    if (phi_prime.group.factors.size() != 1 || !phi_prime.group.factors[0].ext.is_trivial())
        throw validation_error("shapiro transport expects a plain GL_n parameter over F'");
    if (!ext.is_tame(base.p)) throw validation_error("wild extension");
    if (!(phi_prime.group.base.p == base.p) || phi_prime.group.base.a != base.a * ext.f)
        throw validation_error("residue data of F' does not match the extension shape");
    GLTypeGroup target = make_group({GLFactor{phi_prime.group.factors[0].rank, ext}}, base);

    std::vector<std::vector<WeightedOrbit>> raw(1);
    for (const WeightedOrbit& wo : phi_prime.data[0]) {
        TameChar over_f = canonicalize(wo.orbit.rep.level * ext.f, wo.orbit.rep.residue, base);
        raw[0].push_back(WeightedOrbit{FrobOrbit{over_f, 1, 1}, wo.mult});
    }
    return validate(target, phi_prime.kind, raw);
}

}  // namespace blockdual
