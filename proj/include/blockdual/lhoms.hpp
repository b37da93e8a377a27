#pragma once

// Catalogue of L-homomorphisms between GL-type groups: dual Levi embeddings,
// tame base change, unramified automorphic induction (optionally twisted by a
// tame character, the inertial shadow of the inducing datum), unramified
// twists and factor isomorphisms. Each atomic step has a computable transfer
// on inertial parameters, tracked at the level of isotypic pieces so that the
// centralizer-isomorphism condition can be decided structurally.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "blockdual/parameters.hpp"

namespace blockdual {

struct LeviEmbedStep {
    // source factor indices per target factor; a partition, groups in target order
    std::vector<std::vector<std::size_t>> groups;
};

struct BaseChangeStep {
    ExtShape ext;                       // tame
    std::vector<std::size_t> factors;   // empty = all factors
};

struct AutIndFactor {
    std::int64_t degree = 1;            // unramified induction degree, divides the factor's f
    std::optional<TameChar> twist;      // inertial restriction of the inducing character
};

struct AutIndStep {
    std::vector<AutIndFactor> per_factor;
};

struct UnramTwistStep {
    bool infinite_order = false;
    std::int64_t order = 1;
};

struct FactorIsoStep {
    std::vector<std::size_t> perm;      // target position j holds source factor perm[j]
};

using LHomStep = std::variant<LeviEmbedStep, BaseChangeStep, AutIndStep, UnramTwistStep, FactorIsoStep>;

struct LHom {
    GLTypeGroup source;
    std::vector<LHomStep> chain;
};

// ---------------------------------------------------------------------------
// Group transforms

inline GLTypeGroup apply_step(const GLTypeGroup& g, const LHomStep& step) {
    if (std::holds_alternative<LeviEmbedStep>(step)) {
        const auto& levi = std::get<LeviEmbedStep>(step);
        std::vector<bool> used(g.factors.size(), false);
        std::vector<GLFactor> out;
        for (const auto& grp : levi.groups) {
            if (grp.empty()) throw validation_error("levi: empty factor group");
            std::int64_t rank = 0;
            ExtShape ext = g.factors.at(grp.front()).ext;
            for (std::size_t idx : grp) {
                if (idx >= g.factors.size() || used[idx]) throw validation_error("levi: bad partition");
                used[idx] = true;
                if (!(g.factors[idx].ext == ext))
                    throw validation_error("levi: merged factors must share an extension shape");
                rank += g.factors[idx].rank;
            }
            out.push_back(GLFactor{rank, ext});
        }
        for (bool u : used)
            if (!u) throw validation_error("levi: partition must cover every source factor");
        return make_group(std::move(out), g.base);
    }
    if (std::holds_alternative<BaseChangeStep>(step)) {
        const auto& bc = std::get<BaseChangeStep>(step);
        if (!bc.ext.is_tame(g.base.p)) throw validation_error("wild base change");
        std::vector<GLFactor> out = g.factors;
        auto apply = [&](std::size_t i) { out[i].ext = compose_extensions(out[i].ext, bc.ext); };
        if (bc.factors.empty())
            for (std::size_t i = 0; i < out.size(); ++i) apply(i);
        else
            for (std::size_t i : bc.factors) {
                if (i >= out.size()) throw validation_error("base change: bad factor index");
                apply(i);
            }
        return make_group(std::move(out), g.base);
    }
    if (std::holds_alternative<AutIndStep>(step)) {
        const auto& ai = std::get<AutIndStep>(step);
        if (ai.per_factor.size() != g.factors.size())
            throw validation_error("automorphic induction: one entry per source factor required");
        std::vector<GLFactor> out;
        for (std::size_t i = 0; i < g.factors.size(); ++i) {
            const AutIndFactor& a = ai.per_factor[i];
            if (a.degree < 1 || g.factors[i].ext.f % a.degree != 0)
                throw validation_error("automorphic induction degree must divide the residue degree");
            if (a.twist && !(a.twist->base == g.base))
                throw validation_error("automorphic induction twist over the wrong residue field");
            out.push_back(GLFactor{g.factors[i].rank * a.degree,
                                   ExtShape{g.factors[i].ext.e, g.factors[i].ext.f / a.degree}});
        }
        return make_group(std::move(out), g.base);
    }
    if (std::holds_alternative<UnramTwistStep>(step)) {
        const auto& tw = std::get<UnramTwistStep>(step);
        if (!tw.infinite_order && tw.order < 1) throw validation_error("twist order must be positive");
        return g;
    }
    const auto& iso = std::get<FactorIsoStep>(step);
    if (iso.perm.size() != g.factors.size()) throw validation_error("factor isomorphism: bad permutation");
    std::vector<bool> used(g.factors.size(), false);
    std::vector<GLFactor> out;
    for (std::size_t j : iso.perm) {
        if (j >= g.factors.size() || used[j]) throw validation_error("factor isomorphism: bad permutation");
        used[j] = true;
        out.push_back(g.factors[j]);
    }
    return make_group(std::move(out), g.base);
}

inline GLTypeGroup target_group(const LHom& hom) {
    GLTypeGroup g = hom.source;
    for (const LHomStep& step : hom.chain) g = apply_step(g, step);
    return g;
}

inline LHom compose(const LHom& first, const LHom& second) {
    if (!(target_group(first) == second.source))
        throw validation_error("compose: target of the first morphism must equal the source of the second");
    LHom out = first;
    out.chain.insert(out.chain.end(), second.chain.begin(), second.chain.end());
    return out;
}

struct LHomClass {
    bool tame = true;      // the catalogue only expresses tame morphisms
    bool bounded = true;   // false once an infinite-order unramified twist appears
};

inline LHomClass classify(const LHom& hom) {
    LHomClass c;
    for (const LHomStep& step : hom.chain)
        if (const auto* tw = std::get_if<UnramTwistStep>(&step))
            if (tw->infinite_order) c.bounded = false;
    return c;
}

// ---------------------------------------------------------------------------
// Transfer of parameters, tracked by isotypic piece

namespace detail {

struct TrackedPiece {
    FrobOrbit orbit;
    std::int64_t mult = 1;
    std::vector<std::size_t> sources;  // flattened piece ids in the previous parameter
};

// Groups a stable multiset of canonical characters into Frobenius orbits
// under x -> q^g x. Fails if the multiset is not stable.
inline std::vector<std::pair<FrobOrbit, std::int64_t>> collect_orbits(
    std::map<TameChar, std::int64_t> chars, std::int64_t g) {
    std::vector<std::pair<FrobOrbit, std::int64_t>> out;
    while (!chars.empty()) {
        auto it = chars.begin();
        FrobOrbit orbit = frobenius_orbit(it->first, g);
        std::int64_t count = it->second;
        for (const Int& r : orbit_residues(orbit.rep, g)) {
            TameChar elem{orbit.rep.level, r, orbit.rep.base};
            auto found = chars.find(elem);
            if (found == chars.end() || found->second != count)
                throw validation_error("transfer produced a non-Frobenius-stable multiset");
            chars.erase(found);
        }
        out.emplace_back(orbit, count);
    }
    return out;
}

inline std::vector<TrackedPiece> merge_tracked(std::vector<TrackedPiece> pieces) {
    std::sort(pieces.begin(), pieces.end(), [](const TrackedPiece& a, const TrackedPiece& b) {
        return a.orbit.rep < b.orbit.rep;
    });
    std::vector<TrackedPiece> out;
    for (TrackedPiece& p : pieces) {
        if (!out.empty() && out.back().orbit.rep == p.orbit.rep) {
            out.back().mult += p.mult;
            out.back().sources.insert(out.back().sources.end(), p.sources.begin(), p.sources.end());
        } else {
            out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace detail

struct StepTrace {
    InertialParam result;
    // flattened target piece id -> flattened source piece ids
    std::vector<std::vector<std::size_t>> sources;
};

namespace detail {

inline std::vector<std::size_t> flatten_offsets(const InertialParam& phi) {
    std::vector<std::size_t> off(phi.data.size() + 1, 0);
    for (std::size_t i = 0; i < phi.data.size(); ++i) off[i + 1] = off[i] + phi.data[i].size();
    return off;
}

inline StepTrace push_step(const InertialParam& phi, const LHomStep& step) {
    const GLTypeGroup& g = phi.group;
    GLTypeGroup target = apply_step(g, step);
    std::vector<std::size_t> off = flatten_offsets(phi);

    std::vector<std::vector<TrackedPiece>> out(target.factors.size());

    if (const auto* levi = std::get_if<LeviEmbedStep>(&step)) {
        for (std::size_t t = 0; t < levi->groups.size(); ++t) {
            std::vector<TrackedPiece> merged;
            for (std::size_t src : levi->groups[t])
                for (std::size_t j = 0; j < phi.data[src].size(); ++j)
                    merged.push_back(detail::TrackedPiece{phi.data[src][j].orbit, phi.data[src][j].mult,
                                                          {off[src] + j}});
            out[t] = merge_tracked(std::move(merged));
        }
    } else if (const auto* bc = std::get_if<BaseChangeStep>(&step)) {
        std::vector<bool> affected(g.factors.size(), bc->factors.empty());
        for (std::size_t i : bc->factors) affected[i] = true;
        for (std::size_t i = 0; i < g.factors.size(); ++i) {
            std::int64_t g_new = target.factors[i].ext.f;
            std::vector<TrackedPiece> pieces;
            for (std::size_t j = 0; j < phi.data[i].size(); ++j) {
                const WeightedOrbit& wo = phi.data[i][j];
                std::map<TameChar, std::int64_t> chars;
                for (const Int& r : orbit_residues(wo.orbit.rep, g.factors[i].ext.f)) {
                    TameChar elem = canonicalize(wo.orbit.rep.level, r, g.base);
                    if (affected[i] && bc->ext.e > 1) elem = restrict_totally_ramified(elem, bc->ext.e);
                    chars[elem] += wo.mult;
                }
                for (auto& [orbit, count] : collect_orbits(std::move(chars), g_new))
                    pieces.push_back(detail::TrackedPiece{orbit, count, {off[i] + j}});
            }
            out[i] = merge_tracked(std::move(pieces));
        }
    } else if (const auto* ai = std::get_if<AutIndStep>(&step)) {
        for (std::size_t i = 0; i < g.factors.size(); ++i) {
            const AutIndFactor& a = ai->per_factor[i];
            std::int64_t f_new = target.factors[i].ext.f;
            std::vector<TrackedPiece> pieces;
            for (std::size_t j = 0; j < phi.data[i].size(); ++j) {
                const WeightedOrbit& wo = phi.data[i][j];
                std::map<TameChar, std::int64_t> chars;
                for (const Int& r : orbit_residues(wo.orbit.rep, g.factors[i].ext.f)) {
                    TameChar elem = canonicalize(wo.orbit.rep.level, r, g.base);
                    TameChar twisted = a.twist ? char_product(elem, *a.twist) : elem;
                    for (std::int64_t s = 0; s < a.degree; ++s)
                        chars[frobenius_shift(twisted, f_new * s)] += wo.mult;
                }
                for (auto& [orbit, count] : collect_orbits(std::move(chars), f_new))
                    pieces.push_back(detail::TrackedPiece{orbit, count, {off[i] + j}});
            }
            out[i] = merge_tracked(std::move(pieces));
        }
    } else if (std::holds_alternative<UnramTwistStep>(step)) {
        for (std::size_t i = 0; i < g.factors.size(); ++i)
            for (std::size_t j = 0; j < phi.data[i].size(); ++j)
                out[i].push_back(detail::TrackedPiece{phi.data[i][j].orbit, phi.data[i][j].mult,
                                                      {off[i] + j}});
    } else {
        const auto& iso = std::get<FactorIsoStep>(step);
        for (std::size_t t = 0; t < iso.perm.size(); ++t) {
            std::size_t src = iso.perm[t];
            for (std::size_t j = 0; j < phi.data[src].size(); ++j)
                out[t].push_back(detail::TrackedPiece{phi.data[src][j].orbit, phi.data[src][j].mult,
                                                      {off[src] + j}});
        }
    }

    StepTrace trace{InertialParam{}, {}};
    std::vector<std::vector<WeightedOrbit>> raw(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const detail::TrackedPiece& p : out[i]) {
            raw[i].push_back(WeightedOrbit{p.orbit, p.mult});
            trace.sources.push_back(p.sources);
        }
    }
    trace.result = validate(target, phi.kind, raw);
    return trace;
}

}  // namespace detail

// The local Langlands transfer of inertial parameters along the catalogue
// morphism; kind is preserved.
inline InertialParam pushforward(const LHom& hom, const InertialParam& phi) {
    if (!(phi.group == hom.source)) throw validation_error("parameter does not live on the source group");
    InertialParam cur = phi;
    for (const LHomStep& step : hom.chain) cur = detail::push_step(cur, step).result;
    return cur;
}

// ---------------------------------------------------------------------------
// Centralizer-isomorphism condition

struct PieceKey {
    std::size_t factor = 0;
    FrobOrbit orbit;
    std::int64_t mult = 1;
    std::int64_t copies = 1;
};

struct CentralizerCheck {
    bool holds = true;
    std::string reason;
    Int source_dim = 0;
    Int target_dim = 0;
    // matched (source piece, target piece) descriptions when the map is an iso
    std::vector<std::pair<std::string, std::string>> witness;
};

namespace detail {

inline std::vector<PieceKey> piece_keys(const InertialParam& phi) {
    std::vector<PieceKey> keys;
    for (std::size_t i = 0; i < phi.data.size(); ++i) {
        std::int64_t mult = copies_multiplier(phi.group.factors[i], phi.kind, phi.group.base.p);
        for (const WeightedOrbit& wo : phi.data[i])
            keys.push_back(PieceKey{i, wo.orbit, wo.mult, wo.orbit.size * mult});
    }
    return keys;
}

inline std::string describe_piece(const PieceKey& k) {
    std::ostringstream os;
    os << "factor " << k.factor << ": orb(" << k.orbit.rep.level << ":" << k.orbit.rep.residue
       << ")~" << k.orbit.size << " x" << k.mult << " -> GL_" << k.mult << "^" << k.copies;
    return os.str();
}

}  // namespace detail

// Decides whether the morphism induces an isomorphism of centralizers at phi:
// the per-step correspondence of isotypic pieces must be a bijection matching
// (e, copies) componentwise, guarded by the dimension equality on both ends.
inline CentralizerCheck centralizer_condition(const LHom& hom, const InertialParam& phi) {
    if (!(phi.group == hom.source)) throw validation_error("parameter does not live on the source group");
    CentralizerCheck check;
    check.source_dim = centralizer_dim(centralizer_shape(phi));

    InertialParam cur = phi;
    std::vector<PieceKey> cur_keys = detail::piece_keys(cur);
    // final_of[s] = current piece holding source piece s (valid while bijective)
    std::vector<std::size_t> final_of(cur_keys.size());
    for (std::size_t s = 0; s < final_of.size(); ++s) final_of[s] = s;
    std::vector<PieceKey> source_keys = cur_keys;

    for (const LHomStep& step : hom.chain) {
        StepTrace trace = detail::push_step(cur, step);
        std::vector<PieceKey> next_keys = detail::piece_keys(trace.result);
        std::vector<std::int64_t> hit(cur_keys.size(), 0);
        std::vector<std::size_t> forward(cur_keys.size(), 0);
        for (std::size_t t = 0; t < trace.sources.size() && check.holds; ++t) {
            if (trace.sources[t].size() != 1) {
                check.holds = false;
                check.reason = "isotypic pieces merge under the transfer";
                break;
            }
            std::size_t s = trace.sources[t][0];
            ++hit[s];
            forward[s] = t;
            if (next_keys[t].mult != cur_keys[s].mult || next_keys[t].copies != cur_keys[s].copies) {
                check.holds = false;
                check.reason = "component mismatch: " + detail::describe_piece(cur_keys[s]) +
                               " vs " + detail::describe_piece(next_keys[t]);
            }
        }
        if (check.holds)
            for (std::size_t s = 0; s < hit.size(); ++s)
                if (hit[s] != 1) {
                    check.holds = false;
                    check.reason = "isotypic piece splits under the transfer";
                }
        if (check.holds)
            for (std::size_t& f : final_of) f = forward[f];
        cur = trace.result;
        cur_keys = std::move(next_keys);
        if (!check.holds) break;
    }
    // compute the final parameter and dimension even after a failure
    InertialParam target = pushforward(hom, phi);
    check.target_dim = centralizer_dim(centralizer_shape(target));
    if (check.holds && check.source_dim != check.target_dim) {
        check.holds = false;
        check.reason = "centralizer dimensions differ";
    }
    if (check.holds) {
        std::vector<PieceKey> target_keys = detail::piece_keys(target);
        for (std::size_t s = 0; s < source_keys.size(); ++s)
            check.witness.emplace_back(detail::describe_piece(source_keys[s]),
                                       detail::describe_piece(target_keys[final_of[s]]));
    }
    return check;
}

// ---------------------------------------------------------------------------
// Strict unipotent factorization

struct UnipotentFactorization {
    GLTypeGroup group;  // the unramified GL-type group attached to the block
    LHom hom;           // pushforward(hom, trivial) recovers the parameter
};

// Factors phi through the trivial parameter of its unramified group: base
// change from the intermediate field, one automorphic induction per isotypic
// piece twisted by the orbit representative, a Levi step assembling the
// pieces, and a finite-order unramified twist placeholder.
inline UnipotentFactorization strict_unipotent_factorization(const InertialParam& phi) {
    GLTypeGroup g_phi = unipotent_group(phi);
    LHom hom{g_phi, {}};

    // flattened piece indices per original factor
    std::vector<std::vector<std::size_t>> factor_pieces(phi.data.size());
    std::size_t flat = 0;
    for (std::size_t i = 0; i < phi.data.size(); ++i)
        for (std::size_t j = 0; j < phi.data[i].size(); ++j) factor_pieces[i].push_back(flat++);

    for (std::size_t i = 0; i < phi.data.size(); ++i) {
        ExtShape mid = intermediate_field(phi.group.factors[i].ext, phi.kind, phi.group.base.p);
        std::int64_t ram = phi.group.factors[i].ext.e / mid.e;
        if (ram > 1)
            hom.chain.push_back(BaseChangeStep{ExtShape{ram, 1}, factor_pieces[i]});
    }

    AutIndStep autind;
    autind.per_factor.resize(flat);
    for (std::size_t i = 0; i < phi.data.size(); ++i)
        for (std::size_t j = 0; j < phi.data[i].size(); ++j) {
            const WeightedOrbit& wo = phi.data[i][j];
            AutIndFactor a;
            a.degree = wo.orbit.size;
            if (!wo.orbit.rep.is_trivial()) a.twist = wo.orbit.rep;
            autind.per_factor[factor_pieces[i][j]] = a;
        }
    hom.chain.push_back(std::move(autind));
    hom.chain.push_back(LeviEmbedStep{factor_pieces});
    hom.chain.push_back(UnramTwistStep{false, 1});
    return UnipotentFactorization{std::move(g_phi), std::move(hom)};
}

// ---------------------------------------------------------------------------
// Reduction plan

enum class ReductionTag {
    shapiro,
    levi,
    unramified_aut_ind,
    totally_ramified_base_change,
    unramified_twist,
    hecke_simple_type,
};

struct ReductionStep {
    ReductionTag tag;
    std::size_t factor = 0;
    ExtShape ext;               // shapiro payload
    std::int64_t degree = 1;    // induction degree or base-change degree
    HeckeDescriptor hecke;      // terminal payload
};

inline std::string reduction_tag_name(ReductionTag tag) {
    switch (tag) {
        case ReductionTag::shapiro: return "Shapiro";
        case ReductionTag::levi: return "Levi";
        case ReductionTag::unramified_aut_ind: return "UnramifiedAutInd";
        case ReductionTag::totally_ramified_base_change: return "TotallyRamifiedBaseChange";
        case ReductionTag::unramified_twist: return "UnramifiedTwist";
        case ReductionTag::hecke_simple_type: return "HeckeSimpleType";
    }
    return "?";
}

// Verified proof-reduction chain for the block of pushforward(hom, phi'):
// Shapiro transport to plain GL factors, Levi splitting of isotypic pieces,
// then per piece the unramified automorphic induction or totally ramified
// base change base cases, an unramified twist when the inducing character is
// nontrivial, terminating in the Hecke descriptor. Every emitted base case is
// itself checked against the centralizer condition.
inline std::vector<ReductionStep> reduction_plan(const InertialParam& phi_prime, const LHom& hom) {
    CentralizerCheck check = centralizer_condition(hom, phi_prime);
    if (!check.holds)
        throw validation_error("reduction plan requires the centralizer condition: " + check.reason);
    InertialParam phi = pushforward(hom, phi_prime);

    std::vector<ReductionStep> plan;

    // base-change degrees accumulated per final factor, walking the chain
    GLTypeGroup cur = hom.source;
    std::vector<std::int64_t> bc_applied(cur.factors.size(), 1);
    InertialParam state = phi_prime;
    for (const LHomStep& step : hom.chain) {
        if (const auto* bc = std::get_if<BaseChangeStep>(&step)) {
            if (bc->ext.e > 1) {
                ReductionStep r{ReductionTag::totally_ramified_base_change};
                r.degree = bc->ext.e;
                plan.push_back(r);
                // the base case must hold on its own at the current state
                LHom atomic{cur, {step}};
                if (!centralizer_condition(atomic, state).holds)
                    throw validation_error("totally ramified base change base case fails");
                if (bc->factors.empty())
                    for (auto& b : bc_applied) b *= bc->ext.e;
                else
                    for (std::size_t i : bc->factors) bc_applied[i] *= bc->ext.e;
            }
        } else if (const auto* levi = std::get_if<LeviEmbedStep>(&step)) {
            std::vector<std::int64_t> merged;
            for (const auto& grp : levi->groups) merged.push_back(bc_applied[grp.front()]);
            bc_applied = std::move(merged);
        } else if (const auto* iso = std::get_if<FactorIsoStep>(&step)) {
            std::vector<std::int64_t> permuted;
            for (std::size_t j : iso->perm) permuted.push_back(bc_applied[j]);
            bc_applied = std::move(permuted);
        }
        state = detail::push_step(state, step).result;
        cur = state.group;
    }

    for (std::size_t i = 0; i < phi.group.factors.size(); ++i) {
        ExtShape ext = phi.group.factors[i].ext;
        ExtShape residual{ext.e / bc_applied[i], ext.f};
        if (!residual.is_trivial()) {
            ReductionStep r{ReductionTag::shapiro};
            r.factor = i;
            r.ext = residual;
            plan.push_back(r);
        }
    }
    for (std::size_t i = 0; i < phi.data.size(); ++i) {
        if (phi.data[i].size() > 1) {
            ReductionStep r{ReductionTag::levi};
            r.factor = i;
            plan.push_back(r);
        }
    }
    for (std::size_t i = 0; i < phi.data.size(); ++i) {
        for (const WeightedOrbit& wo : phi.data[i]) {
            if (wo.orbit.size > 1) {
                ReductionStep r{ReductionTag::unramified_aut_ind};
                r.factor = i;
                r.degree = wo.orbit.size;
                plan.push_back(r);
                // verify the base case: the single-piece factorization
                GLTypeGroup sub = make_group({GLFactor{wo.mult * wo.orbit.size, phi.group.factors[i].ext}},
                                             phi.group.base);
                InertialParam sub_phi = validate(sub, phi.kind, {{WeightedOrbit{wo.orbit, wo.mult}}});
                UnipotentFactorization fact = strict_unipotent_factorization(sub_phi);
                if (!centralizer_condition(fact.hom, trivial_param(fact.group, phi.kind)).holds)
                    throw validation_error("automorphic induction base case fails");
            }
            if (!wo.orbit.rep.is_trivial()) {
                ReductionStep r{ReductionTag::unramified_twist};
                r.factor = i;
                plan.push_back(r);
            }
        }
    }
    ReductionStep terminal{ReductionTag::hecke_simple_type};
    terminal.hecke = hecke_descriptor(phi);
    plan.push_back(terminal);
    return plan;
}

// ---------------------------------------------------------------------------
// CLI mini-language: steps joined by '|', e.g.
//   "levi:1,1>2"  "bc:e=3,f=1"  "autind:f=2"  "autind:f=2,twist=8@2"
//   "twist:ord=3"  "twist:ord=inf"  "perm:1,0"

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::int64_t parse_i64(const std::string& s) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw validation_error("cannot parse integer '" + s + "'");
    }
}

}  // namespace detail

inline LHomStep parse_lhom_step(const std::string& spec, const GLTypeGroup& current) {
    auto colon = spec.find(':');
    std::string verb = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (verb == "levi") {
        auto gt = rest.find('>');
        if (gt == std::string::npos) throw validation_error("levi spec needs 'ranks>total'");
        std::vector<std::int64_t> ranks;
        for (const std::string& r : detail::split(rest.substr(0, gt), ','))
            ranks.push_back(detail::parse_i64(r));
        std::int64_t total = detail::parse_i64(rest.substr(gt + 1));
        std::int64_t sum = 0;
        for (std::int64_t r : ranks) sum += r;
        if (sum != total) throw validation_error("levi ranks do not sum to the target rank");
        // match the rank pattern against a consecutive run of source factors
        for (std::size_t start = 0; start + ranks.size() <= current.factors.size(); ++start) {
            bool match = true;
            for (std::size_t k = 0; k < ranks.size(); ++k)
                if (current.factors[start + k].rank != ranks[k]) { match = false; break; }
            if (!match) continue;
            LeviEmbedStep levi;
            std::vector<std::size_t> merged;
            for (std::size_t k = 0; k < ranks.size(); ++k) merged.push_back(start + k);
            for (std::size_t i = 0; i < start; ++i) levi.groups.push_back({i});
            levi.groups.push_back(merged);
            for (std::size_t i = start + ranks.size(); i < current.factors.size(); ++i)
                levi.groups.push_back({i});
            return levi;
        }
        throw validation_error("levi ranks do not match the source factors");
    }
    if (verb == "bc") {
        ExtShape ext{1, 1};
        for (const std::string& kv : detail::split(rest, ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw validation_error("bad base change spec");
            std::string key = kv.substr(0, eq);
            std::int64_t val = detail::parse_i64(kv.substr(eq + 1));
            if (key == "e") ext.e = val;
            else if (key == "f") ext.f = val;
            else throw validation_error("unknown base change key '" + key + "'");
        }
        return BaseChangeStep{ext, {}};
    }
    if (verb == "autind") {
        std::int64_t degree = 0;
        std::optional<TameChar> twist;
        for (const std::string& kv : detail::split(rest, ',')) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw validation_error("bad autind spec");
            std::string key = kv.substr(0, eq);
            std::string val = kv.substr(eq + 1);
            if (key == "f") {
                degree = detail::parse_i64(val);
            } else if (key == "twist") {
                auto at = val.find('@');
                if (at == std::string::npos) throw validation_error("twist characters are residue@level");
                Int residue(val.substr(0, at));
                std::int64_t level = detail::parse_i64(val.substr(at + 1));
                twist = canonicalize(level, residue, current.base);
            } else {
                throw validation_error("unknown autind key '" + key + "'");
            }
        }
        if (degree < 1) throw validation_error("autind needs f=<degree>");
        AutIndStep step;
        for (std::size_t i = 0; i < current.factors.size(); ++i)
            step.per_factor.push_back(AutIndFactor{degree, twist});
        return step;
    }
    if (verb == "twist") {
        auto eq = rest.find('=');
        if (eq == std::string::npos || rest.substr(0, eq) != "ord")
            throw validation_error("twist spec needs ord=<n|inf>");
        std::string val = rest.substr(eq + 1);
        if (val == "inf") return UnramTwistStep{true, 0};
        return UnramTwistStep{false, detail::parse_i64(val)};
    }
    if (verb == "perm") {
        FactorIsoStep iso;
        for (const std::string& p : detail::split(rest, ','))
            iso.perm.push_back(static_cast<std::size_t>(detail::parse_i64(p)));
        return iso;
    }
    throw validation_error("unknown morphism verb '" + verb + "'");
}

inline LHom parse_lhom(const GLTypeGroup& source, const std::string& spec) {
    LHom hom{source, {}};
    GLTypeGroup current = source;
    for (const std::string& part : detail::split(spec, '|')) {
        if (part.empty()) continue;
        LHomStep step = parse_lhom_step(part, current);
        current = apply_step(current, step);
        hom.chain.push_back(std::move(step));
    }
    return hom;
}

}  // namespace blockdual
