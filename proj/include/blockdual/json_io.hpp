#pragma once

// JSON encodings of the public value types. Residues are always decimal
// strings; other integers are emitted as numbers when they fit.

#include <string>
#include <vector>

#include <json.hpp>

#include "blockdual/lhoms.hpp"
#include "blockdual/multisegments.hpp"
#include "blockdual/parameters.hpp"

namespace blockdual {

using json = nlohmann::ordered_json;

inline json int_to_json(const Int& v) {
    static const Int max_exact = (Int(1) << 53);
    if (v >= 0 && v < max_exact) return json(static_cast<std::int64_t>(v));
    return json(v.str());
}

inline Int int_from_json(const json& j) {
    if (j.is_string()) return Int(j.get<std::string>());
    return Int(j.get<std::int64_t>());
}

inline json to_json(const ExtShape& ext) { return json{{"e", ext.e}, {"f", ext.f}}; }

inline ExtShape ext_from_json(const json& j) {
    return make_ext_shape(j.at("e").get<std::int64_t>(), j.at("f").get<std::int64_t>());
}

inline json to_json(const ResidueDatum& base) {
    return json{{"p", int_to_json(base.p)}, {"a", base.a}};
}

inline ResidueDatum residue_datum_from_json(const json& j) {
    return residue_datum_from_pa(int_from_json(j.at("p")), j.at("a").get<std::int64_t>());
}

inline std::string kind_name(const InertiaKind& kind) {
    switch (kind.tag) {
        case InertiaTag::full_inertia: return "inertia";
        case InertiaTag::prime_to_ell: return "ell-prime";
        case InertiaTag::wild: return "wild";
    }
    return "?";
}

inline InertiaKind kind_from_name(const std::string& name, const Int& ell = 0) {
    if (name == "inertia") return InertiaKind::full();
    if (name == "ell-prime") return InertiaKind::prime_to(ell);
    if (name == "wild") return InertiaKind::wild_inertia();
    throw validation_error("unknown inertia kind '" + name + "'");
}

inline json to_json(const TameChar& chi) {
    return json{{"level", chi.level}, {"residue", chi.residue.str()}};
}

inline TameChar char_from_json(const json& j, const ResidueDatum& base) {
    return canonicalize(j.at("level").get<std::int64_t>(), Int(j.at("residue").get<std::string>()), base);
}

inline json to_json(const FrobOrbit& orbit) {
    return json{{"rep", to_json(orbit.rep)}, {"size", orbit.size}};
}

inline json to_json(const GLTypeGroup& g) {
    json factors = json::array();
    for (const GLFactor& f : g.factors) factors.push_back(json{{"n", f.rank}, {"ext", to_json(f.ext)}});
    return factors;
}

inline GLTypeGroup group_from_json(const json& j, const ResidueDatum& base) {
    std::vector<GLFactor> factors;
    for (const json& f : j)
        factors.push_back(GLFactor{f.at("n").get<std::int64_t>(), ext_from_json(f.at("ext"))});
    return make_group(std::move(factors), base);
}

inline json pairs_to_json(const InertialParam& phi) {
    json pairs = json::array();
    for (std::size_t i = 0; i < phi.data.size(); ++i)
        for (const WeightedOrbit& wo : phi.data[i])
            pairs.push_back(json{{"factor", i}, {"orbit", to_json(wo.orbit)}, {"mult", wo.mult}});
    return pairs;
}

inline json to_json(const InertialParam& phi) {
    json out{{"group", to_json(phi.group)},
             {"q", int_to_json(phi.group.base.q)},
             {"kind", kind_name(phi.kind)}};
    if (phi.kind.tag == InertiaTag::prime_to_ell) out["ell"] = int_to_json(phi.kind.ell);
    out["pairs"] = pairs_to_json(phi);
    return out;
}

// Accepts pairs entries carrying either an "orbit" (representative + size) or
// a bare "char"; orbits are recomputed during validation either way.
inline InertialParam param_from_json(const json& j, const GLTypeGroup& group, const InertiaKind& kind) {
    std::vector<std::vector<WeightedOrbit>> raw(group.factors.size());
    for (const json& entry : j.at("pairs")) {
        std::size_t factor = entry.value("factor", 0);
        if (factor >= group.factors.size()) throw validation_error("pair names a missing factor");
        TameChar rep = entry.contains("char")
                           ? char_from_json(entry.at("char"), group.base)
                           : char_from_json(entry.at("orbit").at("rep"), group.base);
        raw[factor].push_back(WeightedOrbit{FrobOrbit{rep, 1, 1}, entry.at("mult").get<std::int64_t>()});
    }
    return validate(group, kind, raw);
}

inline json to_json(const CentralizerShape& shape) {
    json out = json::array();
    for (const auto& [e, copies] : shape.components) out.push_back(json::array({e, copies}));
    return out;
}

inline json to_json(const HeckeDescriptor& h) {
    json out = json::array();
    for (const auto& [e, m] : h.tensor_factors) out.push_back(json::array({e, m}));
    return out;
}

inline json to_json(const Multisegment& m) {
    json segments = json::array();
    for (const Segment& s : m.segments)
        segments.push_back(json{{"line", s.line}, {"offset", s.offset}, {"length", s.length}});
    return json{{"segments", segments}};
}

inline Multisegment multisegment_from_json(const json& j) {
    std::vector<Segment> segments;
    for (const json& s : j.at("segments"))
        segments.push_back(Segment{s.at("line").get<std::string>(), s.at("offset").get<std::int64_t>(),
                                   s.at("length").get<std::int64_t>()});
    return make_multisegment(std::move(segments));
}

inline json to_json(const LHomStep& step) {
    if (const auto* levi = std::get_if<LeviEmbedStep>(&step)) {
        json groups = json::array();
        for (const auto& grp : levi->groups) groups.push_back(grp);
        return json{{"step", "levi"}, {"groups", groups}};
    }
    if (const auto* bc = std::get_if<BaseChangeStep>(&step)) {
        json out{{"step", "base-change"}, {"ext", to_json(bc->ext)}};
        if (!bc->factors.empty()) out["factors"] = bc->factors;
        return out;
    }
    if (const auto* ai = std::get_if<AutIndStep>(&step)) {
        json per = json::array();
        for (const AutIndFactor& a : ai->per_factor) {
            json entry{{"f", a.degree}};
            if (a.twist) entry["twist"] = to_json(*a.twist);
            per.push_back(entry);
        }
        return json{{"step", "aut-ind"}, {"per_factor", per}};
    }
    if (const auto* tw = std::get_if<UnramTwistStep>(&step)) {
        return json{{"step", "unramified-twist"},
                    {"order", tw->infinite_order ? json("infinite") : json(tw->order)}};
    }
    const auto& iso = std::get<FactorIsoStep>(step);
    return json{{"step", "factor-iso"}, {"perm", iso.perm}};
}

inline json to_json(const LHom& hom) {
    json chain = json::array();
    for (const LHomStep& step : hom.chain) chain.push_back(to_json(step));
    return json{{"source", to_json(hom.source)}, {"chain", chain}};
}

inline json to_json(const ReductionStep& step) {
    json out{{"tag", reduction_tag_name(step.tag)}};
    switch (step.tag) {
        case ReductionTag::shapiro:
            out["factor"] = step.factor;
            out["ext"] = to_json(step.ext);
            break;
        case ReductionTag::levi:
        case ReductionTag::unramified_twist:
            out["factor"] = step.factor;
            break;
        case ReductionTag::unramified_aut_ind:
            out["factor"] = step.factor;
            out["degree"] = step.degree;
            break;
        case ReductionTag::totally_ramified_base_change:
            out["degree"] = step.degree;
            break;
        case ReductionTag::hecke_simple_type:
            out["hecke"] = to_json(step.hecke);
            break;
    }
    return out;
}

// One atlas entry: the parameter plus its derived invariants.
inline json block_to_json(const InertialParam& phi) {
    return json{{"pairs", pairs_to_json(phi)},
                {"centralizer", to_json(centralizer_shape(phi))},
                {"G_phi", to_json(unipotent_group(phi))},
                {"hecke", to_json(hecke_descriptor(phi))}};
}

inline json atlas_to_json(const GLTypeGroup& group, const InertiaKind& kind,
                          const std::vector<InertialParam>& blocks) {
    json out{{"group", to_json(group)},
             {"q", int_to_json(group.base.q)},
             {"p", int_to_json(group.base.p)},
             {"a", group.base.a},
             {"kind", kind_name(kind)}};
    if (kind.tag == InertiaTag::prime_to_ell) out["ell"] = int_to_json(kind.ell);
    json arr = json::array();
    for (const InertialParam& phi : blocks) arr.push_back(block_to_json(phi));
    out["blocks"] = arr;
    return out;
}

}  // namespace blockdual
