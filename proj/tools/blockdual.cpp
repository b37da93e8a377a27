// Command-line front end: atlas generation, mod-ell fusion reports, transfer
// checks, unipotent factorizations, reduction plans and oracle cross-checks.
//
//   blockdual atlas --group GL:2 --q 3
//   blockdual fuse --group GL:2 --q 3 --ell 2
//   blockdual transfer --hom "bc:e=2,f=1" --param trivial --group GL:2 --q 3
//
// Groups are written GL:n or Res:e,f:GL:n, joined by 'x'. All numeric inputs
// are decimal strings parsed to arbitrary precision. Exit codes: 0 success,
// 1 validation error, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "blockdual/json_io.hpp"

namespace bd = blockdual;

namespace {

bd::GLTypeGroup parse_group_spec(const std::string& spec, const bd::ResidueDatum& base) {
    std::vector<bd::GLFactor> factors;
    for (const std::string& part : bd::detail::split(spec, 'x')) {
        if (part.rfind("GL:", 0) == 0) {
            factors.push_back(bd::GLFactor{bd::detail::parse_i64(part.substr(3)), bd::ExtShape{1, 1}});
        } else if (part.rfind("Res:", 0) == 0) {
            std::string rest = part.substr(4);
            auto second = rest.find(':');
            if (second == std::string::npos || rest.compare(second, 4, ":GL:") != 0)
                throw bd::validation_error("group factors are GL:n or Res:e,f:GL:n");
            auto comma = rest.find(',');
            if (comma == std::string::npos || comma > second)
                throw bd::validation_error("group factors are GL:n or Res:e,f:GL:n");
            std::int64_t e = bd::detail::parse_i64(rest.substr(0, comma));
            std::int64_t f = bd::detail::parse_i64(rest.substr(comma + 1, second - comma - 1));
            std::int64_t n = bd::detail::parse_i64(rest.substr(second + 4));
            factors.push_back(bd::GLFactor{n, bd::make_ext_shape(e, f)});
        } else {
            throw bd::validation_error("group factors are GL:n or Res:e,f:GL:n");
        }
    }
    return bd::make_group(std::move(factors), base);
}

struct CommonOpts {
    std::string group_spec;
    std::string q, p;
    std::int64_t a = 1;
    std::string ell;
    std::string kind_name = "inertia";
    std::string format = "table";
    std::string out_path;
};

bd::ResidueDatum residue_datum(const CommonOpts& opts) {
    if (!opts.q.empty()) return bd::residue_datum_from_q(bd::Int(opts.q));
    if (!opts.p.empty()) return bd::residue_datum_from_pa(bd::Int(opts.p), opts.a);
    throw bd::validation_error("a residue field is required: pass --q or --p/--a");
}

bd::InertiaKind inertia_kind(const CommonOpts& opts) {
    if (opts.kind_name == "ell-prime") {
        if (opts.ell.empty()) throw bd::validation_error("--K ell-prime requires --ell");
        return bd::InertiaKind::prime_to(bd::Int(opts.ell));
    }
    return bd::kind_from_name(opts.kind_name);
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(opts.out_path);
        if (!out) throw bd::validation_error("cannot open output file " + opts.out_path);
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
    }
}

std::string fmt_group(const bd::GLTypeGroup& g) {
    std::ostringstream os;
    for (std::size_t i = 0; i < g.factors.size(); ++i) {
        if (i) os << " x ";
        const bd::GLFactor& f = g.factors[i];
        if (!f.ext.is_trivial()) os << "Res[" << f.ext.e << "," << f.ext.f << "]";
        os << "GL" << f.rank;
    }
    return os.str();
}

std::string fmt_pairs(const bd::InertialParam& phi) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < phi.data.size(); ++i)
        for (const bd::WeightedOrbit& wo : phi.data[i]) {
            if (!first) os << ", ";
            first = false;
            if (phi.data.size() > 1) os << "#" << i << ":";
            os << "orb(" << wo.orbit.rep.level << ":" << wo.orbit.rep.residue << ")~" << wo.orbit.size
               << " x" << wo.mult;
        }
    return os.str();
}

std::string fmt_centralizer(const bd::CentralizerShape& shape) {
    std::ostringstream os;
    for (std::size_t i = 0; i < shape.components.size(); ++i) {
        if (i) os << " * ";
        os << "GL" << shape.components[i].first << "^" << shape.components[i].second;
    }
    return os.str();
}

std::string fmt_hecke(const bd::HeckeDescriptor& h, const bd::Int& q) {
    std::ostringstream os;
    for (std::size_t i = 0; i < h.tensor_factors.size(); ++i) {
        if (i) os << " * ";
        const auto& [e, m] = h.tensor_factors[i];
        os << "H(" << e << "," << bd::pow_int(q, m) << ")";
    }
    return os.str();
}

bd::InertialParam parse_param(const std::string& spec, const bd::GLTypeGroup& group,
                              const bd::InertiaKind& kind) {
    if (spec.empty() || spec == "trivial") return bd::trivial_param(group, kind);
    std::string text = spec;
    if (spec.front() != '{') {
        std::ifstream in(spec);
        if (!in) throw bd::validation_error("cannot open parameter file " + spec);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return bd::param_from_json(bd::json::parse(text), group, kind);
}

int run_atlas(const CommonOpts& opts) {
    bd::ResidueDatum base = residue_datum(opts);
    bd::GLTypeGroup group = parse_group_spec(opts.group_spec, base);
    bd::InertiaKind kind = inertia_kind(opts);
    std::vector<bd::InertialParam> blocks = bd::enumerate_blocks(group, kind);
    if (opts.format == "json") {
        emit(opts, bd::atlas_to_json(group, kind, blocks).dump(2));
        return 0;
    }
    std::ostringstream os;
    os << "# atlas " << fmt_group(group) << "  q=" << base.q << "  kind=" << bd::kind_name(kind);
    if (kind.tag == bd::InertiaTag::prime_to_ell) os << "  ell=" << kind.ell;
    os << "\n# " << blocks.size() << " blocks\n";
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        os << b << ": pairs [" << fmt_pairs(blocks[b]) << "]  C = " << fmt_centralizer(bd::centralizer_shape(blocks[b]))
           << "  G_phi = " << fmt_group(bd::unipotent_group(blocks[b]))
           << "  hecke = " << fmt_hecke(bd::hecke_descriptor(blocks[b]), base.q) << "\n";
    }
    emit(opts, os.str());
    return 0;
}

int run_fuse(const CommonOpts& opts) {
    if (opts.ell.empty()) throw bd::validation_error("fuse requires --ell");
    bd::ResidueDatum base = residue_datum(opts);
    bd::GLTypeGroup group = parse_group_spec(opts.group_spec, base);
    bd::Int ell(opts.ell);
    std::vector<bd::InertialParam> atlas = bd::enumerate_blocks(group, bd::InertiaKind::full());
    std::vector<bd::FusionClass> classes = bd::fuse_blocks(atlas, ell);
    if (opts.format == "json") {
        bd::json out{{"group", bd::to_json(group)},
                     {"q", bd::int_to_json(base.q)},
                     {"ell", bd::int_to_json(ell)},
                     {"block_count", atlas.size()}};
        bd::json arr = bd::json::array();
        for (const bd::FusionClass& c : classes)
            arr.push_back(bd::json{{"ell_param", bd::pairs_to_json(c.ell_param)},
                                   {"size", c.members.size()},
                                   {"members", c.members}});
        out["classes"] = arr;
        emit(opts, out.dump(2));
        return 0;
    }
    std::ostringstream os;
    os << "# fuse " << fmt_group(group) << "  q=" << base.q << "  ell=" << ell << "\n"
       << "# " << atlas.size() << " blocks -> " << classes.size() << " classes\n";
    for (std::size_t c = 0; c < classes.size(); ++c) {
        os << c << ": size " << classes[c].members.size() << "  ell'-param ["
           << fmt_pairs(classes[c].ell_param) << "]  members";
        for (std::size_t m : classes[c].members) os << " " << m;
        os << "\n";
    }
    emit(opts, os.str());
    return 0;
}

int run_transfer(const CommonOpts& opts, const std::string& hom_spec, const std::string& param_spec) {
    bd::ResidueDatum base = residue_datum(opts);
    bd::GLTypeGroup source = parse_group_spec(opts.group_spec, base);
    bd::InertiaKind kind = inertia_kind(opts);
    bd::LHom hom = bd::parse_lhom(source, hom_spec);
    bd::InertialParam phi_prime = parse_param(param_spec, source, kind);
    bd::InertialParam phi = bd::pushforward(hom, phi_prime);
    bd::CentralizerCheck check = bd::centralizer_condition(hom, phi_prime);
    bd::LHomClass cls = bd::classify(hom);
    if (opts.format == "json") {
        bd::json witness = bd::json::array();
        for (const auto& [s, t] : check.witness) witness.push_back(bd::json::array({s, t}));
        bd::json out{{"hom", bd::to_json(hom)},
                     {"source_param", bd::to_json(phi_prime)},
                     {"target_param", bd::to_json(phi)},
                     {"condition", check.holds},
                     {"reason", check.reason},
                     {"source_dim", bd::int_to_json(check.source_dim)},
                     {"target_dim", bd::int_to_json(check.target_dim)},
                     {"witness", witness},
                     {"tame", cls.tame},
                     {"bounded", cls.bounded}};
        emit(opts, out.dump(2));
        return 0;
    }
    std::ostringstream os;
    os << "# transfer along " << hom_spec << "\n"
       << "source: " << fmt_group(source) << "  param [" << fmt_pairs(phi_prime) << "]\n"
       << "target: " << fmt_group(phi.group) << "  param [" << fmt_pairs(phi) << "]\n"
       << "centralizer condition: " << (check.holds ? "true" : "false");
    if (!check.holds) os << "  (" << check.reason << ")";
    os << "\n"
       << "dims: " << check.source_dim << " -> " << check.target_dim << "\n";
    for (const auto& [s, t] : check.witness) os << "  " << s << "  <->  " << t << "\n";
    emit(opts, os.str());
    return 0;
}

int run_factorize(const CommonOpts& opts, const std::string& param_spec) {
    bd::ResidueDatum base = residue_datum(opts);
    bd::GLTypeGroup group = parse_group_spec(opts.group_spec, base);
    bd::InertiaKind kind = inertia_kind(opts);
    bd::InertialParam phi = parse_param(param_spec, group, kind);
    bd::UnipotentFactorization fact = bd::strict_unipotent_factorization(phi);
    bd::InertialParam recovered = bd::pushforward(fact.hom, bd::trivial_param(fact.group, kind));
    bool ok = recovered == phi &&
              bd::centralizer_condition(fact.hom, bd::trivial_param(fact.group, kind)).holds;
    if (opts.format == "json") {
        bd::json out{{"param", bd::to_json(phi)},
                     {"G_phi", bd::to_json(fact.group)},
                     {"hom", bd::to_json(fact.hom)},
                     {"verified", ok}};
        emit(opts, out.dump(2));
        return ok ? 0 : 1;
    }
    std::ostringstream os;
    os << "# factorize [" << fmt_pairs(phi) << "] on " << fmt_group(group) << "\n"
       << "G_phi = " << fmt_group(fact.group) << "\n"
       << "hom = " << bd::to_json(fact.hom)["chain"].dump() << "\n"
       << "verified: " << (ok ? "true" : "false") << "\n";
    emit(opts, os.str());
    return ok ? 0 : 1;
}

int run_plan(const CommonOpts& opts, const std::string& param_spec, const std::string& hom_spec) {
    bd::ResidueDatum base = residue_datum(opts);
    bd::GLTypeGroup group = parse_group_spec(opts.group_spec, base);
    bd::InertiaKind kind = inertia_kind(opts);
    bd::InertialParam phi_prime{};
    bd::LHom hom{};
    if (hom_spec.empty()) {
        // plan the block of the given parameter through its own factorization
        bd::InertialParam phi = parse_param(param_spec, group, kind);
        bd::UnipotentFactorization fact = bd::strict_unipotent_factorization(phi);
        phi_prime = bd::trivial_param(fact.group, kind);
        hom = fact.hom;
    } else {
        hom = bd::parse_lhom(group, hom_spec);
        phi_prime = parse_param(param_spec, group, kind);
    }
    std::vector<bd::ReductionStep> plan = bd::reduction_plan(phi_prime, hom);
    if (opts.format == "json") {
        bd::json arr = bd::json::array();
        for (const bd::ReductionStep& s : plan) arr.push_back(bd::to_json(s));
        emit(opts, bd::json{{"plan", arr}}.dump(2));
        return 0;
    }
    std::ostringstream os;
    os << "# reduction plan\n";
    for (const bd::ReductionStep& s : plan) {
        os << "- " << bd::reduction_tag_name(s.tag);
        if (s.tag == bd::ReductionTag::shapiro)
            os << " factor " << s.factor << " ext (" << s.ext.e << "," << s.ext.f << ")";
        if (s.tag == bd::ReductionTag::unramified_aut_ind) os << " degree " << s.degree;
        if (s.tag == bd::ReductionTag::totally_ramified_base_change) os << " degree " << s.degree;
        if (s.tag == bd::ReductionTag::hecke_simple_type) os << " " << fmt_hecke(s.hecke, base.q);
        os << "\n";
    }
    emit(opts, os.str());
    return 0;
}

int run_oracle(const CommonOpts& opts) {
    bd::ResidueDatum base = residue_datum(opts);
    bd::GLTypeGroup group = parse_group_spec(opts.group_spec, base);
    bd::InertiaKind kind = inertia_kind(opts);
    bd::OracleComparison cmp = bd::compare_with_oracle(group, kind);
    if (opts.format == "json") {
        emit(opts, bd::json{{"agree", cmp.agree},
                            {"oracle_count", bd::int_to_json(cmp.oracle_count)},
                            {"enumerated_count", bd::int_to_json(cmp.enumerated_count)},
                            {"detail", cmp.detail}}
                       .dump(2));
    } else {
        std::ostringstream os;
        os << "# oracle " << fmt_group(group) << "  q=" << base.q << "\n"
           << "oracle count:     " << cmp.oracle_count << "\n"
           << "enumerated count: " << cmp.enumerated_count << "\n"
           << "agree: " << (cmp.agree ? "true" : "false");
        if (!cmp.agree) os << "  (" << cmp.detail << ")";
        emit(opts, os.str());
    }
    return cmp.agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculator for dual-side block combinatorics of GL-type p-adic groups"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string hom_spec, param_spec;

    auto add_common = [&](CLI::App* cmd, bool needs_group = true) {
        if (needs_group) cmd->add_option("--group", opts.group_spec, "group spec, e.g. GL:2 or Res:2,1:GL:2")->required();
        cmd->add_option("--q", opts.q, "residue field cardinality (prime power)");
        cmd->add_option("--p", opts.p, "residue characteristic");
        cmd->add_option("--a", opts.a, "exponent: q = p^a");
        cmd->add_option("--ell", opts.ell, "auxiliary prime ell != p");
        cmd->add_option("--K", opts.kind_name, "inertia kind: inertia | ell-prime")
            ->check(CLI::IsMember({"inertia", "ell-prime"}));
        cmd->add_option("--format", opts.format, "output format")->check(CLI::IsMember({"json", "table"}));
        cmd->add_option("--out", opts.out_path, "write output to a file");
    };

    CLI::App* atlas = app.add_subcommand("atlas", "enumerate the blocks of a group");
    add_common(atlas);
    CLI::App* fuse = app.add_subcommand("fuse", "fuse blocks modulo ell");
    add_common(fuse);
    CLI::App* transfer = app.add_subcommand("transfer", "push a parameter along a morphism");
    add_common(transfer);
    transfer->add_option("--hom", hom_spec, "morphism chain, steps joined by '|'")->required();
    transfer->add_option("--param", param_spec, "'trivial', inline JSON or a file")->required();
    CLI::App* factorize = app.add_subcommand("factorize", "strict unipotent factorization of a parameter");
    add_common(factorize);
    factorize->add_option("--param", param_spec, "'trivial', inline JSON or a file")->required();
    CLI::App* plan = app.add_subcommand("plan", "reduction plan for a block");
    add_common(plan);
    plan->add_option("--param", param_spec, "'trivial', inline JSON or a file")->required();
    plan->add_option("--hom", hom_spec, "morphism chain; defaults to the strict factorization");
    CLI::App* oracle = app.add_subcommand("oracle", "cross-check enumeration against the brute-force oracle");
    add_common(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(atlas)) return run_atlas(opts);
        if (app.got_subcommand(fuse)) return run_fuse(opts);
        if (app.got_subcommand(transfer)) return run_transfer(opts, hom_spec, param_spec);
        if (app.got_subcommand(factorize)) return run_factorize(opts, param_spec);
        if (app.got_subcommand(plan)) return run_plan(opts, param_spec, hom_spec);
        if (app.got_subcommand(oracle)) return run_oracle(opts);
    } catch (const bd::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
