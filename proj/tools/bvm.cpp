// bvm — command-line surface for finite boolean-valued models: evaluation,
// universe enumeration, state operations (restrict/star/mix/quotient),
// congruence-law checking, kaleidoscopic truth over algebra families, finite
// measure-algebra models, and the worked-example demo.
//
// Exit codes: 0 success, 1 evaluation/module error, 2 usage error,
// 3 law-suite failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bvm/bvm.hpp"

using nlohmann::json;

namespace {

struct Output {
    bool as_json = false;
    json doc;

    void field(const std::string& key, const json& value) { doc[key] = value; }
    void line(const std::string& text) {
        if (!as_json) std::cout << text << "\n";
    }
    void flush() {
        if (as_json) std::cout << doc.dump(2) << "\n";
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw bvm::Error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::optional<bvm::Workspace> load_workspace(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return bvm::parse_workspace(read_file(path));
}

// Built-in algebras usable without a workspace: B0 is the four-element
// algebra {0,a,b,1}; B1..B6 have atoms t1..tN.
std::optional<bvm::BoolAlgebra> builtin_algebra(const std::string& name) {
    if (name == "B0") return bvm::make_algebra({"a", "b"});
    if (name.size() == 2 && name[0] == 'B' && name[1] >= '1' && name[1] <= '6') {
        std::vector<std::string> atoms;
        for (int i = 0; i < name[1] - '0'; ++i) atoms.push_back("t" + std::to_string(i + 1));
        return bvm::make_algebra(atoms);
    }
    return std::nullopt;
}

/// -a/-e accept an environment name (used as is), an algebra name (empty
/// environment), or a built-in algebra name.
bvm::Environment resolve_env(const std::optional<bvm::Workspace>& ws, const std::string& name) {
    if (ws) {
        if (auto it = ws->environments.find(name); it != ws->environments.end()) return it->second.env;
        if (auto it = ws->algebras.find(name); it != ws->algebras.end()) return bvm::Environment(it->second);
    }
    if (auto builtin = builtin_algebra(name)) return bvm::Environment(*builtin);
    throw bvm::Error("'" + name + "' names no environment, algebra, or built-in algebra");
}

json element_json(const bvm::BoolElement& x) { return bvm::serialize(x); }

// ---- subcommand payloads -----------------------------------------------------

int cmd_eval(Output& out, const std::optional<bvm::Workspace>& ws, const std::string& target,
             const std::string& formula_text, std::size_t budget) {
    auto env = resolve_env(ws, target);
    auto formula = bvm::parse_formula(formula_text);
    bvm::EvalOptions options;
    options.universe_budget = budget;
    auto value = bvm::eval(env, formula, options);
    out.field("command", "eval");
    out.field("algebra_or_env", target);
    out.field("formula", bvm::serialize(formula));
    out.field("value", element_json(value));
    out.field("models", value.is_one());
    out.line("value:  " + bvm::serialize(value));
    out.line("models: " + std::string(value.is_one() ? "true" : "false"));
    return 0;
}

int cmd_laws(Output& out, const std::optional<bvm::Workspace>& ws, const std::string& target, int rank,
             std::size_t budget, bool no_cache) {
    auto env = resolve_env(ws, target);
    bvm::LawOptions options;
    options.budget = budget;
    options.use_cache = !no_cache;
    auto counts = bvm::run_congruence_laws(env.algebra, rank, options);
    out.field("command", "laws");
    out.field("universe_size", counts.universe_size);
    out.field("reflexivity", {{"pass", counts.reflexivity_pass}, {"total", counts.reflexivity_total}});
    out.field("symmetry", {{"pass", counts.symmetry_pass}, {"total", counts.symmetry_total}});
    out.field("transitivity", {{"pass", counts.transitivity_pass}, {"total", counts.transitivity_total}});
    out.field("substitution", {{"pass", counts.substitution_pass}, {"total", counts.substitution_total}});
    out.field("all_pass", counts.all_pass());
    out.line("universe size: " + std::to_string(counts.universe_size));
    out.line(counts.summary());
    return counts.all_pass() ? 0 : 3;
}

int cmd_enumerate(Output& out, const std::optional<bvm::Workspace>& ws, const std::string& target, int rank,
                  std::size_t budget) {
    auto env = resolve_env(ws, target);
    auto universe = bvm::enumerate_universe(env.algebra, rank, budget);
    out.field("command", "enumerate");
    out.field("count", universe.size());
    json sets = json::array();
    for (const auto& u : universe) {
        sets.push_back(bvm::serialize(u));
        out.line(bvm::serialize(u));
    }
    out.field("sets", sets);
    out.line("count: " + std::to_string(universe.size()));
    return 0;
}

int cmd_restrict(Output& out, const std::optional<bvm::Workspace>& ws, const std::string& target,
                 const std::string& set_text, const std::string& at_text, bool toplevel) {
    auto env = resolve_env(ws, target);
    auto u = bvm::parse_bvset(set_text, env);
    auto a = bvm::parse_element(at_text, env.algebra);
    auto restricted = toplevel ? bvm::restrict_set_toplevel(u, a) : bvm::restrict_set(u, a);
    std::string atoms;
    for (const auto& n : restricted.algebra().atom_names()) atoms += (atoms.empty() ? "" : " ") + n;
    out.field("command", "restrict");
    out.field("situation", bvm::serialize(a));
    out.field("algebra_atoms", atoms);
    out.field("restricted", bvm::serialize(restricted));
    out.line("situation:       " + bvm::serialize(a));
    out.line("algebra atoms:   " + atoms);
    out.line("restricted set:  " + bvm::serialize(restricted));
    return 0;
}

int cmd_star(Output& out, const std::optional<bvm::Workspace>& ws, const std::string& target,
             const std::string& set_text, std::size_t max_situations) {
    auto env = resolve_env(ws, target);
    auto u = bvm::parse_bvset(set_text, env);
    auto profile = bvm::star_profile(u, max_situations);
    out.field("command", "star");
    out.field("base", bvm::serialize(profile.base));
    json entries = json::array();
    out.line("situation -> state");
    for (const auto& [situation, state] : profile.entries) {
        entries.push_back({{"situation", bvm::serialize(situation)}, {"state", bvm::serialize(state)}});
        out.line(bvm::serialize(situation) + " -> " + bvm::serialize(state));
    }
    out.field("entries", entries);
    return 0;
}

int cmd_mix(Output& out, const std::optional<bvm::Workspace>& ws, const std::string& target,
            const std::vector<std::string>& part_texts, const std::vector<std::string>& piece_texts) {
    auto env = resolve_env(ws, target);
    std::vector<bvm::BoolElement> parts;
    for (const auto& t : part_texts) parts.push_back(bvm::parse_element(t, env.algebra));
    bvm::Partition partition(env.algebra, parts);
    std::vector<bvm::BVSet> pieces;
    for (const auto& t : piece_texts) pieces.push_back(bvm::parse_bvset(t, env));
    auto mixture = bvm::mix(partition, pieces);
    out.field("command", "mix");
    out.field("mixture", bvm::serialize(mixture));
    out.line("mixture: " + bvm::serialize(mixture));
    json agreements = json::array();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        auto agreement = bvm::bv_eq(mixture, pieces[i]);
        const bool ok = bvm::leq(partition.parts()[i], agreement);
        agreements.push_back({{"part", bvm::serialize(partition.parts()[i])},
                              {"agreement", bvm::serialize(agreement)},
                              {"at_least_part", ok}});
        out.line("agreement with piece " + std::to_string(i) + ": " + bvm::serialize(agreement) +
                 "  (>= " + bvm::serialize(partition.parts()[i]) + ": " + (ok ? "yes" : "NO") + ")");
    }
    out.field("agreements", agreements);
    return 0;
}

int cmd_quotient(Output& out, const std::optional<bvm::Workspace>& ws, const std::string& target,
                 const std::string& atom_text, int rank, std::size_t budget) {
    auto env = resolve_env(ws, target);
    auto atom = bvm::parse_element(atom_text, env.algebra);
    auto carrier = bvm::enumerate_universe(env.algebra, rank, budget);
    auto model = bvm::quotient_by_atom(atom, carrier);
    out.field("command", "quotient");
    out.field("carrier_size", carrier.size());
    out.field("class_count", model.class_count());
    out.field("extensional", model.extensional);
    out.line("carrier size: " + std::to_string(carrier.size()));
    out.line("classes:      " + std::to_string(model.class_count()));
    out.line("extensional:  " + std::string(model.extensional ? "yes" : "no"));
    json classes = json::array();
    for (std::size_t c = 0; c < model.class_count(); ++c) {
        std::string members;
        for (std::size_t i = 0; i < carrier.size(); ++i)
            if (model.class_of[i] == c) members += (members.empty() ? "" : ", ") + bvm::serialize(carrier[i]);
        classes.push_back({{"representative", bvm::serialize(model.reps[c])}, {"members", members}});
        out.line("class " + std::to_string(c) + ": " + members);
    }
    out.field("classes", classes);
    json membership = json::array();
    for (std::size_t i = 0; i < model.class_count(); ++i) {
        std::string row;
        for (std::size_t j = 0; j < model.class_count(); ++j) row += model.membership[i][j] ? '1' : '0';
        membership.push_back(row);
        out.line("mem " + std::to_string(i) + ": " + row);
    }
    out.field("membership", membership);
    return 0;
}

int cmd_kaleido(Output& out, const std::optional<bvm::Workspace>& ws, const std::string& family_name,
                const std::string& formula_text, std::size_t budget) {
    if (!ws) throw bvm::Error("kaleido needs a workspace (-w) declaring the family");
    auto it = ws->families.find(family_name);
    if (it == ws->families.end()) throw bvm::Error("unknown family '" + family_name + "'");
    auto formula = bvm::parse_formula(formula_text);
    bvm::EvalOptions options;
    options.universe_budget = budget;
    auto report = bvm::kaleidoscopic_eval(it->second.family, formula, options);
    out.field("command", "kaleido");
    out.field("formula", bvm::serialize(formula));
    json members = json::array();
    for (const auto& entry : report.per_member) {
        members.push_back(
            {{"member", entry.name}, {"value", bvm::serialize(entry.value)}, {"holds", entry.holds}});
        out.line(entry.name + ": " + bvm::serialize(entry.value) + (entry.holds ? "  (holds)" : ""));
    }
    out.field("members", members);
    out.field("overall", report.overall);
    out.line(std::string("overall: ") + (report.overall ? "holds in every member" : "fails in some member"));
    return 0;
}

int cmd_scott_show(Output& out, const std::optional<bvm::Workspace>& ws, const std::string& space_name) {
    if (!ws) throw bvm::Error("scott commands need a workspace (-w)");
    auto it = ws->spaces.find(space_name);
    if (it == ws->spaces.end()) throw bvm::Error("unknown space '" + space_name + "'");
    const auto& entry = it->second;
    auto m = bvm::measure_algebra(entry.space);
    out.field("command", "scott show");
    json worlds = json::array();
    for (std::size_t i = 0; i < entry.space.world_count(); ++i) {
        worlds.push_back({{"world", entry.space.worlds()[i]}, {"weight", entry.space.weights()[i].to_string()}});
        out.line(entry.space.worlds()[i] + ": " + entry.space.weights()[i].to_string());
    }
    out.field("worlds", worlds);
    std::string atoms;
    for (const auto& n : m.algebra.atom_names()) atoms += (atoms.empty() ? "" : " ") + n;
    out.field("measure_algebra_atoms", atoms);
    out.line("measure algebra atoms: " + atoms);
    json reals = json::array();
    for (const auto& [name, rr] : entry.reals) {
        std::string values;
        for (const auto& v : rr.values()) values += (values.empty() ? "" : ", ") + v.to_string();
        reals.push_back({{"name", name}, {"values", values}});
        out.line("rr " + name + " = (" + values + ")");
    }
    out.field("random_reals", reals);
    return 0;
}

int cmd_scott_cmp(Output& out, const std::optional<bvm::Workspace>& ws, const std::string& space_name,
                  const std::string& op, const std::string& lhs, const std::string& rhs,
                  const std::string& constant) {
    if (!ws) throw bvm::Error("scott commands need a workspace (-w)");
    auto it = ws->spaces.find(space_name);
    if (it == ws->spaces.end()) throw bvm::Error("unknown space '" + space_name + "'");
    const auto& entry = it->second;
    auto real_of = [&](const std::string& name) {
        auto r = entry.reals.find(name);
        if (r == entry.reals.end()) throw bvm::Error("unknown random real '" + name + "'");
        return r->second;
    };
    auto parse_rational = [](const std::string& text) {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return bvm::Rational(std::stoll(text));
        return bvm::Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    };

    bvm::BoolElement value = [&] {
        if (op == "eq") return bvm::rr_eq(real_of(lhs), real_of(rhs));
        if (op == "leq") return bvm::rr_leq(real_of(lhs), real_of(rhs));
        if (op == "leqc") return bvm::rr_leq_const(real_of(lhs), parse_rational(constant));
        throw bvm::Error("unknown comparison '" + op + "' (use eq, leq, or leqc)");
    }();
    out.field("command", "scott cmp");
    out.field("op", op);
    out.field("value", bvm::serialize(value));
    out.field("certain", value.is_one());
    out.line("value:   " + bvm::serialize(value));
    out.line("certain: " + std::string(value.is_one() ? "true" : "false"));
    return 0;
}

// ---- the worked-example demo ---------------------------------------------------

int cmd_demo(Output& out) {
    using namespace bvm;
    auto B = make_algebra({"a", "b"});
    auto a = B.atom(0), b = B.atom(1);
    auto empty = BVSet::empty(B);
    auto single = BVSet::make(B, {{empty, B.one()}});
    auto xi = BVSet::make(B, {{empty, B.one()}, {single, B.one()}});
    auto u = BVSet::make(B, {{empty, a}, {single, b}});
    auto v = BVSet::make(B, {{empty, b}, {single, a}});
    auto eta = BVSet::make(B, {{u, B.one()}, {v, B.one()}});

    auto label = [&](const BVSet& s) -> std::string {
        if (s == empty) return "{}^";
        if (s == single) return "{{}}^";
        if (s == xi) return "xi";
        if (s == u) return "u";
        if (s == v) return "v";
        if (s == eta) return "eta";
        return serialize(s);
    };

    out.line("algebra B0 = {0, a, b, 1} with atoms a, b (a and b disjoint)");
    out.line("");
    out.line("xi  = " + serialize(xi) + "   (canonical name of {{},{{}}})");
    out.line("u   = " + serialize(u));
    out.line("v   = " + serialize(v));
    out.line("eta = " + serialize(eta));
    out.line("");
    out.line("expansion of [[xi = eta]] (each line closes one =/in subvalue;");
    out.line("inner values appear above the value they feed):");

    std::vector<std::string> trace;
    auto observer = [&](const char* op, const BVSet& lhs, const BVSet& rhs, const BoolElement* value,
                        int depth) {
        if (!value) return; // print on leave only
        std::string line(static_cast<std::size_t>(depth) * 2, ' ');
        line += "[[" + label(lhs) + (op == std::string("eq") ? " = " : " in ") + label(rhs) +
                "]] = " + serialize(*value);
        trace.push_back(line);
    };
    auto reference_value = ref_eq(xi, eta, observer);
    for (const auto& line : trace) out.line("  " + line);

    auto evaluator_value = bv_eq(xi, eta);
    const bool agreement = evaluator_value == reference_value;

    out.line("");
    out.line("literal pair:");
    out.line("  evaluator value:            " + serialize(evaluator_value));
    out.line("  reference expansion value:  " + serialize(reference_value));
    out.line("  agreement:                  " + std::string(agreement ? "yes" : "NO"));
    out.line("  value asserted alongside the original example: 1" +
             std::string(evaluator_value.is_one() ? "" : "  (differs from both computations here)"));

    // adjusted anti-correlated pair: u' = {∅̂↦a}, v' = {∅̂↦b}
    auto u_adj = BVSet::make(B, {{empty, a}});
    auto v_adj = BVSet::make(B, {{empty, b}});
    auto eta_adj = BVSet::make(B, {{u_adj, B.one()}, {v_adj, B.one()}});
    auto adjusted_eval = bv_eq(xi, eta_adj);
    auto adjusted_ref = ref_eq(xi, eta_adj);

    out.line("");
    out.line("adjusted anti-correlated pair (u' = bv { bv {}: {a} }, v' = bv { bv {}: {b} }):");
    out.line("  evaluator value:            " + serialize(adjusted_eval));
    out.line("  reference expansion value:  " + serialize(adjusted_ref));

    out.field("command", "demo paper-example");
    out.field("literal", json{{"evaluator", serialize(evaluator_value)},
                              {"reference", serialize(reference_value)},
                              {"published_claim", "1"},
                              {"agreement", agreement}});
    out.field("adjusted", json{{"evaluator", serialize(adjusted_eval)},
                               {"reference", serialize(adjusted_ref)},
                               {"agreement", adjusted_eval == adjusted_ref}});
    json jtrace = json::array();
    for (const auto& line : trace) jtrace.push_back(line);
    out.field("trace", jtrace);

    if (!agreement || !(adjusted_eval == adjusted_ref)) {
        std::cerr << "error: evaluator and reference expansion disagree\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite boolean-valued models: algebras, boolean-valued sets, truth values"};
    app.require_subcommand(1);

    bool as_json = false;
    app.add_flag("--json", as_json, "emit a machine-readable JSON document instead of plain text");

    std::string workspace_path, target, formula_text, set_text, at_text, atom_text, family_name;
    std::string space_name, op = "eq", lhs, rhs, constant;
    std::vector<std::string> part_texts, piece_texts;
    int rank = 2;
    std::size_t budget = 100000, max_situations = 4096;
    bool toplevel = false, no_cache = false;

    auto add_workspace = [&](CLI::App* cmd) {
        cmd->add_option("-w,--workspace", workspace_path, "workspace file (.bvw)");
    };
    auto add_target = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("-a,--algebra,-e,--env", target,
                                    "environment, algebra, or built-in algebra (B0..B6)");
        if (required) opt->required();
    };

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula's boolean value");
    add_workspace(eval_cmd);
    add_target(eval_cmd);
    eval_cmd->add_option("formula", formula_text, "formula text")->required();
    eval_cmd->add_option("--budget", budget, "universe budget for rank-bounded quantifiers");

    auto* laws_cmd = app.add_subcommand("laws", "run the congruence-law suite over the enumerated universe");
    add_workspace(laws_cmd);
    add_target(laws_cmd);
    laws_cmd->add_option("--rank", rank, "universe rank bound")->required();
    laws_cmd->add_option("--budget", budget, "enumeration budget");
    laws_cmd->add_flag("--no-cache", no_cache, "evaluate without the memo cache");

    auto* enum_cmd = app.add_subcommand("enumerate", "list the universe up to a rank bound");
    add_workspace(enum_cmd);
    add_target(enum_cmd);
    enum_cmd->add_option("--rank", rank, "universe rank bound")->required();
    enum_cmd->add_option("--budget", budget, "enumeration budget");

    auto* restrict_cmd = app.add_subcommand("restrict", "restrict a set to a situation");
    add_workspace(restrict_cmd);
    add_target(restrict_cmd);
    restrict_cmd->add_option("--set", set_text, "the set (bv{...}, name({...}), or a bound name)")->required();
    restrict_cmd->add_option("--at", at_text, "the situation, e.g. {a} or 1")->required();
    restrict_cmd->add_flag("--toplevel", toplevel, "one-level restriction (quasi-elements untouched)");

    auto* star_cmd = app.add_subcommand("star", "tabulate a set's state at every situation");
    add_workspace(star_cmd);
    add_target(star_cmd);
    star_cmd->add_option("--set", set_text, "the set")->required();
    star_cmd->add_option("--max-situations", max_situations, "tabulation budget");

    auto* mix_cmd = app.add_subcommand("mix", "mix pieces along a partition of unity");
    add_workspace(mix_cmd);
    add_target(mix_cmd);
    mix_cmd->add_option("--part", part_texts, "partition part (repeat per part)")->required();
    mix_cmd->add_option("--piece", piece_texts, "piece set (repeat per piece)")->required();

    auto* quotient_cmd = app.add_subcommand("quotient", "collapse the enumerated universe at an atom");
    add_workspace(quotient_cmd);
    add_target(quotient_cmd);
    quotient_cmd->add_option("--atom", atom_text, "the atom, e.g. {a}")->required();
    quotient_cmd->add_option("--rank", rank, "carrier rank bound")->required();
    quotient_cmd->add_option("--budget", budget, "enumeration budget");

    auto* kaleido_cmd = app.add_subcommand("kaleido", "evaluate a formula over a family of universes");
    add_workspace(kaleido_cmd);
    kaleido_cmd->add_option("-f,--family", family_name, "family name from the workspace")->required();
    kaleido_cmd->add_option("formula", formula_text, "formula text")->required();
    kaleido_cmd->add_option("--budget", budget, "universe budget for rank-bounded quantifiers");

    auto* scott_cmd = app.add_subcommand("scott", "probability spaces and random reals");
    scott_cmd->require_subcommand(1);
    auto* scott_show = scott_cmd->add_subcommand("show", "print a space, its measure algebra, and its reals");
    add_workspace(scott_show);
    scott_show->add_option("-s,--space", space_name, "space name")->required();
    auto* scott_cmp = scott_cmd->add_subcommand("cmp", "boolean value of a comparison between random reals");
    add_workspace(scott_cmp);
    scott_cmp->add_option("-s,--space", space_name, "space name")->required();
    scott_cmp->add_option("--op", op, "eq | leq | leqc")->required();
    scott_cmp->add_option("lhs", lhs, "random real name")->required();
    scott_cmp->add_option("rhs", rhs, "random real name (eq/leq)");
    scott_cmp->add_option("--const", constant, "rational constant (leqc)");

    std::string demo_what;
    auto* demo_cmd = app.add_subcommand("demo", "built-in demonstrations");
    demo_cmd->add_option("which", demo_what, "demo name: paper-example")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Output out;
    out.as_json = as_json;
    int status = 0;
    try {
        auto ws = load_workspace(workspace_path);
        if (eval_cmd->parsed()) status = cmd_eval(out, ws, target, formula_text, budget);
        else if (laws_cmd->parsed()) status = cmd_laws(out, ws, target, rank, budget, no_cache);
        else if (enum_cmd->parsed()) status = cmd_enumerate(out, ws, target, rank, budget);
        else if (restrict_cmd->parsed()) status = cmd_restrict(out, ws, target, set_text, at_text, toplevel);
        else if (star_cmd->parsed()) status = cmd_star(out, ws, target, set_text, max_situations);
        else if (mix_cmd->parsed()) status = cmd_mix(out, ws, target, part_texts, piece_texts);
        else if (quotient_cmd->parsed()) status = cmd_quotient(out, ws, target, atom_text, rank, budget);
        else if (kaleido_cmd->parsed()) status = cmd_kaleido(out, ws, family_name, formula_text, budget);
        else if (scott_show->parsed()) status = cmd_scott_show(out, ws, space_name);
        else if (scott_cmp->parsed()) status = cmd_scott_cmp(out, ws, space_name, op, lhs, rhs, constant);
        else if (demo_cmd->parsed()) {
            if (demo_what != "paper-example") {
                std::cerr << "unknown demo '" << demo_what << "' (available: paper-example)\n";
                return 2;
            }
            status = cmd_demo(out);
        }
    } catch (const bvm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    out.flush();
    return status;
}
