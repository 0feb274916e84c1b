// Command-line front end: model checking, profiles, Kripke checks,
// quotients, equivalence, normalization and oracle comparisons.

#include "sgl/deduction.hpp"
#include "sgl/equivalence.hpp"
#include "sgl/error.hpp"
#include "sgl/json_io.hpp"
#include "sgl/oracles.hpp"
#include "sgl/semantics.hpp"
#include "sgl/syntax.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace sgl;

constexpr int kDecided = 0;
constexpr int kUndecided = 1;
constexpr int kParse = 2;
constexpr int kUnsupported = 3;
constexpr int kInternal = 4;

struct RunConfig {
    std::size_t star_depth = 50;
    std::size_t depth = 3;
    std::size_t grid = 8;
    std::string format = "text";
    bool oracle = false;

    bool json() const { return format == "json"; }
    EquivConfig equiv() const { return EquivConfig{depth, grid, star_depth, EquivConfig{}.max_evaluations}; }
};

std::string join(const std::vector<std::string>& xs, const std::string& sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json map_json(const std::vector<std::size_t>& f, const SpacePtr& from, const SpacePtr& to) {
    Json out = Json::object();
    for (std::size_t s = 0; s < f.size(); ++s) out[from->name(s)] = to->name(f[s]);
    return out;
}

Json partition_json(const Partition& p) {
    Json out = Json::array();
    for (const auto& b : p.blocks()) out.push_back(state_set_to_json(b));
    return out;
}

// --- check -----------------------------------------------------------------

int cmd_check(const RunConfig& cfg, const std::string& model_path, const std::string& text) {
    const GameModel m = load_model(model_path);
    const Formula f = parse_formula(text);
    const TruthSet t = eval_formula3(m, f, EvalConfig{cfg.star_depth});
    const StateSet undecided = t.undecided();
    if (cfg.json()) {
        Json verdicts = Json::object();
        for (std::size_t s = 0; s < m.size(); ++s) {
            verdicts[m.space()->name(s)] = t.certain.contains(s) ? "holds" : undecided.contains(s) ? "undecided" : "fails";
        }
        Json out{{"formula", print(f)}, {"valid", state_set_to_json(t.certain)}, {"undecided", state_set_to_json(undecided)},
                 {"verdicts", verdicts}};
        if (!undecided.is_empty()) out["star_depth"] = cfg.star_depth;
        emit(out);
    } else {
        std::cout << "valid: " << join(t.certain.names()) << "\n";
        if (!undecided.is_empty()) {
            std::cout << "undecided (iteration cap " << cfg.star_depth << "): " << join(undecided.names()) << "\n";
        }
    }
    return undecided.is_empty() ? kDecided : kUndecided;
}

// --- profile ---------------------------------------------------------------

int cmd_profile(const RunConfig& cfg, const std::string& model_path, const std::string& text,
                const std::vector<std::string>& states) {
    const GameModel m = load_model(model_path);
    const Game g = parse_game(text);
    for (const auto& s : states) {
        if (!m.space()->contains(s)) throw ParseError("unknown state '" + s + "'");
    }
    const StateSet a = StateSet::of(m.space(), states);
    const Profile p = eval_game(m, g, a, EvalConfig{cfg.star_depth});

    Json out{{"game", print(g)}, {"target", state_set_to_json(a)}};
    Json cells = Json::object();
    bool exact = true;
    for (std::size_t s = 0; s < m.size(); ++s) {
        const auto& c = p[s];
        exact = exact && c.is_exact();
        Json cell{{"status", c.status()}, {"certain", interval_set_to_json(c.certain)}};
        if (!c.is_exact()) cell["possible"] = interval_set_to_json(c.possible);
        cells[m.space()->name(s)] = cell;
    }
    out["profile"] = cells;

    bool match = true;
    if (cfg.oracle) {
        // Cross-check against the program kernel: q is a member
        // iff K_tau(s)(A) > q.
        const ExtKernel k = pdl_kernel(m, g, EvalConfig{cfg.star_depth});
        Json oracle = Json::object();
        for (std::size_t s = 0; s < m.size(); ++s) {
            const ExtValue v = k.eval(s, a);
            const IntervalSet want = v.exceeds(1) ? IntervalSet::unit() : down_interval(v.value(), false);
            const bool ok = p[s].is_exact() && p[s].certain == want;
            match = match && ok;
            oracle[m.space()->name(s)] = Json{{"kernel", v.str()}, {"match", ok}};
        }
        out["oracle"] = oracle;
        out["match"] = match;
    }

    if (cfg.json()) {
        emit(out);
    } else {
        for (std::size_t s = 0; s < m.size(); ++s) {
            const auto& c = p[s];
            std::cout << m.space()->name(s) << ": " << c.certain.str();
            if (!c.is_exact()) std::cout << " .. " << c.possible.str();
            std::cout << " [" << c.status() << "]\n";
        }
        if (cfg.oracle) std::cout << "oracle match: " << (match ? "yes" : "no") << "\n";
    }
    if (cfg.oracle && !match) return kInternal;
    return exact ? kDecided : kUndecided;
}

// --- kripke-check ----------------------------------------------------------

Json verdict_json(const GameModel& m, const StateKripkeVerdict& v) {
    Json out{{"stage", stage_name(v.stage)}};
    if (!v.axioms.passed()) {
        Json list = Json::array();
        for (const auto& x : v.axioms.violations) {
            Json one{{"axiom", x.axiom}, {"A", state_set_to_json(x.a)}, {"detail", x.detail}};
            if (x.b) one["B"] = state_set_to_json(*x.b);
            list.push_back(one);
        }
        out["violations"] = list;
    }
    if (v.additivity_witness) {
        out["witness"] = Json{{"A", state_set_to_json(v.additivity_witness->first)},
                              {"B", state_set_to_json(v.additivity_witness->second)}};
    }
    if (v.row) out["row"] = dist_to_json(*v.row);
    (void)m;
    return out;
}

int cmd_kripke_check(const RunConfig& cfg, const std::string& model_path, const std::string& only) {
    const GameModel m = load_model(model_path);
    if (!only.empty() && !m.has_game(only)) throw ParseError("unknown primitive game '" + only + "'");
    Json games = Json::object();
    bool all_match = true;
    for (const auto& [name, interp] : m.games()) {
        if (!only.empty() && name != only) continue;
        const EffectivityFn& p = m.effectivity(name);
        const KripkeVerdict v = kripke_generated(p);
        Json g{{"kripke", v.kernel.has_value()}};
        if (v.kernel) {
            g["rows"] = kernel_to_json(*v.kernel);
            if (const Kernel* k = m.kernel(name)) g["matches_input"] = (*k == *v.kernel);
        } else {
            const std::size_t s = *v.first_failure;
            g["state"] = m.space()->name(s);
            g["verdict"] = verdict_json(m, v.states[s]);
        }
        if (cfg.oracle) {
            bool ok = true;
            for (std::size_t s = 0; s < p.size(); ++s) {
                const bool claims = v.states[s].stage == KripkeStage::Passed;
                // Only a passing state has a row to compare against.
                if (claims) ok = ok && oracle::portfolio_agrees(p, s, *v.states[s].row, cfg.grid);
            }
            g["oracle_match"] = ok;
            all_match = all_match && ok;
        }
        games[name] = g;
    }
    if (cfg.json()) {
        emit(Json{{"games", games}});
    } else {
        for (const auto& [name, g] : games.items()) {
            if (g["kripke"].get<bool>()) {
                std::cout << name << ": kripke: yes\n";
                for (const auto& [s, row] : g["rows"].items()) std::cout << "  " << s << " -> " << row.dump() << "\n";
            } else {
                std::cout << name << ": kripke: no (state " << g["state"].get<std::string>() << ", "
                          << g["verdict"]["stage"].get<std::string>() << ")\n";
                if (g["verdict"].contains("violations")) {
                    for (const auto& x : g["verdict"]["violations"]) {
                        std::cout << "  axiom " << x["axiom"].get<int>() << ": " << x["detail"].get<std::string>() << "\n";
                    }
                }
            }
            if (cfg.oracle) std::cout << "  oracle match: " << (g["oracle_match"].get<bool>() ? "yes" : "no") << "\n";
        }
    }
    return cfg.oracle && !all_match ? kInternal : kDecided;
}

// --- quotient --------------------------------------------------------------

int cmd_quotient(const RunConfig& cfg, const std::string& model_path, const std::string& mode) {
    const GameModel m = load_model(model_path);
    const Partition rho = logical_partition(m, mode == "enumeration" ? PartitionMode::Enumeration : PartitionMode::Refinement,
                                            cfg.equiv());
    const CongruenceReport rep = congruence_check(m, rho);
    Json out{{"mode", mode}, {"partition", partition_json(rho)}, {"congruence", rep.ok}};
    if (rep.ok) {
        const Factor f = factor_model(m, rho);
        out["factor"] = model_to_json(f.model);
        out["map"] = map_json(f.map, m.space(), f.model.space());
    } else {
        out["reason"] = rep.reason;
    }
    bool match = true;
    if (cfg.oracle) {
        const Partition other = logical_partition(
            m, mode == "enumeration" ? PartitionMode::Refinement : PartitionMode::Enumeration, cfg.equiv());
        match = other == rho;
        out["oracle_partition"] = partition_json(other);
        out["match"] = match;
    }
    if (cfg.json()) {
        emit(out);
    } else {
        std::cout << "blocks: " << rho.size() << " of " << m.size() << " states\n";
        for (const auto& b : rho.blocks()) std::cout << "  " << block_name(b) << "\n";
        std::cout << "congruence: " << (rep.ok ? "yes" : "no (" + rep.reason + ")") << "\n";
        if (cfg.oracle) std::cout << "oracle match: " << (match ? "yes" : "no") << "\n";
    }
    return cfg.oracle && !match ? kInternal : kDecided;
}

// --- equiv -----------------------------------------------------------------

int cmd_equiv(const RunConfig& cfg, const std::string& p1, const std::string& p2) {
    const GameModel m1 = load_model(p1);
    const GameModel m2 = load_model(p2);
    const EquivResult r = logical_equiv(m1, m2, cfg.equiv());
    Json out{{"verdict", verdict_name(r.verdict)}};
    if (!r.note.empty()) out["note"] = r.note;
    if (r.cospan) {
        out["cospan"] = Json{{"common", model_to_json(r.cospan->common)},
                             {"left", map_json(r.cospan->left, m1.space(), r.cospan->common.space())},
                             {"right", map_json(r.cospan->right, m2.space(), r.cospan->common.space())}};
    }
    if (r.distinction) {
        const auto& d = *r.distinction;
        const GameModel& own = d.side == 1 ? m1 : m2;
        const GameModel& other = d.side == 1 ? m2 : m1;
        Json seps = Json::array();
        for (const auto& s : d.separations) {
            seps.push_back(Json{{"other_state", other.space()->name(s.other)},
                                {"formula", print(s.formula)},
                                {"holds_at_state", s.holds_at_state}});
        }
        out["distinction"] = Json{{"model", d.side}, {"state", own.space()->name(d.state)}, {"separations", seps}};
        if (d.combined) out["distinction"]["formula"] = print(*d.combined);
    }
    if (cfg.json()) {
        emit(out);
    } else {
        std::cout << "verdict: " << verdict_name(r.verdict) << "\n";
        if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
        if (r.distinction) {
            const auto& d = out["distinction"];
            std::cout << "state " << d["state"].get<std::string>() << " of model " << d["model"].get<int>() << "\n";
            if (d.contains("formula")) std::cout << "formula: " << d["formula"].get<std::string>() << "\n";
            for (const auto& s : d["separations"]) {
                std::cout << "  vs " << s["other_state"].get<std::string>() << ": " << s["formula"].get<std::string>()
                          << (s["holds_at_state"].get<bool>() ? " (true here, false there)" : " (false here, true there)") << "\n";
            }
        }
    }
    return r.verdict == EquivVerdict::Undecided ? kUndecided : kDecided;
}

// --- normalize -------------------------------------------------------------

int cmd_normalize(const RunConfig& cfg, const std::string& text) {
    const Game g = parse_game(text);
    const Game n = normalize_head(g);
    if (cfg.json()) emit(Json{{"input", print(g)}, {"normal", print(n)}});
    else std::cout << print(n) << "\n";
    return kDecided;
}

// --- oracle ----------------------------------------------------------------

IntervalSet interval_arg(const std::string& text) {
    try {
        return interval_set_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("bad interval list: " + std::string(e.what()));
    }
}

int report(const RunConfig& cfg, Json out, bool match) {
    out["match"] = match;
    if (cfg.json()) emit(out);
    else {
        for (const auto& [k, v] : out.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    return match ? kDecided : kInternal;
}

int cmd_oracle_choice(const RunConfig& cfg, const std::string& a, const std::string& b) {
    const IntervalSet r1 = interval_arg(a);
    const IntervalSet r2 = interval_arg(b);
    const auto bad = oracle::choice_mismatches(r1, r2, 64);
    Json mism = Json::array();
    for (const auto& q : bad) mism.push_back(format_rational(q));
    return report(cfg, Json{{"fast", choice_combine(r1, r2).str()}, {"grid", 64}, {"mismatches", mism}}, bad.empty());
}

int cmd_oracle_star(const RunConfig& cfg, const std::vector<std::string>& terms, const std::string& tail) {
    std::vector<IntervalSet> prefix;
    for (const auto& t : terms) prefix.push_back(interval_arg(t));
    const auto kind = tail == "full" ? oracle::Tail::Full : oracle::Tail::Empty;
    const auto bad = oracle::star_mismatches(prefix, kind, 64, cfg.star_depth);
    const auto stream = [&](std::size_t n) -> StarTerm {
        if (n < prefix.size()) return StarTerm{prefix[n], false};
        return StarTerm{kind == oracle::Tail::Empty ? IntervalSet{} : IntervalSet::unit(), true};
    };
    const StarOutcome fast = star_combine(stream, cfg.star_depth);
    Json mism = Json::array();
    for (const auto& q : bad) mism.push_back(format_rational(q));
    return report(cfg,
                  Json{{"fast", fast.certified.str()}, {"exact", fast.exact}, {"grid", 64}, {"mismatches", mism}},
                  bad.empty());
}

int cmd_oracle_power(const RunConfig& cfg, const std::string& model_path, const std::string& name) {
    const GameModel m = load_model(model_path);
    const Kernel* k = m.kernel(name);
    if (!k) throw UnsupportedFragment("game '" + name + "' is not kernel-interpreted");
    const ExtKernel x = star_closure(*k);
    const auto sums = oracle::power_sum(*k, cfg.star_depth);
    const auto bad = oracle::star_closure_mismatches(*k, cfg.star_depth, Rational(1, 100));
    Json partial = Json::object();
    for (std::size_t s = 0; s < k->size(); ++s) {
        Json row = Json::object();
        for (std::size_t t = 0; t < k->size(); ++t) {
            if (sums[s][t] != 0) row[m.space()->name(t)] = format_rational(sums[s][t]);
        }
        partial[m.space()->name(s)] = row;
    }
    Json mism = Json::array();
    for (const auto& [s, t] : bad) mism.push_back(Json::array({m.space()->name(s), m.space()->name(t)}));
    return report(cfg, Json{{"closure", ext_kernel_to_json(x)}, {"partial_sums", partial}, {"depth", cfg.star_depth},
                            {"mismatches", mism}},
                  bad.empty());
}

int cmd_oracle_portfolio(const RunConfig& cfg, const std::string& model_path, const std::string& name) {
    const GameModel m = load_model(model_path);
    const EffectivityFn& p = m.effectivity(name);
    const KripkeVerdict v = kripke_generated(p);
    bool match = true;
    Json states = Json::object();
    for (std::size_t s = 0; s < p.size(); ++s) {
        const auto& sv = v.states[s];
        bool exhaustive = false;
        if (sv.row) exhaustive = oracle::portfolio_agrees(p, s, *sv.row, cfg.grid);
        // The fast verdict says Kripke iff the exhaustive check finds a row that agrees.
        const bool fast = sv.stage == KripkeStage::Passed;
        match = match && (fast == exhaustive);
        states[m.space()->name(s)] = Json{{"fast", stage_name(sv.stage)}, {"exhaustive", exhaustive}};
    }
    return report(cfg, Json{{"game", name}, {"states", states}}, match);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact model checker for probabilistic game logic"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--star-depth", cfg.star_depth, "iteration cap for angelic iteration")->check(CLI::PositiveNumber);
    app.add_option("--depth", cfg.depth, "modal depth of formula enumeration")->check(CLI::NonNegativeNumber);
    app.add_option("--grid", cfg.grid, "threshold grid denominator")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--oracle", cfg.oracle, "cross-check against brute-force oracles");

    std::string model, model2, text, mode = "refinement", game_name, tail = "empty";
    std::vector<std::string> states, terms;
    std::function<int()> run;

    auto* check = app.add_subcommand("check", "validity set of a formula");
    check->add_option("model", model)->required();
    check->add_option("formula", text)->required();
    check->callback([&] { run = [&] { return cmd_check(cfg, model, text); }; });

    auto* profile = app.add_subcommand("profile", "per-state membership profile of a game");
    profile->add_option("model", model)->required();
    profile->add_option("game", text)->required();
    profile->add_option("states", states, "target set");
    profile->callback([&] { run = [&] { return cmd_profile(cfg, model, text, states); }; });

    auto* kc = app.add_subcommand("kripke-check", "decide whether primitives are Kripke-generated");
    kc->add_option("model", model)->required();
    kc->add_option("game", game_name);
    kc->callback([&] { run = [&] { return cmd_kripke_check(cfg, model, game_name); }; });

    auto* quot = app.add_subcommand("quotient", "logical partition and factor model");
    quot->add_option("model", model)->required();
    quot->add_option("--mode", mode)->check(CLI::IsMember({"refinement", "enumeration"}));
    quot->callback([&] { run = [&] { return cmd_quotient(cfg, model, mode); }; });

    auto* eq = app.add_subcommand("equiv", "logical equivalence of two models");
    eq->add_option("model1", model)->required();
    eq->add_option("model2", model2)->required();
    eq->callback([&] { run = [&] { return cmd_equiv(cfg, model, model2); }; });

    auto* norm = app.add_subcommand("normalize", "head normal form of a game");
    norm->add_option("game", text)->required();
    norm->callback([&] { run = [&] { return cmd_normalize(cfg, text); }; });

    auto* orc = app.add_subcommand("oracle", "compare fast paths with brute-force oracles");
    orc->require_subcommand(1);
    auto* oc = orc->add_subcommand("choice", "choice rule on two interval lists (JSON)");
    std::string r1, r2;
    oc->add_option("r1", r1)->required();
    oc->add_option("r2", r2)->required();
    oc->callback([&] { run = [&] { return cmd_oracle_choice(cfg, r1, r2); }; });
    auto* os = orc->add_subcommand("star", "iteration rule on a stream prefix (JSON interval lists)");
    os->add_option("terms", terms)->required();
    os->add_option("--tail", tail)->check(CLI::IsMember({"empty", "full"}));
    os->callback([&] { run = [&] { return cmd_oracle_star(cfg, terms, tail); }; });
    auto* op = orc->add_subcommand("power", "star closure against truncated power sums");
    op->add_option("model", model)->required();
    op->add_option("game", game_name)->required();
    op->callback([&] { run = [&] { return cmd_oracle_power(cfg, model, game_name); }; });
    auto* opf = orc->add_subcommand("portfolio", "Kripke decision against exhaustive portfolio checks");
    opf->add_option("model", model)->required();
    opf->add_option("game", game_name)->required();
    opf->callback([&] { run = [&] { return cmd_oracle_portfolio(cfg, model, game_name); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kParse;
    }

    try {
        return run();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const UnsupportedFragment& e) {
        std::cerr << "unsupported fragment: " << e.what() << "\n";
        return kUnsupported;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kInternal;
    } catch (const Undecided& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return kUndecided;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kUndecided;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
}
