// Acceptance suite: one PASS/FAIL line per criterion.
//
//   sgl_acceptance            run all criteria
//   sgl_acceptance 4 7        run the listed criteria only

#include "helpers.hpp"
#include "random.hpp"

#include "sgl/deduction.hpp"
#include "sgl/equivalence.hpp"
#include "sgl/error.hpp"
#include "sgl/json_io.hpp"
#include "sgl/oracles.hpp"
#include "sgl/semantics.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace sgl;
using namespace sgl::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> run;
};

struct Masks {
    StateSet::Mask certain = 0;
    StateSet::Mask possible = 0;
    bool decided() const { return certain == possible; }
};

Masks at(const Profile& p, const Rational& x) {
    Masks m;
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (p[s].certain.member(x)) m.certain |= StateSet::Mask{1} << s;
        if (p[s].possible.member(x)) m.possible |= StateSet::Mask{1} << s;
    }
    return m;
}

StateSet::Mask full_mask(const GameModel& m) { return StateSet::full(m.space()).bits(); }

std::vector<std::size_t> identity_map(std::size_t n) {
    std::vector<std::size_t> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = i;
    return f;
}

StateSet::Mask preimage(const std::vector<std::size_t>& f, StateSet::Mask b) {
    StateSet::Mask out = 0;
    for (std::size_t s = 0; s < f.size(); ++s) {
        if ((b >> f[s]) & 1U) out |= StateSet::Mask{1} << s;
    }
    return out;
}

void collect_subgames(const Game& g, std::vector<Game>& out) {
    out.push_back(g);
    if (g->left) collect_subgames(g->left, out);
    if (g->right) collect_subgames(g->right, out);
}

std::size_t modal_depth(const Formula& f);

std::size_t modal_depth(const Game& g) {
    std::size_t d = 0;
    if (g->test) d = modal_depth(g->test);
    if (g->left) d = std::max(d, modal_depth(g->left));
    if (g->right) d = std::max(d, modal_depth(g->right));
    return d;
}

std::size_t modal_depth(const Formula& f) {
    switch (f->kind) {
    case FormulaKind::And: return std::max(modal_depth(f->left), modal_depth(f->right));
    case FormulaKind::Diamond: return 1 + std::max(modal_depth(f->game), modal_depth(f->left));
    default: return 0;
    }
}

bool substochastic(const ExtKernel& k) {
    for (std::size_t s = 0; s < k.size(); ++s) {
        const ExtValue v = k.eval(s, StateSet::full(k.space()));
        if (v.is_infinite() || v.value() > 1) return false;
    }
    return true;
}

Rational grid_q(std::size_t j, std::size_t grid) { return frac(j, grid); }

// ---------------------------------------------------------------- 1
Outcome epsilon_law() {
    Rng rng(1001);
    std::size_t checks = 0;
    std::size_t bad = 0;
    for (int round = 0; round < 100; ++round) {
        ModelShape ms;
        ms.states = pick(rng, 1, 4);
        ms.effectivity_percent = 30;
        const GameModel m = random_model(rng, ms);
        Evaluator ev(m);
        for (StateSet::Mask a = 0; a <= full_mask(m); ++a) {
            const Profile p = ev.game(game::eps(), StateSet(m.space(), a));
            for (std::size_t k = 0; k < 8; ++k) {
                const Masks got = at(p, grid_q(k, 8));
                ++checks;
                if (got.certain != a || got.possible != a) ++bad;
            }
        }
    }
    return {bad == 0, std::to_string(checks) + " (A, q) checks on 100 models, " + std::to_string(bad) + " mismatches"};
}

// ---------------------------------------------------------------- 2
Outcome convolution_agreement() {
    Rng rng(1002);
    std::size_t checks = 0;
    std::size_t bad = 0;
    for (int round = 0; round < 80; ++round) {
        ModelShape ms;
        ms.states = pick(rng, 1, 5);
        ms.games = {"a", "b", "c"};
        ms.den = pick(rng, 2, 8);
        const GameModel m = random_model(rng, ms);
        const std::size_t k = pick(rng, 1, 4);
        std::vector<std::string> names;
        for (std::size_t i = 0; i < k; ++i) names.push_back(ms.games[pick(rng, 0, 2)]);
        Game g = game::prim(names[0]);
        Kernel product = *m.kernel(names[0]);
        for (std::size_t i = 1; i < k; ++i) {
            g = game::seq(g, game::prim(names[i]));
            product = convolve(product, *m.kernel(names[i]));
        }
        Evaluator ev(m);
        for (StateSet::Mask a = 0; a <= full_mask(m); ++a) {
            const StateSet set(m.space(), a);
            const Profile p = ev.game(g, set);
            for (std::size_t s = 0; s < m.size(); ++s) {
                const IntervalSet want = down_interval(dist_eval(product.row(s), set), false);
                ++checks;
                if (!(p[s].certain == want) || !(p[s].possible == want)) ++bad;
            }
        }
    }
    return {bad == 0, std::to_string(checks) + " state profiles of products of <= 4 kernels, " + std::to_string(bad) +
                          " mismatches"};
}

// ---------------------------------------------------------------- 3
Outcome star_closure_criterion() {
    std::ostringstream out;
    bool ok = true;

    auto one = numbered(1);
    const Kernel half({dist(one, {"1/2"})});
    const ExtKernel g = star_closure(half);
    const auto p50 = oracle::power_sum(half, 50);
    const bool geo = g.at(0, 0) == ExtValue(2) && p50[0][0] <= 2 &&
                     2 - p50[0][0] == Rational(1, 1) / (mpz_class(1) << 50);
    ok = ok && geo;
    out << "geometric entry " << g.at(0, 0).str() << (geo ? " (= 2, depth-50 sum below by 2^-50)" : " (wrong)");

    bool id_ok = true;
    for (std::size_t n = 1; n <= 4; ++n) {
        auto s = numbered(n);
        const ExtKernel x = star_closure(Kernel::identity(s));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) id_ok = id_ok && (i == j ? x.at(i, j).is_infinite() : x.at(i, j).is_zero());
        }
    }
    ok = ok && id_ok;
    out << "; identity diagonal " << (id_ok ? "inf" : "wrong");

    Rng rng(1003);
    std::size_t bad_fix = 0;
    std::size_t bad_partial = 0;
    std::size_t infinite = 0;
    for (int round = 0; round < 100; ++round) {
        auto s = numbered(pick(rng, 1, 5));
        const Kernel k = random_kernel(rng, s, pick(rng, 2, 8));
        const ExtKernel x = star_closure(k);
        const ExtKernel rhs = kernel_sum(ExtKernel::identity(s), convolve(ExtKernel::from(k), x));
        if (!(rhs == x)) ++bad_fix;
        if (!oracle::star_closure_mismatches(k, 50, 0).empty()) ++bad_partial;
        for (std::size_t i = 0; i < s->size(); ++i) {
            for (std::size_t j = 0; j < s->size(); ++j) infinite += x.at(i, j).is_infinite();
        }
    }
    ok = ok && bad_fix == 0 && bad_partial == 0;
    out << "; X = I + K*X on 100 random kernels: " << bad_fix << " failures, partial-sum bound: " << bad_partial
        << " failures (" << infinite << " infinite entries)";
    return {ok, out.str()};
}

// ---------------------------------------------------------------- 4
Outcome pdl_complement_law() {
    Rng rng(1004);
    GameShape shape;
    shape.duals = false;
    std::size_t programs = 0;
    std::size_t checks = 0;
    std::size_t undecided = 0;
    std::size_t bad = 0;
    std::size_t bad_under = 0;
    std::size_t bounded_programs = 0;
    std::size_t bounded_checks = 0;
    std::size_t bounded_bad = 0;
    std::size_t bad_programs = 0;
    std::string example;
    while (programs < 200) {
        ModelShape ms;
        ms.states = pick(rng, 1, 3);
        const GameModel m = random_model(rng, ms);
        const Game g = random_game(rng, pick(rng, 1, 6), shape);
        ExtKernel k(m.space());
        bool bounded = true;
        try {
            k = pdl_kernel(m, g);
            std::vector<Game> subs;
            collect_subgames(g, subs);
            for (const auto& sub : subs) bounded = bounded && substochastic(pdl_kernel(m, sub));
        } catch (const Undecided&) {
            continue;  // a nested test formula is undecided
        }
        ++programs;
        bounded_programs += bounded;
        Evaluator ev(m);
        bool program_bad = false;
        for (StateSet::Mask a = 0; a <= full_mask(m); ++a) {
            const StateSet set(m.space(), a);
            const Profile p = ev.game(g, set);
            for (std::size_t j = 0; j < 8; ++j) {
                const Rational x = grid_q(j, 8);
                const Masks got = at(p, x);
                StateSet::Mask fast = 0;
                for (std::size_t s = 0; s < m.size(); ++s) {
                    if (k.eval(s, set).exceeds(x)) fast |= StateSet::Mask{1} << s;
                }
                for (std::size_t s = 0; s < m.size(); ++s) {
                    const StateSet::Mask bit = StateSet::Mask{1} << s;
                    if (((got.certain ^ got.possible) & bit) != 0) {
                        ++undecided;
                        continue;
                    }
                    ++checks;
                    bounded_checks += bounded;
                    if (((got.certain ^ fast) & bit) != 0) {
                        ++bad;
                        bounded_bad += bounded;
                        if ((fast & bit) && !(got.certain & bit)) ++bad_under;
                        if (!program_bad && example.empty()) {
                            example = print(g) + " at " + m.space()->name(s) + ", A = " + block_name(set) +
                                      ", q = " + format_rational(x) + ": kernel " + k.eval(s, set).str() +
                                      ", game profile " + p[s].certain.str();
                        }
                        program_bad = true;
                    }
                }
            }
        }
        bad_programs += program_bad;
    }
    std::ostringstream out;
    out << programs << " programs, " << checks << " decided cells (" << undecided << " undecided skipped): " << bad
        << " disagreements in " << bad_programs << " programs, " << bad_under
        << " of them kernel > q while the game fails; programs whose every subterm kernel is substochastic: "
        << bounded_programs << " with " << bounded_checks << " cells, " << bounded_bad << " disagreements";
    if (!example.empty()) out << "; e.g. " << example;
    return {bad == 0, out.str()};
}

// ---------------------------------------------------------------- 5
Outcome distributivity() {
    Rng rng(1005);
    GameShape shape;
    shape.prims = {"a", "b", "c"};
    shape.duals = false;
    shape.stars = false;
    std::size_t triples = 0;
    std::size_t cells = 0;
    std::size_t bad = 0;
    std::size_t saturated_cells = 0;
    std::size_t unsaturated_bad = 0;
    std::string example;
    for (int round = 0; round < 200; ++round) {
        ModelShape ms;
        ms.states = pick(rng, 1, 3);
        ms.games = {"a", "b", "c"};
        const GameModel m = random_model(rng, ms);
        const Game t1 = random_game(rng, pick(rng, 1, 2), shape);
        const Game t2 = random_game(rng, pick(rng, 1, 2), shape);
        const Game t3 = random_game(rng, pick(rng, 1, 2), shape);
        const Game left = game::seq(t1, game::choice(t2, t3));
        const Game right = game::choice(game::seq(t1, t2), game::seq(t1, t3));
        ++triples;
        const ExtKernel tail = kernel_sum(pdl_kernel(m, t2), pdl_kernel(m, t3));
        Evaluator ev(m);
        for (StateSet::Mask a = 0; a <= full_mask(m); ++a) {
            const StateSet set(m.space(), a);
            bool saturated = false;
            for (std::size_t t = 0; t < m.size(); ++t) saturated = saturated || tail.eval(t, set).exceeds(1);
            const Profile pl = ev.game(left, set);
            const Profile pr = ev.game(right, set);
            for (std::size_t s = 0; s < m.size(); ++s) {
                ++cells;
                saturated_cells += saturated;
                if (pl[s] == pr[s]) continue;
                ++bad;
                unsaturated_bad += !saturated;
                if (example.empty()) {
                    example = print(left) + " vs " + print(right) + " at " + m.space()->name(s) + ", A = " +
                              block_name(set) + ": " + pl[s].certain.str() + " vs " + pr[s].certain.str();
                }
            }
        }
    }

    const GameModel w = load_model(data_file("nonkripke_distr.json"));
    const StateSet a = StateSet::of(w.space(), {"s0"});
    const Rational half(1, 2);
    const bool l = eval_game(w, parse_game("g;(b|c)"), a)[0].certain.member(half);
    const bool r = eval_game(w, parse_game("g;b|g;c"), a)[0].certain.member(half);
    const bool witness = l && !r;

    std::ostringstream out;
    out << triples << " random Kripke triples, " << cells << " cells: " << bad << " differ (" << unsaturated_bad
        << " where K_t2(t)(A) + K_t3(t)(A) <= 1 everywhere; " << saturated_cells << " cells have that sum above 1)";
    if (!example.empty()) out << ", e.g. " << example;
    out << "; non-Kripke witness at A = {s0}, q = 1/2: " << (witness ? "violation confirmed" : "NO violation");
    return {bad == 0 && witness, out.str()};
}

// ---------------------------------------------------------------- 6
Outcome determinacy() {
    Rng rng(1006);
    GameShape shape;
    shape.stars = false;
    std::size_t games = 0;
    std::size_t cells = 0;
    std::size_t bad_involution = 0;
    std::size_t bad_determinacy = 0;
    for (int round = 0; round < 250; ++round) {
        ModelShape ms;
        ms.states = pick(rng, 1, 3);
        ms.effectivity_percent = 30;
        const GameModel m = random_model(rng, ms);
        const Game g = random_game(rng, pick(rng, 1, 12), shape);
        ++games;
        Evaluator ev(m);
        for (StateSet::Mask a = 0; a <= full_mask(m); ++a) {
            const StateSet set(m.space(), a);
            const Profile p = ev.game(g, set);
            if (!(ev.game(game::dual(game::dual(g)), set) == p)) ++bad_involution;
            const Profile base = ev.game(g, set.complement());
            const Profile dual = ev.game(game::dual(g), set);
            for (std::size_t j = 0; j < 8; ++j) {
                const Rational x = grid_q(j, 8);
                const Masks d = at(dual, x);
                const Masks b = at(base, x);
                ++cells;
                if (d.certain != (full_mask(m) & ~b.possible) || d.possible != (full_mask(m) & ~b.certain)) {
                    ++bad_determinacy;
                }
            }
        }
    }
    std::ostringstream out;
    out << games << " star-free games (size <= 12): involution failures " << bad_involution << ", determinacy failures "
        << bad_determinacy << " of " << cells << " (A, q) checks";
    return {bad_involution == 0 && bad_determinacy == 0, out.str()};
}

// ---------------------------------------------------------------- 7
Outcome gtok() {
    Rng rng(1007);
    std::size_t bad_round = 0;
    for (int round = 0; round < 100; ++round) {
        auto s = numbered(pick(rng, 1, 4));
        const Kernel k = random_kernel(rng, s, 16);
        const KripkeVerdict v = kripke_generated(from_kernel(k));
        if (!v.kernel || !(*v.kernel == k)) ++bad_round;
    }

    const GameModel d = load_model(data_file("dirac_choice.json"));
    const KripkeVerdict dv = kripke_generated(d.effectivity("g"));
    bool dirac_ok = !dv.kernel && dv.first_failure == std::optional<std::size_t>(0) &&
                    dv.states[0].stage == KripkeStage::Axioms;
    std::string witness = "none";
    if (dirac_ok) {
        dirac_ok = false;
        for (const auto& viol : dv.states[0].axioms.violations) {
            if (viol.axiom != 5) continue;
            witness = block_name(viol.a);
            dirac_ok = viol.a == StateSet::of(d.space(), {"s0"});
        }
    }

    std::size_t bad_unique = 0;
    std::size_t implemented = 0;
    for (int round = 0; round < 100; ++round) {
        auto s = numbered(pick(rng, 1, 3));
        const bool kernel_case = coin(rng);
        const Kernel k = random_kernel(rng, s, 8);
        const EffectivityFn p = kernel_case ? from_kernel(k) : random_effectivity(rng, s, 8);
        for (std::size_t st = 0; st < s->size(); ++st) {
            std::vector<Dist> candidates = {k.row(st), random_dist(rng, s, 8), random_dist(rng, s, 8)};
            const MeasureExtraction e = mu_from_characteristic(characteristic_from_eff(p, st));
            if (e.mu) candidates.push_back(*e.mu);
            for (const auto& g : p.generators(st)) candidates.insert(candidates.end(), g.begin(), g.end());
            std::vector<Dist> hits;
            for (const auto& c : candidates) {
                if (implements_check(p, st, c)) hits.push_back(c);
            }
            implemented += !hits.empty();
            for (const auto& h : hits) bad_unique += !(h == hits.front());
            if (kernel_case && (hits.empty() || !(hits.front() == k.row(st)))) ++bad_unique;
        }
    }

    std::ostringstream out;
    out << "round trip failures " << bad_round << "/100; two-generator Dirac example: "
        << (dirac_ok ? "axiom 5 fails at A = " : "unexpected verdict, witness ") << witness
        << "; uniqueness violations " << bad_unique << " (" << implemented << " states implement some candidate)";
    return {bad_round == 0 && dirac_ok && bad_unique == 0, out.str()};
}

// ---------------------------------------------------------------- 8
Outcome test_operators() {
    Rng rng(1008);
    GameShape shape;
    shape.stars = false;
    std::size_t checks = 0;
    std::size_t bad = 0;
    std::size_t dual_free_checks = 0;
    std::size_t dual_free_bad = 0;
    std::string example;
    for (int round = 0; round < 300; ++round) {
        ModelShape ms;
        ms.states = pick(rng, 1, 3);
        ms.effectivity_percent = 30;
        const GameModel m = random_model(rng, ms);
        const Game tau = random_game(rng, pick(rng, 1, 6), shape);
        const Formula phi = random_formula(rng, pick(rng, 1, 3), shape);
        const bool dual_free = is_dual_free(tau);
        const Formula p = formula::atom("p");
        Evaluator ev(m);
        const StateSet vp = m.valuation("p");
        for (std::size_t j = 0; j < 8; ++j) {
            const Rational x = grid_q(j, 8);
            const TruthSet base = ev.formula3(formula::diamond(tau, x, phi));
            const TruthSet pos = ev.formula3(formula::diamond(game::seq(game::test(p), tau), x, phi));
            const TruthSet neg = ev.formula3(formula::diamond(game::seq(game::test_neg(p), tau), x, phi));
            if (!base.decided() || !pos.decided() || !neg.decided()) continue;
            for (int side = 0; side < 2; ++side) {
                const StateSet guard = side == 0 ? vp : vp.complement();
                const StateSet got = side == 0 ? pos.certain : neg.certain;
                const bool ok = got == guard.intersect(base.certain);
                ++checks;
                dual_free_checks += dual_free;
                if (ok) continue;
                ++bad;
                dual_free_bad += dual_free;
                if (example.empty()) {
                    std::ostringstream e;
                    e << "<" << (side == 0 ? "[p]?;" : "[p]!;") << "(" << print(tau) << ")>{" << format_rational(x)
                      << "} " << print(phi) << " holds at " << block_name(got) << ", law predicts "
                      << block_name(guard.intersect(base.certain));
                    example = e.str();
                }
            }
        }
    }
    std::ostringstream out;
    out << checks << " law checks on random star-free games: " << bad << " failures (dual-free subclass: "
        << dual_free_bad << " of " << dual_free_checks << ")";
    if (!example.empty()) out << "; e.g. " << example;
    return {bad == 0, out.str()};
}

// ---------------------------------------------------------------- 9
Outcome profile_algebra() {
    Rng rng(1009);
    std::size_t bad_choice = 0;
    std::size_t bad_star = 0;
    for (int round = 0; round < 500; ++round) {
        const IntervalSet r1 = random_interval_set(rng);
        const IntervalSet r2 = random_interval_set(rng);
        bad_choice += !oracle::choice_mismatches(r1, r2, 64).empty();
    }
    for (int round = 0; round < 500; ++round) {
        std::vector<IntervalSet> prefix;
        const std::size_t len = pick(rng, 0, 3);
        for (std::size_t i = 0; i < len; ++i) prefix.push_back(random_interval_set(rng));
        const auto tail = coin(rng) ? oracle::Tail::Empty : oracle::Tail::Full;
        bad_star += !oracle::star_mismatches(prefix, tail, 64, 50).empty();
    }
    std::ostringstream out;
    out << "500 choice pairs: " << bad_choice << " disagreeing; 500 star streams: " << bad_star
        << " disagreeing (grid 1/64)";
    return {bad_choice == 0 && bad_star == 0, out.str()};
}

// ---------------------------------------------------------------- 10
Outcome quotient_soundness() {
    Rng rng(1010);
    const EquivConfig config;
    std::size_t models = 0;
    std::size_t merged = 0;
    std::size_t formulas = 0;
    std::size_t bad_morphism = 0;
    std::size_t bad_validity = 0;
    std::size_t undecided = 0;
    for (int round = 0; round < 30; ++round) {
        ModelShape ms;
        ms.states = pick(rng, 1, 4);
        ms.games = {"a"};
        ms.atoms = {"p"};
        ms.den = pick(rng, 2, 4);
        const GameModel m = random_model(rng, ms);
        const Partition rho = refinement_partition(m);
        if (!congruence_check(m, rho).ok) {
            ++bad_morphism;
            continue;
        }
        const Factor f = factor_model(m, rho);
        ++models;
        merged += rho.size() < m.size();
        if (!model_morphism_check(f.map, m, f.model).ok) ++bad_morphism;

        const Enumeration e = enumerate_theories(m, config);
        std::vector<Formula> all;
        std::vector<Formula> bodies;
        for (const auto& [mask, phi] : e.definable) {
            all.push_back(phi);
            if (modal_depth(phi) < config.depth) bodies.push_back(phi);
        }
        for (const auto& g : small_games(m)) {
            for (const auto& body : bodies) {
                for (std::size_t j = 0; j < config.grid; ++j) all.push_back(formula::diamond(g, grid_q(j, config.grid), body));
            }
        }
        Evaluator e1(m);
        Evaluator e2(f.model);
        for (const auto& phi : all) {
            const TruthSet t1 = e1.formula3(phi);
            const TruthSet t2 = e2.formula3(phi);
            if (!t1.decided() || !t2.decided()) {
                ++undecided;
                continue;
            }
            ++formulas;
            if (preimage(f.map, t2.certain.bits()) != t1.certain.bits()) ++bad_validity;
        }
    }
    std::ostringstream out;
    out << models << " random Kripke models (" << merged << " with merged states): morphism failures " << bad_morphism
        << "; " << formulas << " enumerated formulas checked, " << bad_validity << " not preserved, " << undecided
        << " undecided skipped";
    return {bad_morphism == 0 && bad_validity == 0, out.str()};
}

// ---------------------------------------------------------------- 11
bool verified_cospan(const EquivResult& r, const GameModel& m1, const GameModel& m2) {
    if (r.verdict != EquivVerdict::Equivalent || !r.cospan) return false;
    const Cospan& c = *r.cospan;
    if (!model_morphism_check(c.left, m1, c.common).ok || !model_morphism_check(c.right, m2, c.common).ok) return false;
    std::set<std::size_t> hit(c.left.begin(), c.left.end());
    std::set<std::size_t> hit2(c.right.begin(), c.right.end());
    return hit.size() == c.common.size() && hit2.size() == c.common.size();
}

bool confirmed_distinction(const EquivResult& r, const GameModel& m1, const GameModel& m2) {
    if (r.verdict != EquivVerdict::Distinguished || !r.distinction) return false;
    const Distinction& d = *r.distinction;
    const GameModel& here = d.side == 1 ? m1 : m2;
    const GameModel& there = d.side == 1 ? m2 : m1;
    if (d.separations.size() != there.size()) return false;
    for (const auto& sep : d.separations) {
        if (eval_formula(here, sep.formula).contains(d.state) != sep.holds_at_state) return false;
        if (eval_formula(there, sep.formula).contains(sep.other) == sep.holds_at_state) return false;
    }
    if (d.combined) {
        if (!eval_formula(here, *d.combined).contains(d.state)) return false;
        if (!eval_formula(there, *d.combined).is_empty()) return false;
    }
    return true;
}

Outcome equivalence_pipeline() {
    Rng rng(1011);
    std::size_t factor_pairs = 0;
    std::size_t factor_bad = 0;
    for (int round = 0; round < 15; ++round) {
        ModelShape ms;
        ms.states = pick(rng, 1, 4);
        ms.games = {"a"};
        ms.atoms = {"p"};
        ms.den = 2;
        const GameModel m = random_model(rng, ms);
        const Factor f = factor_model(m, refinement_partition(m));
        ++factor_pairs;
        if (!verified_cospan(logical_equiv(m, f.model), m, f.model)) ++factor_bad;
    }

    const GameModel k2 = load_model(data_file("kripke2.json"));
    const GameModel sw = load_model(data_file("swapped.json"));
    const GameModel var = load_model(data_file("kripke2_variant.json"));
    const bool swapped_ok = verified_cospan(logical_equiv(k2, sw), k2, sw);
    const EquivResult diff = logical_equiv(k2, var);
    const bool distinct_ok = confirmed_distinction(diff, k2, var) && diff.distinction->combined.has_value();

    std::size_t random_pairs = 0;
    std::size_t separated = 0;
    std::size_t equivalent = 0;
    std::size_t bad_pairs = 0;
    for (int round = 0; round < 10; ++round) {
        ModelShape ms;
        ms.states = pick(rng, 1, 3);
        ms.games = {"a"};
        ms.atoms = {"p"};
        ms.den = 2;
        const GameModel m1 = random_model(rng, ms);
        const GameModel m2 = random_model(rng, ms);
        const EquivResult r = logical_equiv(m1, m2);
        ++random_pairs;
        if (r.verdict == EquivVerdict::Distinguished) {
            ++separated;
            bad_pairs += !confirmed_distinction(r, m1, m2);
        } else if (r.verdict == EquivVerdict::Equivalent) {
            ++equivalent;
            bad_pairs += !verified_cospan(r, m1, m2);
        }
    }

    std::ostringstream out;
    out << "m vs factor(m): " << factor_pairs - factor_bad << "/" << factor_pairs << " verified cospans; swapped copy: "
        << (swapped_ok ? "equivalent" : "NOT verified") << "; kripke2 vs variant: "
        << (distinct_ok ? "separated by " + print(*diff.distinction->combined) : std::string("NOT separated"))
        << "; random pairs: " << separated << " separated, " << equivalent << " equivalent, " << bad_pairs
        << " unconfirmed witnesses";
    return {factor_bad == 0 && swapped_ok && distinct_ok && bad_pairs == 0, out.str()};
}

// ---------------------------------------------------------------- 12
Outcome parser_criterion() {
    Rng rng(1012);
    GameShape shape;
    shape.prims = {"a", "b", "go_2"};
    shape.atoms = {"p", "q"};
    std::size_t bad_round = 0;
    for (int round = 0; round < 1000; ++round) {
        const Formula f = random_formula(rng, pick(rng, 1, 14), shape);
        if (!equal(parse_formula(print(f)), f)) ++bad_round;
    }
    std::size_t bad_norm = 0;
    GameShape gshape;
    for (int round = 0; round < 200; ++round) {
        ModelShape ms;
        ms.states = pick(rng, 1, 3);
        ms.effectivity_percent = 30;
        const GameModel m = random_model(rng, ms);
        const Game g = random_game(rng, pick(rng, 1, 10), gshape);
        const StateSet a = random_set(rng, m.space());
        if (!(eval_game(m, g, a) == eval_game(m, normalize_head(g), a))) ++bad_norm;
    }
    std::ostringstream out;
    out << "parse(print(f)) != f on " << bad_round << " of 1000 random formulas; normalizer changed the profile on "
        << bad_norm << " of 200 (game, model, A) triples";
    return {bad_round == 0 && bad_norm == 0, out.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "empty-game law", 2, epsilon_law},
        {2, "convolution agreement", 10, convolution_agreement},
        {3, "star closure", 5, star_closure_criterion},
        {4, "PDL complement law", 15, pdl_complement_law},
        {5, "distributivity", 5, distributivity},
        {6, "dual and determinacy", 10, determinacy},
        {7, "Kripke generation round trip", 10, gtok},
        {8, "test operators", 5, test_operators},
        {9, "profile algebra vs oracle", 20, profile_algebra},
        {10, "quotient soundness", 30, quotient_soundness},
        {11, "equivalence pipeline", 20, equivalence_pipeline},
        {12, "parser and normalizer", 10, parser_criterion},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

    int failed = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_seconds;
        const bool pass = o.pass && in_time;
        failed += !pass;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, c.budget_seconds);
        std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " (" << timing
                  << (in_time ? "" : ", over budget") << "): " << o.detail << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
