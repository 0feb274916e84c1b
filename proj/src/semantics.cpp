#include "sgl/semantics.hpp"

#include "sgl/deduction.hpp"
#include "sgl/error.hpp"

#include <algorithm>

namespace sgl {

namespace {

EffectivityFn lift(const Interpretation& i) {
    if (const auto* k = std::get_if<Kernel>(&i)) return from_kernel(*k);
    return std::get<EffectivityFn>(i);
}

const SpacePtr& interpretation_space(const Interpretation& i) {
    if (const auto* k = std::get_if<Kernel>(&i)) return k->space();
    return std::get<EffectivityFn>(i).space();
}

std::string join_names(const StateSet& s) {
    std::string out = "{";
    for (const auto& n : s.names()) out += (out.size() > 1 ? "," : "") + n;
    return out + "}";
}

}  // namespace

GameModel::GameModel(SpacePtr space, std::map<std::string, Interpretation> games, std::map<std::string, StateSet> atoms)
    : space_(std::move(space)), games_(std::move(games)), atoms_(std::move(atoms)), dirac_(dirac_effectivity(space_)) {
    for (const auto& [name, interp] : games_) {
        if (!is_identifier(name)) throw Error("invalid game name '" + name + "'");
        require_same_space(space_, interpretation_space(interp));
        lifted_.emplace(name, lift(interp));
    }
    for (const auto& [name, set] : atoms_) {
        if (!is_identifier(name)) throw Error("invalid atom name '" + name + "'");
        require_same_space(space_, set.space());
    }
}

const EffectivityFn& GameModel::effectivity(const std::string& name) const {
    auto it = lifted_.find(name);
    if (it == lifted_.end()) throw Error("unknown primitive game '" + name + "'");
    return it->second;
}

const Kernel* GameModel::kernel(const std::string& name) const {
    auto it = games_.find(name);
    if (it == games_.end()) throw Error("unknown primitive game '" + name + "'");
    return std::get_if<Kernel>(&it->second);
}

const StateSet& GameModel::valuation(const std::string& atom) const {
    auto it = atoms_.find(atom);
    if (it == atoms_.end()) throw Error("atom '" + atom + "' has no valuation");
    return it->second;
}

bool GameModel::all_kernel() const {
    return std::all_of(games_.begin(), games_.end(),
                       [](const auto& kv) { return std::holds_alternative<Kernel>(kv.second); });
}

// ---------------------------------------------------------------------------

Evaluator::Evaluator(const GameModel& model, EvalConfig config) : model_(model), config_(config) {
    if (config_.star_depth == 0) throw Error("star depth must be at least 1");
}

Profile Evaluator::game(const Game& g, const StateSet& a) {
    require_same_space(model_.space(), a.space());
    return eval(g, a.bits());
}

Profile Evaluator::primitive_profile(const EffectivityFn& p, StateSet::Mask a) const {
    const auto w = indicator(StateSet(model_.space(), a));
    std::vector<ProfileCell> cells;
    cells.reserve(p.size());
    for (std::size_t s = 0; s < p.size(); ++s) {
        cells.push_back(ProfileCell::exact(down_interval(sup_expectation(p, s, w), false)));
    }
    return Profile(std::move(cells));
}

const EffectivityFn* Evaluator::atomic_ref(const Game& g) {
    switch (g->kind) {
    case GameKind::Prim: return &model_.effectivity(g->name);
    case GameKind::Eps: return &model_.dirac();
    case GameKind::TestPos:
    case GameKind::TestNeg: {
        const std::string key = print(g);
        auto it = test_memo_.find(key);
        if (it == test_memo_.end()) {
            const StateSet phi = formula(g->test);
            it = test_memo_.emplace(key, from_kernel(test_kernel(phi, g->kind == GameKind::TestPos))).first;
        }
        return &it->second;
    }
    default: return nullptr;
    }
}

Profile Evaluator::eval(const Game& g, StateSet::Mask a) {
    const std::string key = print(g) + "@" + std::to_string(a);
    if (auto it = game_memo_.find(key); it != game_memo_.end()) return it->second;

    const Game h = normalize_head(g);
    Profile out;
    if (const EffectivityFn* p = atomic_ref(h)) {
        out = primitive_profile(*p, a);
    } else if (h->kind == GameKind::Dual) {
        const StateSet::Mask co = StateSet(model_.space(), a).complement().bits();
        const Profile inner = eval(h->left, co);
        std::vector<ProfileCell> cells;
        for (const auto& c : inner.cells()) cells.push_back(complement(c));
        out = Profile(std::move(cells));
    } else if (h->kind == GameKind::ChoiceA) {
        const Profile l = eval(h->left, a);
        const Profile r = eval(h->right, a);
        std::vector<ProfileCell> cells;
        for (std::size_t s = 0; s < l.size(); ++s) cells.push_back(choice_combine(l[s], r[s]));
        out = Profile(std::move(cells));
    } else if (h->kind == GameKind::Seq && h->left->kind == GameKind::StarA) {
        out = eval_star(h->left->left, h->right, a);
    } else if (h->kind == GameKind::Seq) {
        const EffectivityFn* p = atomic_ref(h->left);
        if (!p) throw InvariantViolation("head normal form has a non-atomic composition head: " + print(h));
        out = compose_prefix(*p, eval(h->right, a));
    } else {
        throw InvariantViolation("game not in head normal form: " + print(h));
    }
    game_memo_.emplace(key, out);
    return out;
}

// Streams body^n;tail for n = 0, 1, ... The profile of body;X depends only on
// the profile of X at the same target, so once a profile repeats an earlier
// one the stream cycles forever.
Profile Evaluator::eval_star(const Game& body, const Game& tail, StateSet::Mask a) {
    const std::size_t n_states = model_.size();
    std::vector<StarAccumulator> acc(n_states);
    Game term = tail;
    std::vector<Profile> seen;
    for (std::size_t n = 0; n < config_.star_depth; ++n) {
        Profile cur = eval(term, a);
        const auto again = std::find(seen.begin(), seen.end(), cur);
        if (again != seen.end()) {
            for (std::size_t s = 0; s < n_states; ++s) {
                bool lower = false;
                bool upper = false;
                for (auto it = again; it != seen.end(); ++it) {
                    const auto [l, u] = StarAccumulator::positivity((*it)[s]);
                    lower = lower || l;
                    upper = upper || u;
                }
                acc[s].settle(lower, upper);
            }
            break;
        }
        bool all_done = true;
        for (std::size_t s = 0; s < n_states; ++s) {
            acc[s].feed(cur[s], false);
            all_done = all_done && acc[s].done();
        }
        if (all_done) break;
        seen.push_back(std::move(cur));
        term = game::seq(body, term);
    }
    std::vector<ProfileCell> cells;
    for (const auto& x : acc) cells.push_back(x.result(config_.star_depth));
    return Profile(std::move(cells));
}

TruthSet Evaluator::formula3(const Formula& f) {
    const std::string key = print(f);
    if (auto it = formula_memo_.find(key); it != formula_memo_.end()) return it->second;
    const auto& space = model_.space();
    TruthSet out{StateSet::full(space), StateSet::full(space)};
    switch (f->kind) {
    case FormulaKind::Top: break;
    case FormulaKind::Atom: {
        const StateSet& v = model_.valuation(f->name);
        out = TruthSet{v, v};
        break;
    }
    case FormulaKind::And: {
        const TruthSet l = formula3(f->left);
        const TruthSet r = formula3(f->right);
        out = TruthSet{l.certain.intersect(r.certain), l.possible.intersect(r.possible)};
        break;
    }
    case FormulaKind::Diamond: {
        // Evaluation is monotone in the target set, so an undecided body is
        // bracketed by its certain and possible parts.
        const TruthSet body = formula3(f->left);
        const Profile lo = eval(f->game, body.certain.bits());
        const Profile hi = body.decided() ? lo : eval(f->game, body.possible.bits());
        StateSet::Mask certain = 0;
        StateSet::Mask possible = 0;
        for (std::size_t s = 0; s < lo.size(); ++s) {
            if (lo[s].certain.member(f->bound)) certain |= StateSet::Mask{1} << s;
            if (hi[s].possible.member(f->bound)) possible |= StateSet::Mask{1} << s;
        }
        out = TruthSet{StateSet(space, certain), StateSet(space, possible)};
        break;
    }
    }
    formula_memo_.emplace(key, out);
    return out;
}

StateSet Evaluator::formula(const Formula& f) {
    TruthSet t = formula3(f);
    if (!t.decided()) {
        throw Undecided("'" + print(f) + "' is undecided at " + join_names(t.undecided()) + " (iteration cap " +
                        std::to_string(config_.star_depth) + ")");
    }
    return t.certain;
}

Profile eval_game(const GameModel& m, const Game& g, const StateSet& a, EvalConfig config) {
    return Evaluator(m, config).game(g, a);
}

StateSet eval_formula(const GameModel& m, const Formula& f, EvalConfig config) {
    return Evaluator(m, config).formula(f);
}

TruthSet eval_formula3(const GameModel& m, const Formula& f, EvalConfig config) {
    return Evaluator(m, config).formula3(f);
}

// ---------------------------------------------------------------------------

MorphismReport model_morphism_check(const std::vector<std::size_t>& f, const GameModel& m1, const GameModel& m2) {
    require_total_map(f, m1.size(), m2.size());
    MorphismReport r;
    auto fail = [&](std::string reason) {
        r.ok = false;
        r.reason = std::move(reason);
        return r;
    };
    for (const auto& [p, w] : m2.atoms()) {
        if (!m1.atoms().count(p)) {
            r.atom = p;
            return fail("atom '" + p + "' missing in the source model");
        }
    }
    for (const auto& [p, v] : m1.atoms()) {
        auto it = m2.atoms().find(p);
        r.atom = p;
        if (it == m2.atoms().end()) return fail("atom '" + p + "' missing in the target model");
        StateSet::Mask pre = 0;
        for (std::size_t s = 0; s < f.size(); ++s) {
            if (it->second.contains(f[s])) pre |= StateSet::Mask{1} << s;
        }
        if (pre != v.bits()) return fail("preimage of W_" + p + " differs from V_" + p);
    }
    r.atom.reset();
    for (const auto& [name, interp] : m2.games()) {
        if (!m1.has_game(name)) {
            r.game = name;
            return fail("game '" + name + "' missing in the source model");
        }
    }
    for (const auto& [name, interp] : m1.games()) {
        r.game = name;
        if (!m2.has_game(name)) return fail("game '" + name + "' missing in the target model");
        if (!eff_morphism_check(f, m1.effectivity(name), m2.effectivity(name))) {
            return fail("effectivity functions of '" + name + "' are not related by the map");
        }
    }
    r.game.reset();
    return r;
}

bool is_program(const Game& g) {
    switch (g->kind) {
    case GameKind::Prim:
    case GameKind::Eps:
    case GameKind::TestPos:
    case GameKind::TestNeg: return true;
    case GameKind::ChoiceA:
    case GameKind::Seq: return is_program(g->left) && is_program(g->right);
    case GameKind::StarA: return is_program(g->left);
    default: return false;
    }
}

namespace {

ExtKernel pdl_rec(const GameModel& m, const Game& g, Evaluator& ev) {
    switch (g->kind) {
    case GameKind::Prim: {
        if (const Kernel* k = m.kernel(g->name)) return ExtKernel::from(*k);
        KripkeVerdict v = kripke_generated(m.effectivity(g->name));
        if (!v.kernel) throw UnsupportedFragment("primitive '" + g->name + "' is not Kripke-generated");
        return ExtKernel::from(*v.kernel);
    }
    case GameKind::Eps: return ExtKernel::identity(m.space());
    case GameKind::TestPos:
    case GameKind::TestNeg:
        return ExtKernel::from(test_kernel(ev.formula(g->test), g->kind == GameKind::TestPos));
    case GameKind::ChoiceA: return kernel_sum(pdl_rec(m, g->left, ev), pdl_rec(m, g->right, ev));
    case GameKind::Seq: return convolve(pdl_rec(m, g->left, ev), pdl_rec(m, g->right, ev));
    case GameKind::StarA: return star_closure(pdl_rec(m, g->left, ev));
    default: throw UnsupportedFragment("'" + print(g) + "' is not a program: duals and demonic operators are excluded");
    }
}

}  // namespace

ExtKernel pdl_kernel(const GameModel& m, const Game& g, EvalConfig config) {
    Evaluator ev(m, config);
    return pdl_rec(m, g, ev);
}

StateSet kripke_fast_eval(const GameModel& m, const Game& g, const StateSet& a, const Rational& q, EvalConfig config) {
    require_same_space(m.space(), a.space());
    const ExtKernel k = pdl_kernel(m, g, config);
    StateSet::Mask out = 0;
    for (std::size_t s = 0; s < m.size(); ++s) {
        if (k.eval(s, a).exceeds(q)) out |= StateSet::Mask{1} << s;
    }
    return StateSet(m.space(), out);
}

}  // namespace sgl
