#ifndef SGL_SEMANTICS_HPP
#define SGL_SEMANTICS_HPP

#include "sgl/effectivity.hpp"
#include "sgl/kernels.hpp"
#include "sgl/profiles.hpp"
#include "sgl/syntax.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace sgl {

using Interpretation = std::variant<Kernel, EffectivityFn>;

/// Finite game model: primitive games interpreted by kernels or effectivity
/// functions, atoms by state sets. The empty game is always Dirac.
class GameModel {
public:
    GameModel(SpacePtr space, std::map<std::string, Interpretation> games, std::map<std::string, StateSet> atoms);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return space_->size(); }

    const std::map<std::string, Interpretation>& games() const { return games_; }
    const std::map<std::string, StateSet>& atoms() const { return atoms_; }

    bool has_game(const std::string& name) const { return games_.count(name) != 0; }
    /// Lifted interpretation; throws Error for unknown primitives.
    const EffectivityFn& effectivity(const std::string& name) const;
    /// The kernel when the primitive is kernel-interpreted, else nullptr.
    const Kernel* kernel(const std::string& name) const;
    /// Throws Error for atoms without a valuation.
    const StateSet& valuation(const std::string& atom) const;
    const EffectivityFn& dirac() const { return dirac_; }

    /// True when every primitive is given by a kernel.
    bool all_kernel() const;

private:
    SpacePtr space_;
    std::map<std::string, Interpretation> games_;
    std::map<std::string, EffectivityFn> lifted_;
    std::map<std::string, StateSet> atoms_;
    EffectivityFn dirac_;
};

struct EvalConfig {
    std::size_t star_depth = 50;
};

/// Three-valued validity set: states in `certain` satisfy the formula,
/// states outside `possible` do not, the rest are undecided.
struct TruthSet {
    StateSet certain;
    StateSet possible;

    bool decided() const { return certain == possible; }
    StateSet undecided() const { return possible.minus(certain); }
};

/// Evaluator for one model. Results are memoized per instance, keyed by the
/// printed game and the target set, so an instance must not be shared
/// between threads.
class Evaluator {
public:
    explicit Evaluator(const GameModel& model, EvalConfig config = {});

    const GameModel& model() const { return model_; }
    const EvalConfig& config() const { return config_; }

    Profile game(const Game& g, const StateSet& a);
    TruthSet formula3(const Formula& f);
    /// Throws Undecided when some state cannot be decided.
    StateSet formula(const Formula& f);

private:
    Profile eval(const Game& g, StateSet::Mask a);
    Profile eval_star(const Game& body, const Game& tail, StateSet::Mask a);
    Profile primitive_profile(const EffectivityFn& p, StateSet::Mask a) const;
    const EffectivityFn* atomic_ref(const Game& g);

    const GameModel& model_;
    EvalConfig config_;
    std::unordered_map<std::string, Profile> game_memo_;
    std::unordered_map<std::string, TruthSet> formula_memo_;
    std::unordered_map<std::string, EffectivityFn> test_memo_;
};

Profile eval_game(const GameModel& m, const Game& g, const StateSet& a, EvalConfig config = {});
StateSet eval_formula(const GameModel& m, const Formula& f, EvalConfig config = {});
TruthSet eval_formula3(const GameModel& m, const Formula& f, EvalConfig config = {});

struct MorphismReport {
    bool ok = true;
    std::string reason;
    std::optional<std::string> atom;
    std::optional<std::string> game;
};

/// f^{-1}(W_p) = V_p for every atom and an effectivity morphism for every primitive.
MorphismReport model_morphism_check(const std::vector<std::size_t>& f, const GameModel& m1, const GameModel& m2);

/// True when g uses only primitives, eps, tests, |, ; and *.
bool is_program(const Game& g);

/// K_tau for programs over kernel-interpreted (or Kripke-generated) primitives.
/// Throws UnsupportedFragment otherwise.
ExtKernel pdl_kernel(const GameModel& m, const Game& g, EvalConfig config = {});

/// {s | K_tau(s)(A) > q}.
StateSet kripke_fast_eval(const GameModel& m, const Game& g, const StateSet& a, const Rational& q,
                          EvalConfig config = {});

}  // namespace sgl

#endif
