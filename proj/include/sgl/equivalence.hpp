#ifndef SGL_EQUIVALENCE_HPP
#define SGL_EQUIVALENCE_HPP

#include "sgl/semantics.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sgl {

/// Partition of a state space. Blocks are numbered by their least state.
class Partition {
public:
    /// `labels[s]` is any block identifier for state s.
    Partition(SpacePtr space, const std::vector<std::size_t>& labels);
    static Partition identity(const SpacePtr& space);
    /// Validates disjointness and coverage.
    static Partition from_blocks(const SpacePtr& space, const std::vector<StateSet>& blocks);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return count_; }
    std::size_t block_of(std::size_t s) const { return map_[s]; }
    const std::vector<std::size_t>& map() const { return map_; }
    StateSet block(std::size_t i) const;
    std::vector<StateSet> blocks() const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.map_ == b.map_; }

private:
    SpacePtr space_;
    std::vector<std::size_t> map_;
    std::size_t count_ = 0;
};

/// "{s0,s1}" style block name.
std::string block_name(const StateSet& block);

struct EquivConfig {
    std::size_t depth = 3;
    std::size_t grid = 8;
    std::size_t star_depth = 50;
    /// Upper bound on profile evaluations during enumeration.
    std::size_t max_evaluations = 200000;
};

/// Signature refinement: starts from atom membership and splits blocks by
/// the projected (block-mass) generator antichains of every primitive until
/// the partition is stable.
Partition refinement_partition(const GameModel& m);

struct Enumeration {
    Partition partition;
    /// Definable sets with the first formula found for each.
    std::map<StateSet::Mask, Formula> definable;
    std::size_t skipped_undecided = 0;
    std::size_t evaluations = 0;
};

/// All games of size <= 3 over the primitives and eps.
std::vector<Game> small_games(const GameModel& m);

/// Bounded literal definition: formulas of modal depth <= depth with games
/// of size <= 3 and thresholds j/grid. Throws ResourceLimit past the cap.
Enumeration enumerate_theories(const GameModel& m, const EquivConfig& config = {});

enum class PartitionMode { Refinement, Enumeration };
Partition logical_partition(const GameModel& m, PartitionMode mode, const EquivConfig& config = {});

struct CongruenceReport {
    bool ok = true;
    std::string reason;
    std::optional<std::string> atom;
    std::optional<std::string> game;
    std::optional<std::size_t> state;
    std::optional<std::size_t> other;
    /// Projected generator of `state` without a counterpart at `other`.
    std::optional<std::vector<std::vector<Rational>>> generator;
};

CongruenceReport congruence_check(const GameModel& m, const Partition& rho);

struct Factor {
    GameModel model;
    std::vector<std::size_t> map;  // f_rho
};

/// Factor model over blocks; throws Error when rho is not a congruence and
/// InvariantViolation when the factor map fails the morphism check.
Factor factor_model(const GameModel& m, const Partition& rho);

/// Disjoint union with states renamed "1:s" and "2:s". Both models must use
/// the same game and atom names.
GameModel union_model(const GameModel& m1, const GameModel& m2);

enum class EquivVerdict { Equivalent, Distinguished, Undecided };

std::string verdict_name(EquivVerdict v);

struct Cospan {
    GameModel common;
    std::vector<std::size_t> left;   // m1 -> common
    std::vector<std::size_t> right;  // m2 -> common
};

struct Separation {
    std::size_t other;  // state of the other model
    Formula formula;
    bool holds_at_state;
};

struct Distinction {
    int side = 1;  // model of `state`
    std::size_t state = 0;
    std::vector<Separation> separations;
    /// Single formula true at `state` and false at every state of the other model.
    std::optional<Formula> combined;
};

struct EquivResult {
    EquivVerdict verdict = EquivVerdict::Undecided;
    std::optional<Cospan> cospan;
    std::optional<Distinction> distinction;
    std::string note;
};

EquivResult logical_equiv(const GameModel& m1, const GameModel& m2, const EquivConfig& config = {});

}  // namespace sgl

#endif
