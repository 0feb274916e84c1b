#ifndef SGL_DEDUCTION_HPP
#define SGL_DEDUCTION_HPP

#include "sgl/effectivity.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sgl {

/// Characteristic relation in bound form: <r, A> belongs to R iff
/// 0 <= r <= bound(A). Bounds are stored for all 2^|S| subsets.
class CharacteristicRelation {
public:
    static constexpr std::size_t kMaxStates = 16;

    /// `bounds` is indexed by subset bitmask.
    CharacteristicRelation(SpacePtr space, std::vector<Rational> bounds);

    const SpacePtr& space() const { return space_; }
    const Rational& bound(StateSet::Mask a) const { return bounds_[a]; }
    const Rational& bound(const StateSet& a) const;
    bool contains(const Rational& r, const StateSet& a) const { return r >= 0 && r <= bound(a); }
    StateSet::Mask full_mask() const { return bounds_.size() - 1; }

private:
    SpacePtr space_;
    std::vector<Rational> bounds_;
};

/// Throws ResourceLimit when a space is too large for subset enumeration.
void require_enumerable(const SpacePtr& space);

/// R(s) = {<r, A> | beta(A, >= r) in P(s)}, i.e. bound(A) = sup_expectation(P, s, 1_A).
CharacteristicRelation characteristic_from_eff(const EffectivityFn& p, std::size_t s);

struct AxiomViolation {
    int axiom;  // 1..7
    StateSet a;
    std::optional<StateSet> b;
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomViolation> violations;
    bool passed() const { return violations.empty(); }
};

/// Checks the seven axioms in bound form. Axiom 2 holds by representation and
/// axiom 7 holds on finite spaces; both are reported as satisfied.
/// At most one violation per axiom is recorded.
AxiomReport axioms_check(const CharacteristicRelation& r);

struct MeasureExtraction {
    std::optional<Dist> mu;
    /// Disjoint pair on which bound is not additive, or (empty, empty) when bound(empty) != 0.
    std::optional<std::pair<StateSet, StateSet>> witness;
};

/// mu_R(A) = bound(A), provided bound is finitely additive.
MeasureExtraction mu_from_characteristic(const CharacteristicRelation& r);

/// bound_R(A) = sup_expectation(P, s, 1_A) for every A.
bool satisfies_check(const EffectivityFn& p, std::size_t s, const CharacteristicRelation& r);
/// mu(A) = sup_expectation(P, s, 1_A) for every A.
bool implements_check(const EffectivityFn& p, std::size_t s, const Dist& mu);

enum class KripkeStage { Passed, Axioms, Additivity, FullEquality };

std::string stage_name(KripkeStage stage);

struct StateKripkeVerdict {
    KripkeStage stage = KripkeStage::Passed;
    std::optional<Dist> row;  // set when the state passes, and after additivity succeeded
    AxiomReport axioms;
    std::optional<std::pair<StateSet, StateSet>> additivity_witness;
};

struct KripkeVerdict {
    std::optional<Kernel> kernel;  // set iff every state passes
    std::vector<StateKripkeVerdict> states;
    std::optional<std::size_t> first_failure;
};

/// Decides P = P_K for some kernel K: axioms, then measure extraction, then
/// the full generator comparison. Failures are returned, not thrown.
StateKripkeVerdict kripke_state(const EffectivityFn& p, std::size_t s);
KripkeVerdict kripke_generated(const EffectivityFn& p);

}  // namespace sgl

#endif
