#include "sgl/deduction.hpp"

#include "sgl/error.hpp"

#include <algorithm>

namespace sgl {

void require_enumerable(const SpacePtr& space) {
    if (space->size() > CharacteristicRelation::kMaxStates) {
        throw ResourceLimit("subset enumeration supports at most " + std::to_string(CharacteristicRelation::kMaxStates) +
                            " states, got " + std::to_string(space->size()));
    }
}

CharacteristicRelation::CharacteristicRelation(SpacePtr space, std::vector<Rational> bounds)
    : space_(std::move(space)), bounds_(std::move(bounds)) {
    require_enumerable(space_);
    if (bounds_.size() != (std::size_t{1} << space_->size())) {
        throw Error("characteristic relation needs one bound per subset");
    }
    for (auto& b : bounds_) {
        b.canonicalize();
        if (!in_unit_interval(b)) throw Error("bound " + format_rational(b) + " outside [0,1]");
    }
}

const Rational& CharacteristicRelation::bound(const StateSet& a) const {
    require_same_space(space_, a.space());
    return bounds_[a.bits()];
}

CharacteristicRelation characteristic_from_eff(const EffectivityFn& p, std::size_t s) {
    const auto& space = p.space();
    require_enumerable(space);
    const StateSet::Mask subsets = StateSet::Mask{1} << space->size();
    std::vector<Rational> bounds;
    bounds.reserve(subsets);
    for (StateSet::Mask a = 0; a < subsets; ++a) bounds.push_back(sup_expectation(p, s, indicator(StateSet(space, a))));
    return CharacteristicRelation(space, std::move(bounds));
}

AxiomReport axioms_check(const CharacteristicRelation& r) {
    AxiomReport report;
    const auto& space = r.space();
    const StateSet::Mask full = r.full_mask();
    auto set = [&](StateSet::Mask m) { return StateSet(space, m); };
    auto b = [&](StateSet::Mask m) -> const Rational& { return r.bound(m); };
    bool seen[8] = {};
    auto add = [&](int axiom, StateSet::Mask a, std::optional<StateSet::Mask> other, std::string detail) {
        if (seen[axiom]) return;
        seen[axiom] = true;
        report.violations.push_back(AxiomViolation{
            axiom, set(a), other ? std::optional<StateSet>(set(*other)) : std::nullopt, std::move(detail)});
    };

    if (b(0) != 0) add(6, 0, std::nullopt, "bound(empty) = " + format_rational(b(0)));

    for (StateSet::Mask a = 0; a <= full; ++a) {
        const StateSet::Mask co = full & ~a;
        if (b(a) + b(co) > 1) {
            add(5, a, co, "bound(A) + bound(S\\A) = " + format_rational(b(a) + b(co)) + " > 1");
        }
        for (StateSet::Mask x = 0; x <= full; ++x) {
            if ((a & x) == a && b(a) > b(x)) {
                add(1, a, x, "A subset of B but bound(A) = " + format_rational(b(a)) + " > bound(B) = " + format_rational(b(x)));
            }
            // Non-membership is subadditive.
            const Rational sum = b(a) + b(x);
            if (sum < 1 && b(a | x) > sum) {
                add(3, a, x, "bound(A u B) = " + format_rational(b(a | x)) + " > bound(A) + bound(B) = " + format_rational(sum));
            }
            // Superadditivity over the split of A by B.
            const Rational split = b(a & x) + b(a & ~x & full);
            if (split <= 1 && b(a) < split) {
                add(4, a, x, "bound(A) = " + format_rational(b(a)) + " < bound(A n B) + bound(A \\ B) = " + format_rational(split));
            }
        }
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const AxiomViolation& x, const AxiomViolation& y) { return x.axiom < y.axiom; });
    return report;
}

MeasureExtraction mu_from_characteristic(const CharacteristicRelation& r) {
    const auto& space = r.space();
    const StateSet::Mask full = r.full_mask();
    if (r.bound(StateSet::Mask{0}) != 0) {
        return MeasureExtraction{std::nullopt, std::make_pair(StateSet(space, 0), StateSet(space, 0))};
    }
    for (StateSet::Mask a = 1; a <= full; ++a) {
        // Disjoint pairs (x, a \ x) with x a proper nonempty submask of a.
        for (StateSet::Mask x = (a - 1) & a; x != 0; x = (x - 1) & a) {
            if (r.bound(a) != r.bound(x) + r.bound(a & ~x)) {
                return MeasureExtraction{std::nullopt, std::make_pair(StateSet(space, x), StateSet(space, a & ~x))};
            }
        }
    }
    std::vector<Rational> w;
    for (std::size_t i = 0; i < space->size(); ++i) w.push_back(r.bound(StateSet::Mask{1} << i));
    return MeasureExtraction{Dist(space, std::move(w)), std::nullopt};
}

bool satisfies_check(const EffectivityFn& p, std::size_t s, const CharacteristicRelation& r) {
    require_same_space(p.space(), r.space());
    const CharacteristicRelation own = characteristic_from_eff(p, s);
    for (StateSet::Mask a = 0; a <= r.full_mask(); ++a) {
        if (own.bound(a) != r.bound(a)) return false;
    }
    return true;
}

bool implements_check(const EffectivityFn& p, std::size_t s, const Dist& mu) {
    require_same_space(p.space(), mu.space());
    require_enumerable(p.space());
    const StateSet::Mask subsets = StateSet::Mask{1} << p.size();
    for (StateSet::Mask a = 0; a < subsets; ++a) {
        const StateSet set(p.space(), a);
        if (dist_eval(mu, set) != sup_expectation(p, s, indicator(set))) return false;
    }
    return true;
}

std::string stage_name(KripkeStage stage) {
    switch (stage) {
    case KripkeStage::Passed: return "passed";
    case KripkeStage::Axioms: return "axioms";
    case KripkeStage::Additivity: return "axioms pass, additivity fails";
    case KripkeStage::FullEquality: return "axioms pass, full equality fails";
    }
    return "?";
}

StateKripkeVerdict kripke_state(const EffectivityFn& p, std::size_t s) {
    StateKripkeVerdict v;
    const CharacteristicRelation r = characteristic_from_eff(p, s);
    v.axioms = axioms_check(r);
    if (!v.axioms.passed()) {
        v.stage = KripkeStage::Axioms;
        return v;
    }
    MeasureExtraction ex = mu_from_characteristic(r);
    if (!ex.mu) {
        v.stage = KripkeStage::Additivity;
        v.additivity_witness = ex.witness;
        return v;
    }
    v.row = ex.mu;
    const Dist& mu = *ex.mu;
    const auto& gens = p.generators(s);
    const bool has_singleton =
        std::any_of(gens.begin(), gens.end(), [&](const Generator& g) { return g.size() == 1 && g.front() == mu; });
    const bool in_every = std::all_of(gens.begin(), gens.end(), [&](const Generator& g) {
        return std::find(g.begin(), g.end(), mu) != g.end();
    });
    if (!has_singleton || !in_every) v.stage = KripkeStage::FullEquality;
    return v;
}

KripkeVerdict kripke_generated(const EffectivityFn& p) {
    KripkeVerdict out;
    std::vector<Dist> rows;
    for (std::size_t s = 0; s < p.size(); ++s) {
        out.states.push_back(kripke_state(p, s));
        const auto& v = out.states.back();
        if (v.stage != KripkeStage::Passed) {
            if (!out.first_failure) out.first_failure = s;
        } else {
            rows.push_back(*v.row);
        }
    }
    if (!out.first_failure) out.kernel = Kernel(std::move(rows));
    return out;
}

}  // namespace sgl
