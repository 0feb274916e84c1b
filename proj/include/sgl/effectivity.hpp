#ifndef SGL_EFFECTIVITY_HPP
#define SGL_EFFECTIVITY_HPP

#include "sgl/kernels.hpp"
#include "sgl/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sgl {

/// A finite nonempty set of distributions, kept sorted and duplicate-free.
using Generator = std::vector<Dist>;

enum class Relation { Strict, Weak };

/// beta(A, > q) or beta(A, >= q): all distributions mu with mu(A) related to q.
struct PortfolioTest {
    StateSet set;
    Relation rel;
    Rational bound;
};

/// Finitely generated stochastic effectivity function.
///
/// P(s) is the upward-closed family {W | M subset of W for some generator M
/// of s}. Generators of each state form an antichain under inclusion and are
/// stored in a canonical order, so equal families have equal representations.
class EffectivityFn {
public:
    EffectivityFn(SpacePtr space, std::vector<std::vector<Generator>> generators);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return gens_.size(); }
    const std::vector<Generator>& generators(std::size_t s) const { return gens_[s]; }

    /// True when every state has a single singleton generator.
    bool singleton_generated() const;

    friend bool operator==(const EffectivityFn& a, const EffectivityFn& b) { return a.gens_ == b.gens_; }

private:
    SpacePtr space_;
    std::vector<std::vector<Generator>> gens_;
};

/// Canonical antichain: sorts and dedups each generator, drops generators
/// that contain another one.
std::vector<Generator> normalize_antichain(std::vector<Generator> gens);

/// P_K(s) = {W | K(s) in W}.
EffectivityFn from_kernel(const Kernel& k);

/// Dirac effectivity function: P(s) = {W | delta_s in W}.
EffectivityFn dirac_effectivity(const SpacePtr& space);

/// max over generators M of min over mu in M of sum_t w(t) mu(t).
Rational sup_expectation(const EffectivityFn& p, std::size_t s, const std::vector<Rational>& w);

/// Indicator weight vector of a set.
std::vector<Rational> indicator(const StateSet& a);

bool holds(const EffectivityFn& p, std::size_t s, const PortfolioTest& test);

/// Image measure S f (mu)(t) = mu(f^{-1}(t)).
Dist pushforward(const Dist& mu, const std::vector<std::size_t>& f, const SpacePtr& target);

/// Checks W in Q(f(s)) <=> (S f)^{-1}(W) in P(s) for every state s, using
/// the antichain criterion on pushed-forward generators.
bool eff_morphism_check(const std::vector<std::size_t>& f, const EffectivityFn& p, const EffectivityFn& q);

struct KernelMorphismWitness {
    std::size_t state;
    std::size_t target;  // B = {target}
};

/// L(f(s))(B) = K(s)(f^{-1}(B)) for all states s and singletons B. Returns
/// nullopt on success, otherwise the first failing (s, B).
std::optional<KernelMorphismWitness> kernel_morphism_check(const std::vector<std::size_t>& f, const Kernel& k,
                                                           const Kernel& l);

/// Validates that f is a total map from |S| states into a space of `target_size` states.
void require_total_map(const std::vector<std::size_t>& f, std::size_t source_size, std::size_t target_size);

}  // namespace sgl

#endif
