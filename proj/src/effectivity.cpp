#include "sgl/effectivity.hpp"

#include "sgl/error.hpp"

#include <algorithm>

namespace sgl {

namespace {

bool includes(const Generator& big, const Generator& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::vector<Generator> normalize_antichain(std::vector<Generator> gens) {
    for (auto& g : gens) {
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    std::vector<Generator> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < gens.size() && !redundant; ++j) {
            if (i != j && includes(gens[i], gens[j])) redundant = true;
        }
        if (!redundant) out.push_back(gens[i]);
    }
    return out;
}

EffectivityFn::EffectivityFn(SpacePtr space, std::vector<std::vector<Generator>> generators)
    : space_(std::move(space)), gens_(std::move(generators)) {
    if (gens_.size() != space_->size()) throw SpaceMismatch("effectivity function must list every state");
    for (auto& per_state : gens_) {
        if (per_state.empty()) throw Error("effectivity function needs at least one generator per state");
        for (const auto& g : per_state) {
            if (g.empty()) throw Error("generator sets must be nonempty");
            for (const auto& mu : g) require_same_space(space_, mu.space());
        }
        per_state = normalize_antichain(std::move(per_state));
    }
}

bool EffectivityFn::singleton_generated() const {
    return std::all_of(gens_.begin(), gens_.end(),
                       [](const auto& gs) { return gs.size() == 1 && gs.front().size() == 1; });
}

EffectivityFn from_kernel(const Kernel& k) {
    std::vector<std::vector<Generator>> gens;
    for (const auto& row : k.rows()) gens.push_back({Generator{row}});
    return EffectivityFn(k.space(), std::move(gens));
}

EffectivityFn dirac_effectivity(const SpacePtr& space) { return from_kernel(Kernel::identity(space)); }

std::vector<Rational> indicator(const StateSet& a) {
    std::vector<Rational> w(a.space()->size(), Rational(0));
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (a.contains(i)) w[i] = 1;
    }
    return w;
}

Rational sup_expectation(const EffectivityFn& p, std::size_t s, const std::vector<Rational>& w) {
    if (w.size() != p.size()) throw SpaceMismatch("weight vector length differs from space size");
    std::optional<Rational> best;
    for (const auto& gen : p.generators(s)) {
        std::optional<Rational> worst;
        for (const auto& mu : gen) {
            Rational e = 0;
            for (std::size_t t = 0; t < w.size(); ++t) {
                if (mu[t] != 0 && w[t] != 0) e += w[t] * mu[t];
            }
            if (!worst || e < *worst) worst = e;
        }
        if (!best || *worst > *best) best = worst;
    }
    return *best;
}

bool holds(const EffectivityFn& p, std::size_t s, const PortfolioTest& test) {
    require_same_space(p.space(), test.set.space());
    const Rational v = sup_expectation(p, s, indicator(test.set));
    return test.rel == Relation::Strict ? v > test.bound : v >= test.bound;
}

void require_total_map(const std::vector<std::size_t>& f, std::size_t source_size, std::size_t target_size) {
    if (f.size() != source_size) throw SpaceMismatch("map is not total on the source space");
    for (auto t : f) {
        if (t >= target_size) throw SpaceMismatch("map sends a state outside the target space");
    }
}

Dist pushforward(const Dist& mu, const std::vector<std::size_t>& f, const SpacePtr& target) {
    require_total_map(f, mu.size(), target->size());
    std::vector<Rational> w(target->size(), Rational(0));
    for (std::size_t s = 0; s < mu.size(); ++s) w[f[s]] += mu[s];
    return Dist(target, std::move(w));
}

bool eff_morphism_check(const std::vector<std::size_t>& f, const EffectivityFn& p, const EffectivityFn& q) {
    require_total_map(f, p.size(), q.size());
    for (std::size_t s = 0; s < p.size(); ++s) {
        std::vector<Generator> pushed;
        for (const auto& gen : p.generators(s)) {
            Generator img;
            for (const auto& mu : gen) img.push_back(pushforward(mu, f, q.space()));
            pushed.push_back(std::move(img));
        }
        pushed = normalize_antichain(std::move(pushed));
        const auto& target = q.generators(f[s]);
        for (const auto& m : pushed) {
            if (std::none_of(target.begin(), target.end(), [&](const Generator& n) { return includes(m, n); })) return false;
        }
        for (const auto& n : target) {
            if (std::none_of(pushed.begin(), pushed.end(), [&](const Generator& m) { return includes(n, m); })) return false;
        }
    }
    return true;
}

std::optional<KernelMorphismWitness> kernel_morphism_check(const std::vector<std::size_t>& f, const Kernel& k,
                                                           const Kernel& l) {
    require_total_map(f, k.size(), l.size());
    for (std::size_t s = 0; s < k.size(); ++s) {
        const Dist img = pushforward(k.row(s), f, l.space());
        for (std::size_t t = 0; t < l.size(); ++t) {
            if (l(f[s], t) != img[t]) return KernelMorphismWitness{s, t};
        }
    }
    return std::nullopt;
}

}  // namespace sgl
