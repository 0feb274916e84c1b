#include "helpers.hpp"
#include "random.hpp"

#include "sgl/effectivity.hpp"
#include "sgl/error.hpp"

#include <doctest.h>

using namespace sgl;
using namespace sgl::testing;

TEST_SUITE("effectivity") {

TEST_CASE("from_kernel examples") {
    auto s = numbered(2);
    CHECK(from_kernel(Kernel::identity(s)) == dirac_effectivity(s));
    const EffectivityFn z = from_kernel(Kernel::zero(s));
    CHECK(z.generators(0) == std::vector<Generator>{{Dist::zero(s)}});
    auto one = numbered(1);
    const EffectivityFn p = from_kernel(Kernel({dist(one, {"2/3"})}));
    CHECK(p.generators(0) == std::vector<Generator>{{dist(one, {"2/3"})}});
    CHECK(p.singleton_generated());
}

TEST_CASE("sup_expectation examples") {
    auto s = numbered(2);
    const Kernel k({dist(s, {"1/2", "1/4"}), dist(s, {"0", "1"})});
    const StateSet a = states(s, {"s1"});
    CHECK(sup_expectation(from_kernel(k), 0, indicator(a)) == q("1/4"));

    const EffectivityFn two(s, {{{Dist::dirac(s, 0)}, {Dist::dirac(s, 1)}}, {{Dist::dirac(s, 1)}}});
    CHECK(sup_expectation(two, 0, indicator(states(s, {"s0"}))) == 1);
    const EffectivityFn both(s, {{{Dist::dirac(s, 0), Dist::dirac(s, 1)}}, {{Dist::dirac(s, 1)}}});
    CHECK(sup_expectation(both, 0, indicator(states(s, {"s0"}))) == 0);
}

TEST_CASE("holds examples") {
    auto s = numbered(2);
    const EffectivityFn p = from_kernel(Kernel({dist(s, {"1/2", "1/4"}), dist(s, {"1/3", "0"})}));
    CHECK(holds(p, 0, {StateSet::full(s), Relation::Strict, 0}));
    CHECK_FALSE(holds(p, 0, {StateSet::empty(s), Relation::Strict, 0}));
    const StateSet a = states(s, {"s0"});
    CHECK(holds(p, 0, {a, Relation::Weak, q("1/2")}));
    CHECK_FALSE(holds(p, 0, {a, Relation::Strict, q("1/2")}));
}

TEST_CASE("antichain normalization drops supersets and duplicates") {
    auto s = numbered(2);
    const Dist d0 = Dist::dirac(s, 0);
    const Dist d1 = Dist::dirac(s, 1);
    const auto gens = normalize_antichain({{d0, d1}, {d0}, {d0}, {d1, d0, d1}});
    CHECK(gens == std::vector<Generator>{{d0}});
    CHECK_THROWS_AS(EffectivityFn(s, {{}, {{d0}}}), Error);
}

TEST_CASE("morphism checks") {
    auto s = numbered(3);
    auto t = numbered(2, "t");
    const Kernel k({dist(s, {"1/2", "1/4", "1/4"}), dist(s, {"0", "1/2", "1/2"}), dist(s, {"0", "1/2", "1/2"})});
    const std::vector<std::size_t> f = {0, 1, 1};
    const Kernel l({dist(t, {"1/2", "1/2"}), dist(t, {"0", "1"})});
    CHECK(eff_morphism_check({0, 1, 2}, from_kernel(k), from_kernel(k)));
    CHECK(eff_morphism_check(f, from_kernel(k), from_kernel(l)));
    CHECK_FALSE(kernel_morphism_check(f, k, l).has_value());

    // s1 and s2 disagree on the collapsed block {s1,s2}.
    const Kernel k2({dist(s, {"1/2", "1/4", "1/4"}), dist(s, {"0", "1/2", "1/2"}), dist(s, {"1/2", "0", "1/2"})});
    CHECK_FALSE(eff_morphism_check(f, from_kernel(k2), from_kernel(l)));
    const auto w = kernel_morphism_check(f, k2, l);
    REQUIRE(w.has_value());
    CHECK(w->state == 2);

    auto single = numbered(1, "u");
    const Kernel mass({dist(single, {"1"})});
    CHECK_FALSE(kernel_morphism_check({0, 0, 0}, k2, mass).has_value());
    CHECK(kernel_morphism_check({0, 0, 0}, Kernel({dist(s, {"1/2", "0", "0"}), dist(s, {"1", "0", "0"}),
                                                   dist(s, {"1", "0", "0"})}),
                                mass)
              .has_value());
    CHECK_THROWS_AS(require_total_map({0, 2}, 2, 2), Error);
}

TEST_CASE("pushforward") {
    auto s = numbered(3);
    auto t = numbered(2, "t");
    CHECK(pushforward(dist(s, {"1/4", "1/4", "1/2"}), {1, 0, 1}, t) == dist(t, {"1/4", "3/4"}));
}

TEST_CASE("property: upward closure and monotonicity") {
    Rng rng(41);
    for (int round = 0; round < 200; ++round) {
        auto s = numbered(pick(rng, 1, 4));
        const EffectivityFn p = random_effectivity(rng, s, 8);
        const std::size_t st = pick(rng, 0, s->size() - 1);
        const StateSet a = random_set(rng, s);
        const StateSet b = a.unite(random_set(rng, s));
        const Rational v = sup_expectation(p, st, indicator(a));
        CHECK(v >= 0);
        CHECK(v <= 1);
        CHECK(v <= sup_expectation(p, st, indicator(b)));
        const Rational r1 = random_bound(rng);
        const Rational r2 = random_bound(rng);
        const Rational lo = std::min(r1, r2);
        const Rational hi = std::max(r1, r2);
        if (holds(p, st, {a, Relation::Strict, hi})) CHECK(holds(p, st, {a, Relation::Strict, lo}));
        if (holds(p, st, {a, Relation::Weak, hi})) CHECK(holds(p, st, {a, Relation::Weak, lo}));

        std::vector<Rational> w1, w2;
        Rational gap = 0;
        for (std::size_t i = 0; i < s->size(); ++i) {
            w1.push_back(frac(pick(rng, 0, 8), 8));
            w2.push_back(frac(pick(rng, 0, 8), 8));
            gap = std::max(gap, Rational(abs(w1.back() - w2.back())));
        }
        const Rational d = sup_expectation(p, st, w1) - sup_expectation(p, st, w2);
        CHECK(abs(d) <= gap);
        std::vector<Rational> w3 = w1;
        for (std::size_t i = 0; i < w3.size(); ++i) w3[i] = std::max(w1[i], w2[i]);
        CHECK(sup_expectation(p, st, w1) <= sup_expectation(p, st, w3));
    }
}

}
