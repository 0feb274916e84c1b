#include "helpers.hpp"
#include "random.hpp"

#include "sgl/error.hpp"
#include "sgl/kernels.hpp"
#include "sgl/oracles.hpp"
#include "sgl/semantics.hpp"

#include <doctest.h>

using namespace sgl;
using namespace sgl::testing;

namespace {

// Independent matrix product over the extended reals.
ExtKernel naive_product(const ExtKernel& a, const ExtKernel& b) {
    ExtKernel out(a.space());
    const std::size_t n = a.size();
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            bool inf = false;
            Rational sum = 0;
            for (std::size_t u = 0; u < n; ++u) {
                const ExtValue& x = a.at(s, u);
                const ExtValue& y = b.at(u, t);
                if (x.is_zero() || y.is_zero()) continue;
                if (x.is_infinite() || y.is_infinite()) inf = true;
                else sum += x.value() * y.value();
            }
            out.at(s, t) = inf ? ExtValue::infinity() : ExtValue(sum);
        }
    }
    return out;
}

GameModel single_state(const char* w) {
    auto s = numbered(1);
    return GameModel(s, {{"a", Kernel({dist(s, {w})})}}, {{"p", StateSet::full(s)}});
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("convolution examples") {
    auto s = numbered(2);
    const Kernel k({dist(s, {"1/2", "1/2"}), dist(s, {"0", "1/3"})});
    const Kernel l({Dist::dirac(s, 1), Dist::dirac(s, 1)});
    CHECK(convolve(Kernel::identity(s), k) == k);
    CHECK(convolve(k, l)(0, 1) == 1);
    CHECK(convolve(Kernel::zero(s), k) == Kernel::zero(s));
}

TEST_CASE("kernel sums") {
    auto s = numbered(2);
    const ExtKernel k = ExtKernel::from(Kernel({dist(s, {"1/2", "1/4"}), dist(s, {"0", "1"})}));
    CHECK(kernel_sum(k, ExtKernel::from(Kernel::zero(s))) == k);
    const ExtKernel two = kernel_sum(ExtKernel::identity(s), ExtKernel::identity(s));
    CHECK(two.at(0, 0) == ExtValue(2));
    CHECK(two.at(0, 1).is_zero());
    CHECK((ExtValue::infinity() + ExtValue(q("1/2"))).is_infinite());
    CHECK((ExtValue::infinity() * ExtValue(0)).is_zero());
    CHECK(ExtValue::infinity().str() == "inf");
}

TEST_CASE("star closure examples") {
    auto s = numbered(2);
    CHECK(star_closure(Kernel::zero(s)) == ExtKernel::identity(s));
    const ExtKernel id = star_closure(Kernel::identity(s));
    CHECK(id.at(0, 0).is_infinite());
    CHECK(id.at(1, 1).is_infinite());
    CHECK(id.at(0, 1).is_zero());

    auto one = numbered(1);
    const ExtKernel g = star_closure(Kernel({dist(one, {"1/2"})}));
    CHECK(g.at(0, 0) == ExtValue(2));
    const auto partial = oracle::power_sum(Kernel({dist(one, {"1/2"})}), 50);
    CHECK(partial[0][0] <= 2);
    CHECK(2 - partial[0][0] == Rational(1, 1) / (mpz_class(1) << 50));
}

TEST_CASE("star closure reaches a recurrent class through transient states") {
    auto s = numbered(3);
    const Kernel k({dist(s, {"1/2", "1/4", "0"}), dist(s, {"0", "0", "1"}), dist(s, {"0", "0", "1"})});
    const ExtKernel x = star_closure(k);
    CHECK(x.at(0, 0) == ExtValue(2));
    CHECK(x.at(0, 1) == ExtValue(q("1/2")));
    CHECK(x.at(0, 2).is_infinite());
    CHECK(x.at(2, 0).is_zero());
}

TEST_CASE("test kernels") {
    auto s = numbered(2);
    CHECK(test_kernel(StateSet::full(s), true) == Kernel::identity(s));
    CHECK(test_kernel(StateSet::empty(s), true) == Kernel::zero(s));
    const Kernel t = test_kernel(states(s, {"s0"}), true);
    CHECK(t.row(0) == Dist::dirac(s, 0));
    CHECK(t.row(1) == Dist::zero(s));
    CHECK(test_kernel(states(s, {"s0"}), false).row(1) == Dist::dirac(s, 1));
}

TEST_CASE("pdl kernel examples") {
    const GameModel m = single_state("1/2");
    CHECK(pdl_kernel(m, game::eps()) == ExtKernel::identity(m.space()));
    CHECK(pdl_kernel(m, parse_game("a;a")).at(0, 0) == ExtValue(q("1/4")));
    CHECK(pdl_kernel(m, parse_game("a*")).at(0, 0) == ExtValue(2));
    CHECK_THROWS_AS(pdl_kernel(m, parse_game("a^d")), UnsupportedFragment);
    CHECK_THROWS_AS(pdl_kernel(m, parse_game("a & a")), UnsupportedFragment);
}

TEST_CASE("property: Kleisli laws and substochasticity") {
    Rng rng(21);
    for (int round = 0; round < 100; ++round) {
        auto s = numbered(pick(rng, 1, 5));
        const Kernel k1 = random_kernel(rng, s, 16);
        const Kernel k2 = random_kernel(rng, s, 16);
        const Kernel k3 = random_kernel(rng, s, 16);
        CHECK(convolve(Kernel::identity(s), k1) == k1);
        CHECK(convolve(k1, Kernel::identity(s)) == k1);
        CHECK(convolve(convolve(k1, k2), k3) == convolve(k1, convolve(k2, k3)));
        const Kernel c = convolve(k1, k2);
        for (std::size_t i = 0; i < s->size(); ++i) CHECK(c.row(i).total() <= 1);
        CHECK(ExtKernel::from(c) == naive_product(ExtKernel::from(k1), ExtKernel::from(k2)));
    }
}

TEST_CASE("property: star closure fixed point and partial sums") {
    Rng rng(22);
    for (int round = 0; round < 100; ++round) {
        auto s = numbered(pick(rng, 1, 4));
        const Kernel k = random_kernel(rng, s, 4);
        const ExtKernel x = star_closure(k);
        const ExtKernel rhs = kernel_sum(ExtKernel::identity(s), naive_product(ExtKernel::from(k), x));
        CHECK(rhs == x);
        CHECK(oracle::star_closure_mismatches(k, 50, q("1/8")).empty());
    }
}

}
