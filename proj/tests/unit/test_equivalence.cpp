#include "helpers.hpp"
#include "random.hpp"

#include "sgl/equivalence.hpp"
#include "sgl/error.hpp"
#include "sgl/json_io.hpp"

#include <doctest.h>

using namespace sgl;
using namespace sgl::testing;

TEST_SUITE("equivalence") {

TEST_CASE("partitions") {
    auto s = numbered(4);
    const Partition p(s, {7, 3, 7, 9});
    CHECK(p.size() == 3);
    CHECK(p.map() == std::vector<std::size_t>{0, 1, 0, 2});
    CHECK(block_name(p.block(0)) == "{s0,s2}");
    CHECK(Partition::from_blocks(s, p.blocks()) == p);
    CHECK_THROWS_AS(Partition::from_blocks(s, {states(s, {"s0", "s1"}), states(s, {"s1", "s2", "s3"})}), Error);
    CHECK_THROWS_AS(Partition::from_blocks(s, {states(s, {"s0", "s1"})}), Error);
    CHECK(Partition::identity(s).size() == 4);
}

TEST_CASE("symmetric states merge in both modes") {
    const GameModel m = load_model(data_file("symmetric.json"));
    const Partition r = logical_partition(m, PartitionMode::Refinement);
    CHECK(r.size() == 2);
    CHECK(r.block_of(1) == r.block_of(2));
    CHECK(r.block_of(0) != r.block_of(1));
    CHECK(logical_partition(m, PartitionMode::Enumeration) == r);
}

TEST_CASE("atoms separate states at round zero") {
    auto s = numbered(2);
    const GameModel m(s, {{"a", Kernel::zero(s)}}, {{"p", states(s, {"s0"})}});
    CHECK(refinement_partition(m).size() == 2);
    const Partition merged(s, {0, 0});
    const CongruenceReport c = congruence_check(m, merged);
    CHECK_FALSE(c.ok);
    CHECK(c.atom == std::optional<std::string>("p"));
    CHECK_THROWS_AS(factor_model(m, merged), Error);
}

TEST_CASE("depth-two separation agrees with enumeration") {
    const GameModel m = load_model(data_file("depth2.json"));
    const Partition r = refinement_partition(m);
    CHECK(r.size() == 4);
    const Enumeration e = enumerate_theories(m);
    CHECK(e.partition == r);
    CHECK(e.skipped_undecided == 0);
}

TEST_CASE("congruence and factor models") {
    const GameModel m = load_model(data_file("symmetric.json"));
    CHECK(congruence_check(m, Partition::identity(m.space())).ok);
    const Partition rho = refinement_partition(m);
    REQUIRE(congruence_check(m, rho).ok);
    const Factor f = factor_model(m, rho);
    CHECK(f.model.size() == 2);
    CHECK(model_morphism_check(f.map, m, f.model).ok);
    // Block sums: s0 sends 1 to {s1,s2}; s1 sends 1/4 to {s0} and 1/2 to {s1,s2}.
    const Kernel* k = f.model.kernel("a");
    REQUIRE(k != nullptr);
    CHECK((*k)(f.map[0], f.map[1]) == 1);
    CHECK((*k)(f.map[1], f.map[0]) == q("1/4"));
    CHECK((*k)(f.map[1], f.map[1]) == q("1/2"));

    const Factor id = factor_model(m, Partition::identity(m.space()));
    CHECK(id.model.size() == 3);
    CHECK(model_morphism_check(id.map, m, id.model).ok);

    const CongruenceReport bad = congruence_check(m, Partition(m.space(), {0, 0, 1}));
    CHECK_FALSE(bad.ok);
}

TEST_CASE("union models") {
    const GameModel a = load_model(data_file("kripke2.json"));
    const GameModel u = union_model(a, a);
    CHECK(u.size() == 4);
    CHECK(u.space()->name(2) == "2:s0");
    CHECK(u.valuation("p") == states(u.space(), {"1:s0", "2:s0"}));
    CHECK_THROWS_AS(union_model(a, load_model(data_file("depth2.json"))), Error);
}

TEST_CASE("logical equivalence verdicts") {
    const GameModel m = load_model(data_file("kripke2.json"));
    const EquivResult self = logical_equiv(m, m);
    CHECK(self.verdict == EquivVerdict::Equivalent);
    REQUIRE(self.cospan.has_value());
    CHECK(model_morphism_check(self.cospan->left, m, self.cospan->common).ok);

    const GameModel sw = load_model(data_file("swapped.json"));
    const EquivResult swapped = logical_equiv(m, sw);
    CHECK(swapped.verdict == EquivVerdict::Equivalent);
    REQUIRE(swapped.cospan.has_value());
    CHECK(swapped.cospan->left[0] == swapped.cospan->right[1]);

    const GameModel sym = load_model(data_file("symmetric.json"));
    const Factor f = factor_model(sym, refinement_partition(sym));
    CHECK(logical_equiv(sym, f.model).verdict == EquivVerdict::Equivalent);

    const GameModel v = load_model(data_file("kripke2_variant.json"));
    const EquivResult diff = logical_equiv(m, v);
    CHECK(diff.verdict == EquivVerdict::Distinguished);
    REQUIRE(diff.distinction.has_value());
    const Distinction& d = *diff.distinction;
    const GameModel& here = d.side == 1 ? m : v;
    const GameModel& there = d.side == 1 ? v : m;
    for (const auto& sep : d.separations) {
        CHECK(eval_formula(here, sep.formula).contains(d.state) == sep.holds_at_state);
        CHECK(eval_formula(there, sep.formula).contains(sep.other) != sep.holds_at_state);
    }
    if (d.combined) {
        CHECK(eval_formula(here, *d.combined).contains(d.state));
        CHECK(eval_formula(there, *d.combined).is_empty());
    }
    CHECK(verdict_name(EquivVerdict::Undecided) == "undecided-at-bound");
}

TEST_CASE("enumeration respects its resource cap") {
    const GameModel m = load_model(data_file("depth2.json"));
    EquivConfig tiny;
    tiny.max_evaluations = 5;
    CHECK_THROWS_AS(enumerate_theories(m, tiny), ResourceLimit);
    CHECK(small_games(m).size() > 2);
}

TEST_CASE("property: refinement matches enumeration on random Kripke models") {
    Rng rng(81);
    for (int round = 0; round < 25; ++round) {
        ModelShape ms;
        ms.states = pick(rng, 1, 4);
        ms.games = {"a"};
        ms.atoms = {"p"};
        const GameModel m = random_model(rng, ms);
        const Partition r = refinement_partition(m);
        CHECK(congruence_check(m, r).ok);
        const Enumeration e = enumerate_theories(m);
        CHECK(e.partition == r);
    }
}

}
