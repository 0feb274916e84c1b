#include "sgl/equivalence.hpp"

#include "sgl/error.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace sgl {

Partition::Partition(SpacePtr space, const std::vector<std::size_t>& labels) : space_(std::move(space)) {
    if (labels.size() != space_->size()) throw SpaceMismatch("partition labels must cover every state");
    std::unordered_map<std::size_t, std::size_t> renumber;
    for (auto l : labels) {
        auto [it, inserted] = renumber.emplace(l, renumber.size());
        map_.push_back(it->second);
    }
    count_ = renumber.size();
}

Partition Partition::identity(const SpacePtr& space) {
    std::vector<std::size_t> labels(space->size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i;
    return Partition(space, labels);
}

Partition Partition::from_blocks(const SpacePtr& space, const std::vector<StateSet>& blocks) {
    std::vector<std::size_t> labels(space->size());
    StateSet::Mask seen = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        require_same_space(space, blocks[b].space());
        if (blocks[b].is_empty()) throw Error("partition blocks must be nonempty");
        if (blocks[b].bits() & seen) throw Error("partition blocks overlap");
        seen |= blocks[b].bits();
        for (std::size_t s = 0; s < space->size(); ++s) {
            if (blocks[b].contains(s)) labels[s] = b;
        }
    }
    if (seen != StateSet::full(space).bits()) throw Error("partition blocks do not cover the space");
    return Partition(space, labels);
}

StateSet Partition::block(std::size_t i) const {
    StateSet::Mask m = 0;
    for (std::size_t s = 0; s < map_.size(); ++s) {
        if (map_[s] == i) m |= StateSet::Mask{1} << s;
    }
    return StateSet(space_, m);
}

std::vector<StateSet> Partition::blocks() const {
    std::vector<StateSet> out;
    for (std::size_t i = 0; i < count_; ++i) out.push_back(block(i));
    return out;
}

std::string block_name(const StateSet& block) {
    std::string out = "{";
    bool first = true;
    for (const auto& n : block.names()) {
        if (!first) out += ",";
        out += n;
        first = false;
    }
    return out + "}";
}

namespace {

SpacePtr numbered_space(std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back("b" + std::to_string(i));
    return StateSpace::make(std::move(names));
}

std::vector<Generator> project(const EffectivityFn& p, std::size_t s, const std::vector<std::size_t>& f,
                               const SpacePtr& target) {
    std::vector<Generator> out;
    for (const auto& gen : p.generators(s)) {
        Generator img;
        for (const auto& mu : gen) img.push_back(pushforward(mu, f, target));
        out.push_back(std::move(img));
    }
    return normalize_antichain(std::move(out));
}

std::string antichain_key(const std::vector<Generator>& gens) {
    std::string out;
    for (const auto& g : gens) {
        out += "[";
        for (const auto& mu : g) {
            out += "(";
            for (const auto& w : mu.weights()) out += format_rational(w) + ",";
            out += ")";
        }
        out += "]";
    }
    return out;
}

std::vector<std::size_t> atom_labels(const GameModel& m) {
    std::vector<std::string> sig(m.size());
    for (const auto& [p, v] : m.atoms()) {
        for (std::size_t s = 0; s < m.size(); ++s) sig[s] += v.contains(s) ? '1' : '0';
    }
    std::map<std::string, std::size_t> ids;
    std::vector<std::size_t> labels;
    for (const auto& x : sig) labels.push_back(ids.emplace(x, ids.size()).first->second);
    return labels;
}

}  // namespace

Partition refinement_partition(const GameModel& m) {
    Partition current(m.space(), atom_labels(m));
    for (;;) {
        const SpacePtr bspace = numbered_space(current.size());
        std::map<std::string, std::size_t> ids;
        std::vector<std::size_t> labels;
        for (std::size_t s = 0; s < m.size(); ++s) {
            std::string sig = std::to_string(current.block_of(s));
            for (const auto& [name, interp] : m.games()) {
                sig += "|" + name + ":" + antichain_key(project(m.effectivity(name), s, current.map(), bspace));
            }
            labels.push_back(ids.emplace(sig, ids.size()).first->second);
        }
        Partition next(m.space(), labels);
        if (next.size() == current.size()) return next;
        current = std::move(next);
    }
}

std::vector<Game> small_games(const GameModel& m) {
    std::vector<Game> leaves;
    for (const auto& [name, interp] : m.games()) leaves.push_back(game::prim(name));
    leaves.push_back(game::eps());
    using Unary = Game (*)(Game);
    using Binary = Game (*)(Game, Game);
    const Unary unary[] = {game::dual, game::star, game::demonic_star};
    const Binary binary[] = {game::choice, game::demonic_choice, game::seq};

    std::vector<Game> out = leaves;
    for (auto u : unary) {
        for (const auto& l : leaves) out.push_back(u(l));
    }
    for (auto u2 : unary) {
        for (auto u1 : unary) {
            for (const auto& l : leaves) out.push_back(u2(u1(l)));
        }
    }
    for (auto b : binary) {
        for (const auto& l : leaves) {
            for (const auto& r : leaves) out.push_back(b(l, r));
        }
    }
    return out;
}

Enumeration enumerate_theories(const GameModel& m, const EquivConfig& config) {
    if (config.grid == 0) throw Error("grid denominator must be positive");
    const auto& space = m.space();
    Evaluator ev(m, EvalConfig{config.star_depth});
    Enumeration out{Partition::identity(space), {}, 0, 0};
    std::vector<StateSet::Mask> order;

    auto add = [&](StateSet::Mask x, const Formula& f) {
        if (out.definable.emplace(x, f).second) order.push_back(x);
    };
    auto close = [&](std::size_t from) {
        // Intersect every set added since `from` with every known set.
        for (std::size_t i = from; i < order.size(); ++i) {
            for (std::size_t j = 0; j < order.size(); ++j) {
                const StateSet::Mask a = order[i];
                const StateSet::Mask b = order[j];
                if (!out.definable.count(a & b)) {
                    add(a & b, formula::conj(out.definable.at(b), out.definable.at(a)));
                }
            }
        }
    };

    add(StateSet::full(space).bits(), formula::top());
    for (const auto& [p, v] : m.atoms()) add(v.bits(), formula::atom(p));
    close(0);

    const std::vector<Game> games = small_games(m);
    for (std::size_t level = 0; level < config.depth; ++level) {
        const std::vector<StateSet::Mask> snapshot = order;
        const std::size_t before = order.size();
        for (const auto& g : games) {
            for (auto x : snapshot) {
                if (++out.evaluations > config.max_evaluations) {
                    throw ResourceLimit("enumeration exceeded " + std::to_string(config.max_evaluations) +
                                        " profile evaluations");
                }
                const Profile pr = ev.game(g, StateSet(space, x));
                const Formula body = out.definable.at(x);
                for (std::size_t j = 0; j < config.grid; ++j) {
                    Rational q(static_cast<unsigned long>(j), static_cast<unsigned long>(config.grid));
                    q.canonicalize();
                    StateSet::Mask certain = 0;
                    StateSet::Mask possible = 0;
                    for (std::size_t s = 0; s < pr.size(); ++s) {
                        if (pr[s].certain.member(q)) certain |= StateSet::Mask{1} << s;
                        if (pr[s].possible.member(q)) possible |= StateSet::Mask{1} << s;
                    }
                    if (certain != possible) {
                        ++out.skipped_undecided;
                        continue;
                    }
                    if (!out.definable.count(certain)) add(certain, formula::diamond(g, q, body));
                }
            }
        }
        close(before);
    }

    std::map<std::string, std::size_t> ids;
    std::vector<std::size_t> labels;
    for (std::size_t s = 0; s < space->size(); ++s) {
        std::string sig;
        for (auto x : order) sig += ((x >> s) & 1U) ? '1' : '0';
        labels.push_back(ids.emplace(sig, ids.size()).first->second);
    }
    out.partition = Partition(space, labels);
    return out;
}

Partition logical_partition(const GameModel& m, PartitionMode mode, const EquivConfig& config) {
    if (mode == PartitionMode::Refinement) return refinement_partition(m);
    return enumerate_theories(m, config).partition;
}

CongruenceReport congruence_check(const GameModel& m, const Partition& rho) {
    require_same_space(m.space(), rho.space());
    CongruenceReport r;
    const auto blocks = rho.blocks();
    for (const auto& [p, v] : m.atoms()) {
        for (const auto& b : blocks) {
            const StateSet inside = b.intersect(v);
            if (!inside.is_empty() && !(inside == b)) {
                r.ok = false;
                r.atom = p;
                r.reason = "V_" + p + " is not a union of blocks: it splits " + block_name(b);
                return r;
            }
        }
    }
    const SpacePtr bspace = numbered_space(rho.size());
    for (const auto& [name, interp] : m.games()) {
        const EffectivityFn& p = m.effectivity(name);
        std::vector<std::vector<Generator>> proj;
        for (std::size_t s = 0; s < m.size(); ++s) proj.push_back(project(p, s, rho.map(), bspace));
        for (std::size_t s = 0; s < m.size(); ++s) {
            for (std::size_t t = s + 1; t < m.size(); ++t) {
                if (rho.block_of(s) != rho.block_of(t) || proj[s] == proj[t]) continue;
                r.ok = false;
                r.game = name;
                // Some generator of one side is missing on the other.
                std::size_t a = s;
                std::size_t b = t;
                auto missing = [&](std::size_t x, std::size_t y) -> const Generator* {
                    for (const auto& g : proj[x]) {
                        if (std::find(proj[y].begin(), proj[y].end(), g) == proj[y].end()) return &g;
                    }
                    return nullptr;
                };
                const Generator* g = missing(s, t);
                if (!g) {
                    g = missing(t, s);
                    std::swap(a, b);
                }
                r.state = a;
                r.other = b;
                std::vector<std::vector<Rational>> gen;
                for (const auto& mu : *g) gen.push_back(mu.weights());
                r.generator = gen;
                r.reason = "projected generators of '" + name + "' differ at " + m.space()->name(a) + " and " +
                           m.space()->name(b);
                return r;
            }
        }
    }
    return r;
}

Factor factor_model(const GameModel& m, const Partition& rho) {
    const CongruenceReport rep = congruence_check(m, rho);
    if (!rep.ok) throw Error("partition is not a congruence: " + rep.reason);
    const auto blocks = rho.blocks();
    std::vector<std::string> names;
    std::vector<std::size_t> rep_state;
    for (const auto& b : blocks) {
        names.push_back(block_name(b));
        std::size_t s = 0;
        while (!b.contains(s)) ++s;
        rep_state.push_back(s);
    }
    const SpacePtr bspace = StateSpace::make(names);

    std::map<std::string, Interpretation> games;
    for (const auto& [name, interp] : m.games()) {
        if (const Kernel* k = m.kernel(name)) {
            std::vector<Dist> rows;
            for (auto s : rep_state) rows.push_back(pushforward(k->row(s), rho.map(), bspace));
            games.emplace(name, Kernel(std::move(rows)));
        } else {
            std::vector<std::vector<Generator>> gens;
            for (auto s : rep_state) gens.push_back(project(m.effectivity(name), s, rho.map(), bspace));
            games.emplace(name, EffectivityFn(bspace, std::move(gens)));
        }
    }
    std::map<std::string, StateSet> atoms;
    for (const auto& [p, v] : m.atoms()) {
        StateSet::Mask img = 0;
        for (std::size_t s = 0; s < m.size(); ++s) {
            if (v.contains(s)) img |= StateSet::Mask{1} << rho.block_of(s);
        }
        atoms.emplace(p, StateSet(bspace, img));
    }
    Factor f{GameModel(bspace, std::move(games), std::move(atoms)), rho.map()};
    const MorphismReport check = model_morphism_check(f.map, m, f.model);
    if (!check.ok) throw InvariantViolation("factor map is not a model morphism: " + check.reason);
    return f;
}

namespace {

Dist embed(const Dist& mu, std::size_t offset, const SpacePtr& target) {
    std::vector<Rational> w(target->size(), Rational(0));
    for (std::size_t i = 0; i < mu.size(); ++i) w[offset + i] = mu[i];
    return Dist(target, std::move(w));
}

template <class Map>
std::set<std::string> keys(const Map& m) {
    std::set<std::string> out;
    for (const auto& kv : m) out.insert(kv.first);
    return out;
}

}  // namespace

GameModel union_model(const GameModel& m1, const GameModel& m2) {
    if (keys(m1.games()) != keys(m2.games())) throw Error("models interpret different primitive games");
    if (keys(m1.atoms()) != keys(m2.atoms())) throw Error("models valuate different atoms");
    std::vector<std::string> names;
    for (const auto& n : m1.space()->names()) names.push_back("1:" + n);
    for (const auto& n : m2.space()->names()) names.push_back("2:" + n);
    const SpacePtr u = StateSpace::make(names);
    const std::size_t off = m1.size();

    std::map<std::string, Interpretation> games;
    for (const auto& [name, interp] : m1.games()) {
        const Kernel* k1 = m1.kernel(name);
        const Kernel* k2 = m2.kernel(name);
        if (k1 && k2) {
            std::vector<Dist> rows;
            for (const auto& r : k1->rows()) rows.push_back(embed(r, 0, u));
            for (const auto& r : k2->rows()) rows.push_back(embed(r, off, u));
            games.emplace(name, Kernel(std::move(rows)));
            continue;
        }
        std::vector<std::vector<Generator>> gens;
        auto append = [&](const EffectivityFn& p, std::size_t offset) {
            for (std::size_t s = 0; s < p.size(); ++s) {
                std::vector<Generator> gs;
                for (const auto& g : p.generators(s)) {
                    Generator e;
                    for (const auto& mu : g) e.push_back(embed(mu, offset, u));
                    gs.push_back(std::move(e));
                }
                gens.push_back(std::move(gs));
            }
        };
        append(m1.effectivity(name), 0);
        append(m2.effectivity(name), off);
        games.emplace(name, EffectivityFn(u, std::move(gens)));
    }
    std::map<std::string, StateSet> atoms;
    for (const auto& [p, v] : m1.atoms()) {
        atoms.emplace(p, StateSet(u, v.bits() | (m2.valuation(p).bits() << off)));
    }
    return GameModel(u, std::move(games), std::move(atoms));
}

std::string verdict_name(EquivVerdict v) {
    switch (v) {
    case EquivVerdict::Equivalent: return "equivalent";
    case EquivVerdict::Distinguished: return "distinguished";
    case EquivVerdict::Undecided: return "undecided-at-bound";
    }
    return "?";
}

namespace {

std::optional<Cospan> build_cospan(const GameModel& m1, const GameModel& m2, const Partition& joint, std::string& note) {
    const Partition rho = refinement_partition(m1);
    const Partition theta = refinement_partition(m2);
    Factor f1 = factor_model(m1, rho);
    Factor f2 = factor_model(m2, theta);
    if (rho.size() != theta.size()) {
        note = "factor models have different sizes";
        return std::nullopt;
    }
    const std::size_t off = m1.size();
    // Joint block -> block of m1's factor.
    std::vector<std::optional<std::size_t>> joint_to_rho(joint.size());
    for (std::size_t s = 0; s < m1.size(); ++s) joint_to_rho[joint.block_of(s)] = rho.block_of(s);
    std::vector<std::size_t> alpha(theta.size());
    std::vector<bool> hit(rho.size(), false);
    for (std::size_t t = 0; t < m2.size(); ++t) {
        const auto target = joint_to_rho[joint.block_of(off + t)];
        if (!target) {
            note = "block matching failed";
            return std::nullopt;
        }
        alpha[theta.block_of(t)] = *target;
        hit[*target] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        note = "block matching is not surjective";
        return std::nullopt;
    }
    std::vector<std::size_t> alpha_inv(rho.size());
    for (std::size_t j = 0; j < alpha.size(); ++j) alpha_inv[alpha[j]] = j;
    if (!model_morphism_check(alpha, f2.model, f1.model).ok || !model_morphism_check(alpha_inv, f1.model, f2.model).ok) {
        note = "block matching is not an isomorphism of factor models";
        return std::nullopt;
    }
    std::vector<std::size_t> right(m2.size());
    for (std::size_t t = 0; t < m2.size(); ++t) right[t] = alpha[f2.map[t]];
    if (!model_morphism_check(f1.map, m1, f1.model).ok || !model_morphism_check(right, m2, f1.model).ok) {
        throw InvariantViolation("cospan legs fail the morphism check");
    }
    return Cospan{std::move(f1.model), f1.map, std::move(right)};
}

}  // namespace

EquivResult logical_equiv(const GameModel& m1, const GameModel& m2, const EquivConfig& config) {
    const GameModel u = union_model(m1, m2);
    const Partition joint = refinement_partition(u);
    const std::size_t off = m1.size();
    EquivResult res;

    std::vector<bool> left(joint.size(), false);
    std::vector<bool> right(joint.size(), false);
    for (std::size_t s = 0; s < u.size(); ++s) (s < off ? left : right)[joint.block_of(s)] = true;
    std::optional<std::size_t> pure;
    for (std::size_t b = 0; b < joint.size() && !pure; ++b) {
        if (!(left[b] && right[b])) pure = b;
    }

    if (!pure) {
        std::string note;
        res.cospan = build_cospan(m1, m2, joint, note);
        if (res.cospan) {
            res.verdict = EquivVerdict::Equivalent;
        } else {
            res.verdict = EquivVerdict::Undecided;
            res.note = note;
        }
        return res;
    }

    const Enumeration en = enumerate_theories(u, config);
    std::size_t s = 0;
    while (joint.block_of(s) != *pure) ++s;
    Distinction d;
    d.side = s < off ? 1 : 2;
    d.state = s < off ? s : s - off;
    const std::size_t lo = s < off ? off : 0;
    const std::size_t hi = s < off ? u.size() : off;
    bool all_hold = true;
    for (std::size_t t = lo; t < hi; ++t) {
        const Formula* found = nullptr;
        bool holds = false;
        for (const auto& [mask, f] : en.definable) {
            const bool at_s = (mask >> s) & 1U;
            const bool at_t = (mask >> t) & 1U;
            if (at_s != at_t && (!found || (at_s && !holds))) {
                found = &f;
                holds = at_s;
                if (holds) break;
            }
        }
        if (!found) {
            res.verdict = EquivVerdict::Undecided;
            res.note = "enumeration at depth " + std::to_string(config.depth) + " and grid " + std::to_string(config.grid) +
                       " does not separate " + u.space()->name(s) + " from " + u.space()->name(t);
            return res;
        }
        d.separations.push_back(Separation{t - lo, *found, holds});
        all_hold = all_hold && holds;
    }
    if (all_hold && !d.separations.empty()) {
        Formula c = d.separations.front().formula;
        std::set<std::string> used{print(c)};
        for (std::size_t i = 1; i < d.separations.size(); ++i) {
            if (used.insert(print(d.separations[i].formula)).second) c = formula::conj(c, d.separations[i].formula);
        }
        d.combined = c;
    }
    res.verdict = EquivVerdict::Distinguished;
    res.distinction = std::move(d);
    return res;
}

}  // namespace sgl
