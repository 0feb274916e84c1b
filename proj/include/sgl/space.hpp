#ifndef SGL_SPACE_HPP
#define SGL_SPACE_HPP

#include "sgl/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace sgl {

class StateSpace;
using SpacePtr = std::shared_ptr<const StateSpace>;

/// Finite state space with a fixed state order. Every subset is measurable.
class StateSpace {
public:
    static constexpr std::size_t kMaxStates = 64;

    static SpacePtr make(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    /// Index of a state name; throws SpaceMismatch for unknown names.
    std::size_t index(const std::string& name) const;
    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    bool same_as(const StateSpace& other) const { return this == &other || names_ == other.names_; }

private:
    explicit StateSpace(std::vector<std::string> names);

    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

void require_same_space(const SpacePtr& a, const SpacePtr& b);

/// Subset of a state space, stored as a bitmask in state order.
class StateSet {
public:
    using Mask = std::uint64_t;

    explicit StateSet(SpacePtr space, Mask bits = 0);

    static StateSet empty(SpacePtr space) { return StateSet(std::move(space), 0); }
    static StateSet full(SpacePtr space);
    static StateSet of(SpacePtr space, const std::vector<std::string>& names);
    static StateSet singleton(SpacePtr space, std::size_t i) { return StateSet(std::move(space), Mask{1} << i); }

    const SpacePtr& space() const { return space_; }
    Mask bits() const { return bits_; }

    bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
    bool is_empty() const { return bits_ == 0; }
    std::size_t count() const;
    bool subset_of(const StateSet& other) const;

    StateSet complement() const;
    StateSet unite(const StateSet& other) const;
    StateSet intersect(const StateSet& other) const;
    StateSet minus(const StateSet& other) const;

    /// Member names in state order.
    std::vector<std::string> names() const;

    friend bool operator==(const StateSet& a, const StateSet& b) {
        return a.bits_ == b.bits_ && a.space_->same_as(*b.space_);
    }

private:
    SpacePtr space_;
    Mask bits_;
};

inline StateSet set_complement(const StateSet& a) { return a.complement(); }
inline StateSet set_union(const StateSet& a, const StateSet& b) { return a.unite(b); }
inline StateSet set_intersection(const StateSet& a, const StateSet& b) { return a.intersect(b); }

/// Exact subprobability distribution over a state space.
class Dist {
public:
    /// Validates nonnegativity and total mass <= 1.
    Dist(SpacePtr space, std::vector<Rational> weights);

    static Dist zero(SpacePtr space);
    static Dist dirac(SpacePtr space, std::size_t i);

    const SpacePtr& space() const { return space_; }
    const Rational& operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<Rational>& weights() const { return weights_; }
    std::size_t size() const { return weights_.size(); }

    Rational total() const;

    friend bool operator==(const Dist& a, const Dist& b) { return a.weights_ == b.weights_; }
    friend bool operator<(const Dist& a, const Dist& b) { return a.weights_ < b.weights_; }

private:
    Dist(SpacePtr space, std::vector<Rational> weights, bool /*trusted*/);

    SpacePtr space_;
    std::vector<Rational> weights_;

    friend Dist localize(const StateSet& a, const Dist& mu);
};

/// mu(A) = sum of weights over A.
Rational dist_eval(const Dist& mu, const StateSet& a);

/// Dirac measure at the named state.
Dist dirac(const SpacePtr& space, const std::string& state);

/// F_A(mu)(B) = mu(A n B): zero the weights outside A.
Dist localize(const StateSet& a, const Dist& mu);

}  // namespace sgl

#endif
