#include "sgl/space.hpp"

#include "sgl/error.hpp"

#include <bit>
#include <numeric>

namespace sgl {

StateSpace::StateSpace(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
}

SpacePtr StateSpace::make(std::vector<std::string> names) {
    if (names.empty()) throw Error("state space must be nonempty");
    if (names.size() > kMaxStates) {
        throw ResourceLimit("state space has " + std::to_string(names.size()) + " states; at most " +
                            std::to_string(kMaxStates) + " supported");
    }
    std::unordered_map<std::string, int> seen;
    for (const auto& n : names) {
        if (n.empty()) throw Error("empty state name");
        if (seen[n]++ != 0) throw Error("duplicate state name '" + n + "'");
    }
    return SpacePtr(new StateSpace(std::move(names)));
}

std::size_t StateSpace::index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw SpaceMismatch("unknown state '" + name + "'");
    return it->second;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b) {
    if (!a || !b || !a->same_as(*b)) throw SpaceMismatch("operands belong to different state spaces");
}

// ---------------------------------------------------------------------------

StateSet::StateSet(SpacePtr space, Mask bits) : space_(std::move(space)), bits_(bits) {
    if (!space_) throw SpaceMismatch("state set without a space");
    const auto n = space_->size();
    if (n < 64 && (bits_ >> n) != 0) throw SpaceMismatch("state set has members outside its space");
}

StateSet StateSet::full(SpacePtr space) {
    const auto n = space->size();
    const Mask bits = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
    return StateSet(std::move(space), bits);
}

StateSet StateSet::of(SpacePtr space, const std::vector<std::string>& names) {
    Mask bits = 0;
    for (const auto& n : names) bits |= Mask{1} << space->index(n);
    return StateSet(std::move(space), bits);
}

std::size_t StateSet::count() const { return static_cast<std::size_t>(std::popcount(bits_)); }

bool StateSet::subset_of(const StateSet& other) const {
    require_same_space(space_, other.space_);
    return (bits_ & ~other.bits_) == 0;
}

StateSet StateSet::complement() const { return StateSet(space_, full(space_).bits_ & ~bits_); }

StateSet StateSet::unite(const StateSet& other) const {
    require_same_space(space_, other.space_);
    return StateSet(space_, bits_ | other.bits_);
}

StateSet StateSet::intersect(const StateSet& other) const {
    require_same_space(space_, other.space_);
    return StateSet(space_, bits_ & other.bits_);
}

StateSet StateSet::minus(const StateSet& other) const {
    require_same_space(space_, other.space_);
    return StateSet(space_, bits_ & ~other.bits_);
}

std::vector<std::string> StateSet::names() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < space_->size(); ++i) {
        if (contains(i)) out.push_back(space_->name(i));
    }
    return out;
}

// ---------------------------------------------------------------------------

Dist::Dist(SpacePtr space, std::vector<Rational> weights) : space_(std::move(space)), weights_(std::move(weights)) {
    if (!space_) throw SpaceMismatch("distribution without a space");
    if (weights_.size() != space_->size()) throw SpaceMismatch("distribution length differs from space size");
    Rational sum = 0;
    for (auto& w : weights_) {
        w.canonicalize();
        if (w < 0) throw Error("negative weight in distribution");
        sum += w;
    }
    if (sum > 1) throw Error("distribution mass " + format_rational(sum) + " exceeds 1");
}

Dist::Dist(SpacePtr space, std::vector<Rational> weights, bool) : space_(std::move(space)), weights_(std::move(weights)) {}

Dist Dist::zero(SpacePtr space) {
    const auto n = space->size();
    return Dist(std::move(space), std::vector<Rational>(n, Rational(0)), true);
}

Dist Dist::dirac(SpacePtr space, std::size_t i) {
    std::vector<Rational> w(space->size(), Rational(0));
    w.at(i) = 1;
    return Dist(std::move(space), std::move(w), true);
}

Rational Dist::total() const { return std::accumulate(weights_.begin(), weights_.end(), Rational(0)); }

Rational dist_eval(const Dist& mu, const StateSet& a) {
    require_same_space(mu.space(), a.space());
    Rational sum = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (a.contains(i)) sum += mu[i];
    }
    return sum;
}

Dist dirac(const SpacePtr& space, const std::string& state) { return Dist::dirac(space, space->index(state)); }

Dist localize(const StateSet& a, const Dist& mu) {
    require_same_space(mu.space(), a.space());
    std::vector<Rational> w(mu.weights());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!a.contains(i)) w[i] = 0;
    }
    return Dist(mu.space(), std::move(w), true);
}

}  // namespace sgl
