#ifndef SGL_PROFILES_HPP
#define SGL_PROFILES_HPP

#include "sgl/effectivity.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sgl {

struct Interval {
    Rational lo;
    Rational hi;
    bool lo_closed = true;
    bool hi_closed = true;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of intervals inside [0,1] in canonical form: sorted,
/// pairwise disjoint and non-touching, no empty pieces.
class IntervalSet {
public:
    IntervalSet() = default;

    /// Clips to [0,1], drops empty pieces and merges overlaps.
    static IntervalSet from(std::vector<Interval> pieces);
    static IntervalSet unit() { return from({Interval{0, 1, true, true}}); }

    const std::vector<Interval>& intervals() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }
    bool is_unit() const;

    bool member(const Rational& q) const;
    /// Total length; endpoint flags are irrelevant.
    Rational lebesgue() const;
    /// Complement relative to [0,1].
    IntervalSet complement() const;
    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet intersect(const IntervalSet& other) const;
    bool subset_of(const IntervalSet& other) const;

    /// Greatest lower bound and whether it is a member; nullopt when empty.
    std::optional<std::pair<Rational, bool>> infimum() const;

    /// Text form such as "[0,1/2) u (3/4,1]" or "{}".
    std::string str() const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    std::vector<Interval> pieces_;
};

bool member(const IntervalSet& r, const Rational& q);
Rational lebesgue(const IntervalSet& r);
IntervalSet complement(const IntervalSet& r);

/// [0,t) or [0,t]; t must lie in [0,1].
IntervalSet down_interval(const Rational& t, bool inclusive);

/// Complement of the failure set [m,1] (attained) or (m,1] (not attained).
IntervalSet below_threshold(const Rational& m, bool attained);

/// {q | for all rational a1,a2 >= 0 with a1 + a2 <= q: a1 in r1 or a2 in r2}.
IntervalSet choice_combine(const IntervalSet& r1, const IntervalSet& r2);

/// Knowledge about one state's membership profile: `certain` values of q
/// are members, values outside `possible` are not. Exact when they agree.
struct ProfileCell {
    IntervalSet certain;
    IntervalSet possible;
    /// Iteration cap that caused imprecision, if any.
    std::optional<std::size_t> truncated_at;

    static ProfileCell exact(IntervalSet r) { return ProfileCell{r, r, std::nullopt}; }

    bool is_exact() const { return certain == possible; }
    /// Status text: "exact" or "truncated(N)".
    std::string status() const;

    friend bool operator==(const ProfileCell& a, const ProfileCell& b) {
        return a.certain == b.certain && a.possible == b.possible;
    }
};

/// Per-state membership profile of q -> [[game]](A, q).
class Profile {
public:
    Profile() = default;
    explicit Profile(std::vector<ProfileCell> cells) : cells_(std::move(cells)) {}

    std::size_t size() const { return cells_.size(); }
    const ProfileCell& operator[](std::size_t s) const { return cells_[s]; }
    ProfileCell& operator[](std::size_t s) { return cells_[s]; }
    const std::vector<ProfileCell>& cells() const { return cells_; }

    bool is_exact() const;
    bool all_empty() const;

    friend bool operator==(const Profile& a, const Profile& b) { return a.cells_ == b.cells_; }

private:
    std::vector<ProfileCell> cells_;
};

/// Pointwise complement with the knowledge bounds swapped (dual game).
ProfileCell complement(const ProfileCell& c);
ProfileCell choice_combine(const ProfileCell& a, const ProfileCell& b);

/// Composition with a primitive game: per state s the down-interval
/// [0, sup_expectation(P, s, w)) with w(t) = lebesgue of the target cell at t.
Profile compose_prefix(const EffectivityFn& p, const Profile& target);

/// Incremental evaluation of the iteration rule for one state.
///
/// Terms n = 0, 1, ... are fed in order. The failure threshold is
/// m = sum_n inf(complement of term n), attained iff every infimum is; the
/// result is [0,1] as soon as a complement is empty or the partial sums
/// exceed 1. A term flagged `stationary` certifies that all later terms are
/// equal to it; `settle` certifies that the later terms repeat a cycle of
/// terms already fed. Either settles the tail.
class StarAccumulator {
public:
    /// Returns true once the result no longer depends on later terms.
    bool feed(const ProfileCell& term, bool stationary);
    /// The remaining terms cycle through terms already fed. `lower_positive`
    /// says some cycle term's complement of `certain` has a positive infimum,
    /// `upper_positive` the same for the complement of `possible` (an empty
    /// complement counts as positive).
    void settle(bool lower_positive, bool upper_positive);
    /// The two positivity flags of a single term.
    static std::pair<bool, bool> positivity(const ProfileCell& term);
    bool done() const { return done_; }
    std::size_t terms() const { return terms_; }
    /// The exact result when done, otherwise the certified under-approximation.
    ProfileCell result(std::size_t cap) const;

private:
    void finish(IntervalSet certain, IntervalSet possible, bool exact);

    Rational lower_sum_ = 0;
    Rational upper_sum_ = 0;
    bool upper_infinite_ = false;
    bool attained_ = true;
    bool exact_prefix_ = true;
    bool done_ = false;
    std::size_t terms_ = 0;
    ProfileCell final_;
};

struct StarTerm {
    IntervalSet set;
    /// This term and all later ones coincide.
    bool absorbing = false;
};

struct StarOutcome {
    IntervalSet certified;
    IntervalSet possible;
    bool exact = false;
    std::size_t terms_used = 0;
};

/// {q | for every rational sequence (a_k) with sum <= q some a_{n+1} lies in
/// term n}, streaming at most `cap` terms. Without a decision inside the cap
/// the certified part is a sound under-approximation and `exact` is false.
StarOutcome star_combine(const std::function<StarTerm(std::size_t)>& stream, std::size_t cap);

}  // namespace sgl

#endif
