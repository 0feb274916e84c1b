#include "sgl/profiles.hpp"

#include "sgl/error.hpp"

#include <algorithm>

namespace sgl {

namespace {

bool is_empty_piece(const Interval& iv) {
    return iv.lo > iv.hi || (iv.lo == iv.hi && !(iv.lo_closed && iv.hi_closed));
}

// Left endpoints order: smaller first, closed before open on ties.
bool starts_before(const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
}

}  // namespace

IntervalSet IntervalSet::from(std::vector<Interval> pieces) {
    std::vector<Interval> clipped;
    for (auto iv : pieces) {
        iv.lo.canonicalize();
        iv.hi.canonicalize();
        if (iv.lo < 0) {
            iv.lo = 0;
            iv.lo_closed = true;
        }
        if (iv.hi > 1) {
            iv.hi = 1;
            iv.hi_closed = true;
        }
        if (!is_empty_piece(iv)) clipped.push_back(iv);
    }
    std::sort(clipped.begin(), clipped.end(), starts_before);

    IntervalSet out;
    for (const auto& iv : clipped) {
        if (out.pieces_.empty()) {
            out.pieces_.push_back(iv);
            continue;
        }
        Interval& cur = out.pieces_.back();
        const bool joins = cur.hi > iv.lo || (cur.hi == iv.lo && (cur.hi_closed || iv.lo_closed));
        if (!joins) {
            out.pieces_.push_back(iv);
            continue;
        }
        if (iv.hi > cur.hi) {
            cur.hi = iv.hi;
            cur.hi_closed = iv.hi_closed;
        } else if (iv.hi == cur.hi) {
            cur.hi_closed = cur.hi_closed || iv.hi_closed;
        }
    }
    return out;
}

bool IntervalSet::is_unit() const {
    return pieces_.size() == 1 && pieces_[0].lo == 0 && pieces_[0].hi == 1 && pieces_[0].lo_closed && pieces_[0].hi_closed;
}

bool IntervalSet::member(const Rational& q) const {
    for (const auto& iv : pieces_) {
        const bool above = iv.lo < q || (iv.lo == q && iv.lo_closed);
        const bool below = q < iv.hi || (q == iv.hi && iv.hi_closed);
        if (above && below) return true;
    }
    return false;
}

Rational IntervalSet::lebesgue() const {
    Rational total = 0;
    for (const auto& iv : pieces_) total += iv.hi - iv.lo;
    return total;
}

IntervalSet IntervalSet::complement() const {
    std::vector<Interval> gaps;
    Rational cur = 0;
    bool cur_closed = true;
    for (const auto& iv : pieces_) {
        gaps.push_back(Interval{cur, iv.lo, cur_closed, !iv.lo_closed});
        cur = iv.hi;
        cur_closed = !iv.hi_closed;
    }
    gaps.push_back(Interval{cur, 1, cur_closed, true});
    return from(std::move(gaps));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<Interval> all = pieces_;
    all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
    return from(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    return complement().unite(other.complement()).complement();
}

bool IntervalSet::subset_of(const IntervalSet& other) const { return unite(other) == other; }

std::optional<std::pair<Rational, bool>> IntervalSet::infimum() const {
    if (pieces_.empty()) return std::nullopt;
    return std::make_pair(pieces_.front().lo, pieces_.front().lo_closed);
}

std::string IntervalSet::str() const {
    if (pieces_.empty()) return "{}";
    std::string out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& iv = pieces_[i];
        if (i) out += " u ";
        if (iv.lo == iv.hi) {
            out += "{" + format_rational(iv.lo) + "}";
            continue;
        }
        out += iv.lo_closed ? "[" : "(";
        out += format_rational(iv.lo) + "," + format_rational(iv.hi);
        out += iv.hi_closed ? "]" : ")";
    }
    return out;
}

bool member(const IntervalSet& r, const Rational& q) { return r.member(q); }
Rational lebesgue(const IntervalSet& r) { return r.lebesgue(); }
IntervalSet complement(const IntervalSet& r) { return r.complement(); }

IntervalSet down_interval(const Rational& t, bool inclusive) {
    if (!in_unit_interval(t)) throw Error("down_interval: bound " + format_rational(t) + " outside [0,1]");
    return IntervalSet::from({Interval{0, t, true, inclusive}});
}

IntervalSet below_threshold(const Rational& m, bool attained) {
    if (m > 1) return IntervalSet::unit();
    return IntervalSet::from({Interval{0, m, true, !attained}});
}

IntervalSet choice_combine(const IntervalSet& r1, const IntervalSet& r2) {
    const auto c1 = r1.complement().infimum();
    const auto c2 = r2.complement().infimum();
    if (!c1 || !c2) return IntervalSet::unit();
    return below_threshold(c1->first + c2->first, c1->second && c2->second);
}

// ---------------------------------------------------------------------------

std::string ProfileCell::status() const {
    if (is_exact()) return "exact";
    return "truncated(" + std::to_string(truncated_at.value_or(0)) + ")";
}

bool Profile::is_exact() const {
    return std::all_of(cells_.begin(), cells_.end(), [](const ProfileCell& c) { return c.is_exact(); });
}

bool Profile::all_empty() const {
    return std::all_of(cells_.begin(), cells_.end(),
                       [](const ProfileCell& c) { return c.is_exact() && c.certain.empty(); });
}

namespace {

std::optional<std::size_t> merge_truncation(const std::optional<std::size_t>& a, const std::optional<std::size_t>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::max(*a, *b);
}

ProfileCell tidy(ProfileCell c) {
    if (c.is_exact()) c.truncated_at.reset();
    return c;
}

}  // namespace

ProfileCell complement(const ProfileCell& c) {
    return tidy(ProfileCell{c.possible.complement(), c.certain.complement(), c.truncated_at});
}

ProfileCell choice_combine(const ProfileCell& a, const ProfileCell& b) {
    return tidy(ProfileCell{choice_combine(a.certain, b.certain), choice_combine(a.possible, b.possible),
                            merge_truncation(a.truncated_at, b.truncated_at)});
}

Profile compose_prefix(const EffectivityFn& p, const Profile& target) {
    if (target.size() != p.size()) throw SpaceMismatch("profile size differs from space size");
    const auto n = p.size();
    std::vector<Rational> w_certain(n);
    std::vector<Rational> w_possible(n);
    std::optional<std::size_t> trunc;
    bool exact = true;
    for (std::size_t t = 0; t < n; ++t) {
        w_certain[t] = target[t].certain.lebesgue();
        w_possible[t] = target[t].possible.lebesgue();
        trunc = merge_truncation(trunc, target[t].truncated_at);
        exact = exact && target[t].is_exact();
    }
    std::vector<ProfileCell> cells;
    cells.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        IntervalSet lo = down_interval(sup_expectation(p, s, w_certain), false);
        if (exact) {
            cells.push_back(ProfileCell::exact(std::move(lo)));
            continue;
        }
        IntervalSet hi = down_interval(sup_expectation(p, s, w_possible), false);
        cells.push_back(tidy(ProfileCell{std::move(lo), std::move(hi), trunc}));
    }
    return Profile(std::move(cells));
}

// ---------------------------------------------------------------------------

void StarAccumulator::finish(IntervalSet certain, IntervalSet possible, bool exact) {
    done_ = true;
    if (exact) {
        final_ = ProfileCell::exact(std::move(certain));
    } else {
        final_ = ProfileCell{std::move(certain), std::move(possible), std::nullopt};
    }
}

bool StarAccumulator::feed(const ProfileCell& term, bool stationary) {
    if (done_) return true;
    ++terms_;

    // The true complement lies between co(possible) and co(certain).
    const auto lower_inf = term.certain.complement().infimum();
    const auto upper_inf = term.possible.complement().infimum();
    if (!lower_inf) {
        finish(IntervalSet::unit(), {}, true);
        return true;
    }
    const bool term_exact = term.is_exact();
    lower_sum_ += lower_inf->first;
    if (upper_inf) upper_sum_ += upper_inf->first;
    else upper_infinite_ = true;
    if (term_exact) attained_ = attained_ && lower_inf->second;
    else exact_prefix_ = false;

    if (lower_sum_ > 1) {
        finish(IntervalSet::unit(), {}, true);
        return true;
    }
    if (stationary) {
        const auto [lower_positive, upper_positive] = positivity(term);
        settle(lower_positive, upper_positive);
        return true;
    }
    return false;
}

std::pair<bool, bool> StarAccumulator::positivity(const ProfileCell& term) {
    const auto lower_inf = term.certain.complement().infimum();
    const auto upper_inf = term.possible.complement().infimum();
    return {!lower_inf || lower_inf->first > 0, !upper_inf || upper_inf->first > 0};
}

void StarAccumulator::settle(bool lower_positive, bool upper_positive) {
    if (done_) return;
    if (lower_positive) {
        // Infinitely many repetitions of a positive infimum: no summable witness.
        finish(IntervalSet::unit(), {}, true);
    } else if (exact_prefix_) {
        finish(below_threshold(lower_sum_, attained_), {}, true);
    } else {
        const bool diverges = upper_infinite_ || upper_positive;
        IntervalSet possible = diverges ? IntervalSet::unit() : below_threshold(upper_sum_, false);
        finish(below_threshold(lower_sum_, true), std::move(possible), false);
    }
}

ProfileCell StarAccumulator::result(std::size_t cap) const {
    if (done_) {
        ProfileCell c = final_;
        if (!c.is_exact()) c.truncated_at = cap;
        return c;
    }
    IntervalSet certain = exact_prefix_ ? below_threshold(lower_sum_, attained_) : below_threshold(lower_sum_, true);
    // Exact prefix sums already equal to the final threshold cannot be told
    // apart from a tail that adds more, so the threshold point stays uncertain.
    if (exact_prefix_ && attained_) certain = below_threshold(lower_sum_, true);
    ProfileCell c{std::move(certain), IntervalSet::unit(), cap};
    return tidy(c);
}

StarOutcome star_combine(const std::function<StarTerm(std::size_t)>& stream, std::size_t cap) {
    if (cap == 0) throw Error("star_combine: cap must be positive");
    StarAccumulator acc;
    for (std::size_t n = 0; n < cap && !acc.done(); ++n) {
        StarTerm t = stream(n);
        acc.feed(ProfileCell::exact(std::move(t.set)), t.absorbing);
    }
    ProfileCell c = acc.result(cap);
    return StarOutcome{c.certain, c.possible, c.is_exact(), acc.terms()};
}

}  // namespace sgl
