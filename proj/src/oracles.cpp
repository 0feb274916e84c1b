#include "sgl/oracles.hpp"

#include "sgl/error.hpp"

#include <algorithm>
#include <numeric>

namespace sgl::oracle {

namespace {

// Grid points k / denom for k = 0..denom that are NOT in r.
std::vector<bool> outside(const IntervalSet& r, std::size_t denom) {
    std::vector<bool> out(denom + 1);
    for (std::size_t k = 0; k <= denom; ++k) {
        Rational a(static_cast<unsigned long>(k), static_cast<unsigned long>(denom));
        a.canonicalize();
        out[k] = !r.member(a);
    }
    return out;
}

// Largest k with k / denom <= q.
long grid_floor(const Rational& q, std::size_t denom) {
    mpz_class num = q.get_num() * static_cast<unsigned long>(denom);
    mpz_class k;
    mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    return k.get_si();
}

Rational grid_point(std::size_t j, std::size_t grid) {
    Rational q(static_cast<unsigned long>(j), static_cast<unsigned long>(grid));
    q.canonicalize();
    return q;
}

// A common multiple of every endpoint denominator and `base`, times `terms`.
// On that grid every gap between distinct breakpoints and thresholds is at
// least terms + 1 grid steps wide, so a failing rational tuple exists iff a
// failing grid tuple does.
std::size_t fine_denominator(const std::vector<IntervalSet>& sets, std::size_t base, std::size_t terms) {
    unsigned long l = base;
    for (const auto& r : sets) {
        for (const auto& piece : r.intervals()) {
            l = std::lcm(l, piece.lo.get_den().get_ui());
            l = std::lcm(l, piece.hi.get_den().get_ui());
        }
    }
    return l * (terms + 1);
}

}  // namespace

std::size_t grid_for(const std::vector<IntervalSet>& sets, std::size_t grid) {
    return fine_denominator(sets, grid, sets.size());
}

namespace {

// below[x]: some grid point <= x lies outside the set.
std::vector<bool> prefix_outside(const std::vector<bool>& c) {
    std::vector<bool> below(c.size());
    for (std::size_t x = 0; x < c.size(); ++x) below[x] = c[x] || (x > 0 && below[x - 1]);
    return below;
}

bool choice_member_at(const std::vector<bool>& c1, const std::vector<bool>& below2, long limit) {
    if (limit < 0) return true;
    for (long a1 = 0; a1 <= limit; ++a1) {
        if (c1[a1] && below2[limit - a1]) return false;
    }
    return true;
}

// Smallest grid point outside each set, or -1 when a set covers the grid.
std::vector<long> least_outside(const std::vector<IntervalSet>& sets, std::size_t denom) {
    std::vector<long> out;
    for (const auto& r : sets) {
        const auto c = outside(r, denom);
        const auto it = std::find(c.begin(), c.end(), true);
        out.push_back(it == c.end() ? -1 : static_cast<long>(it - c.begin()));
    }
    return out;
}

bool star_member_at(const std::vector<long>& least, Tail tail, long limit) {
    if (tail == Tail::Full || limit < 0) return true;
    // The choices a_n are independent apart from the sum bound, so a failing
    // sequence exists iff the smallest grid point outside each term sums to
    // at most q. The empty tail is escaped with a_n = 0.
    long total = 0;
    for (long l : least) {
        if (l < 0) return true;
        total += l;
    }
    return total > limit;
}

}  // namespace

bool choice_member(const IntervalSet& r1, const IntervalSet& r2, const Rational& q, std::size_t denom) {
    return choice_member_at(outside(r1, denom), prefix_outside(outside(r2, denom)), grid_floor(q, denom));
}

bool star_member(const std::vector<IntervalSet>& prefix, Tail tail, const Rational& q, std::size_t denom) {
    if (tail == Tail::Full) return true;
    return star_member_at(least_outside(prefix, denom), tail, grid_floor(q, denom));
}

std::vector<Rational> choice_mismatches(const IntervalSet& r1, const IntervalSet& r2, std::size_t grid) {
    const IntervalSet fast = choice_combine(r1, r2);
    const std::size_t denom = grid_for({r1, r2}, grid);
    const auto c1 = outside(r1, denom);
    const auto below2 = prefix_outside(outside(r2, denom));
    std::vector<Rational> out;
    for (std::size_t j = 0; j <= grid; ++j) {
        const Rational q = grid_point(j, grid);
        if (fast.member(q) != choice_member_at(c1, below2, grid_floor(q, denom))) out.push_back(q);
    }
    return out;
}

std::vector<Rational> star_mismatches(const std::vector<IntervalSet>& prefix, Tail tail, std::size_t grid,
                                      std::size_t cap) {
    const auto stream = [&](std::size_t n) -> StarTerm {
        if (n < prefix.size()) return StarTerm{prefix[n], false};
        return StarTerm{tail == Tail::Empty ? IntervalSet{} : IntervalSet::unit(), true};
    };
    const StarOutcome fast = star_combine(stream, cap);
    const std::size_t denom = grid_for(prefix, grid);
    const auto least = least_outside(prefix, denom);
    std::vector<Rational> out;
    for (std::size_t j = 0; j <= grid; ++j) {
        const Rational q = grid_point(j, grid);
        const bool want = star_member_at(least, tail, grid_floor(q, denom));
        // A truncated answer is only compared where it claims to know.
        if (fast.certified.member(q) && !want) out.push_back(q);
        else if (!fast.possible.member(q) && want) out.push_back(q);
        else if (fast.exact && fast.certified.member(q) != want) out.push_back(q);
    }
    return out;
}

std::vector<std::vector<Rational>> power_sum(const Kernel& k, std::size_t depth) {
    const std::size_t n = k.size();
    std::vector<std::vector<Rational>> power(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) power[i][i] = 1;
    auto sum = power;
    for (std::size_t d = 1; d <= depth; ++d) {
        std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t u = 0; u < n; ++u) {
                if (power[i][u] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) next[i][j] += power[i][u] * k(u, j);
            }
        }
        power = std::move(next);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) sum[i][j] += power[i][j];
        }
    }
    return sum;
}

std::vector<std::pair<std::size_t, std::size_t>> star_closure_mismatches(const Kernel& k, std::size_t depth,
                                                                          const Rational& threshold) {
    const ExtKernel x = star_closure(k);
    const auto p10 = power_sum(k, 10);
    const auto pn = power_sum(k, depth);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t s = 0; s < k.size(); ++s) {
        for (std::size_t t = 0; t < k.size(); ++t) {
            const ExtValue& v = x.at(s, t);
            bool ok;
            if (v.is_infinite()) {
                ok = pn[s][t] - p10[s][t] > threshold;
            } else {
                ok = p10[s][t] <= pn[s][t] && pn[s][t] <= v.value();
            }
            if (!ok) out.emplace_back(s, t);
        }
    }
    return out;
}

bool portfolio_agrees(const EffectivityFn& p, std::size_t s, const Dist& row, std::size_t grid) {
    const std::size_t n = p.size();
    if (n > 16) throw ResourceLimit("exhaustive portfolio check supports at most 16 states");
    for (StateSet::Mask a = 0; a < (StateSet::Mask{1} << n); ++a) {
        Rational row_mass = 0;
        for (std::size_t t = 0; t < n; ++t) {
            if ((a >> t) & 1U) row_mass += row[t];
        }
        for (std::size_t j = 0; j <= grid; ++j) {
            const Rational q = grid_point(j, grid);
            bool weak = false;
            bool strict = false;
            for (const auto& gen : p.generators(s)) {
                bool all_weak = true;
                bool all_strict = true;
                for (const auto& mu : gen) {
                    Rational m = 0;
                    for (std::size_t t = 0; t < n; ++t) {
                        if ((a >> t) & 1U) m += mu[t];
                    }
                    all_weak = all_weak && m >= q;
                    all_strict = all_strict && m > q;
                }
                weak = weak || all_weak;
                strict = strict || all_strict;
            }
            if (weak != (row_mass >= q) || strict != (row_mass > q)) return false;
        }
    }
    return true;
}

}  // namespace sgl::oracle
