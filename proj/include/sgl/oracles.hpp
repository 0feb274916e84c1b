#ifndef SGL_ORACLES_HPP
#define SGL_ORACLES_HPP

// Brute-force reference computations. They evaluate the defining
// quantifications directly on finite grids and share no code with the
// closed forms they are compared against.

#include "sgl/effectivity.hpp"
#include "sgl/kernels.hpp"
#include "sgl/profiles.hpp"

#include <cstddef>
#include <vector>

namespace sgl::oracle {

/// Tail of a term stream after the explicit prefix.
enum class Tail { Empty, Full };

/// Grid denominator used by the exhaustive searches below: a multiple of
/// `grid` and of every endpoint denominator, with one extra factor per term
/// so that points just inside open endpoints are available.
std::size_t grid_for(const std::vector<IntervalSet>& sets, std::size_t grid);

/// Membership of q in the choice rule's defining set, searching all pairs
/// (a1, a2) of multiples of 1/denom with a1 + a2 <= q for a failing pair.
bool choice_member(const IntervalSet& r1, const IntervalSet& r2, const Rational& q, std::size_t denom);

/// Membership of q in the iteration rule's defining set for the stream
/// prefix followed by an Empty (every term is the empty set) or Full
/// (every term is [0,1]) tail, searching sequences of multiples of 1/denom.
bool star_member(const std::vector<IntervalSet>& prefix, Tail tail, const Rational& q, std::size_t denom);

/// All q = j/grid with j = 0..grid at which the two membership predicates differ.
std::vector<Rational> choice_mismatches(const IntervalSet& r1, const IntervalSet& r2, std::size_t grid);
std::vector<Rational> star_mismatches(const std::vector<IntervalSet>& prefix, Tail tail, std::size_t grid,
                                      std::size_t cap);

/// sum_{n <= depth} K^n by repeated multiplication.
std::vector<std::vector<Rational>> power_sum(const Kernel& k, std::size_t depth);

/// Compares star_closure against power sums at depths 10 and `depth`:
/// finite entries must dominate both partial sums and equal the limit
/// within the monotone bound; infinite entries must have partial sums
/// exceeding `threshold` at `depth`. Returns the offending (s, t) pairs.
std::vector<std::pair<std::size_t, std::size_t>> star_closure_mismatches(const Kernel& k, std::size_t depth,
                                                                          const Rational& threshold);

/// For each subset A and each q = j/grid, compares membership of beta(A, >= q)
/// and beta(A, > q) in P(s) (evaluated generator by generator) with the
/// kernel row's value. True when all agree.
bool portfolio_agrees(const EffectivityFn& p, std::size_t s, const Dist& row, std::size_t grid);

}  // namespace sgl::oracle

#endif
