#ifndef SGL_RATIONAL_HPP
#define SGL_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sgl {

using Rational = mpq_class;

/// Parses "p/q" or "n" (optionally signed). Throws ParseError on malformed text
/// or a zero denominator. The result is canonicalized.
Rational parse_rational(std::string_view text);

/// Lowest-terms "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& r);

inline bool in_unit_interval(const Rational& r) { return r >= 0 && r <= 1; }

}  // namespace sgl

#endif
