#ifndef SGL_TEST_HELPERS_HPP
#define SGL_TEST_HELPERS_HPP

#include "sgl/profiles.hpp"
#include "sgl/space.hpp"

#include <initializer_list>
#include <string>
#include <vector>

#ifndef SGL_DATA_DIR
#define SGL_DATA_DIR "tests/data"
#endif

namespace sgl::testing {

inline Rational q(const char* text) { return parse_rational(text); }

inline Dist dist(const SpacePtr& space, std::initializer_list<const char*> weights) {
    std::vector<Rational> w;
    for (const char* t : weights) w.push_back(parse_rational(t));
    return Dist(space, std::move(w));
}

inline StateSet states(const SpacePtr& space, const std::vector<std::string>& names) {
    return StateSet::of(space, names);
}

inline Interval iv(const char* lo, const char* hi, bool lo_closed, bool hi_closed) {
    return Interval{parse_rational(lo), parse_rational(hi), lo_closed, hi_closed};
}

inline IntervalSet iset(std::initializer_list<Interval> pieces) { return IntervalSet::from(pieces); }

inline std::string data_file(const std::string& name) { return std::string(SGL_DATA_DIR) + "/" + name; }

}  // namespace sgl::testing

#endif
