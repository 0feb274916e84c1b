#ifndef SGL_JSON_IO_HPP
#define SGL_JSON_IO_HPP

#include "sgl/semantics.hpp"

#include <json.hpp>

#include <string>

namespace sgl {

using Json = nlohmann::ordered_json;

/// Accepts "p/q", "n", or a JSON integer.
Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r);

Json state_set_to_json(const StateSet& s);
StateSet state_set_from_json(const SpacePtr& space, const Json& j);

/// Name -> "p/q" map over the support, in state order.
Json dist_to_json(const Dist& mu);
Dist dist_from_json(const SpacePtr& space, const Json& j);

Json interval_set_to_json(const IntervalSet& r);
IntervalSet interval_set_from_json(const Json& j);

/// Rows as name -> name -> "p/q" | "inf" over nonzero entries.
Json ext_kernel_to_json(const ExtKernel& k);
Json kernel_to_json(const Kernel& k);

/// Model schema:
/// {"states": [...], "atoms": {p: [states]},
///  "games": {g: {"kind": "kripke", "rows": {s: {t: "p/q"}}}
///             | {"kind": "effectivity", "generators": {s: [[{t: "p/q"}, ...], ...]}}}}
/// Throws ParseError on schema violations.
GameModel model_from_json(const Json& j);
Json model_to_json(const GameModel& m);

/// Reads and parses a model file; throws ParseError on malformed content.
GameModel load_model(const std::string& path);
Json load_json(const std::string& path);

}  // namespace sgl

#endif
