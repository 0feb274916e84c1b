#include "sgl/json_io.hpp"

#include "sgl/error.hpp"

#include <fstream>
#include <sstream>

namespace sgl {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
    return j.at(key);
}

}  // namespace

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.dump());
    throw ParseError("expected a rational string such as \"1/2\", got " + j.dump());
}

Json rational_to_json(const Rational& r) { return format_rational(r); }

Json state_set_to_json(const StateSet& s) {
    Json out = Json::array();
    for (const auto& n : s.names()) out.push_back(n);
    return out;
}

StateSet state_set_from_json(const SpacePtr& space, const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of state names, got " + j.dump());
    std::vector<std::string> names;
    for (const auto& x : j) {
        if (!x.is_string()) throw ParseError("state names must be strings, got " + x.dump());
        const auto n = x.get<std::string>();
        if (!space->contains(n)) throw ParseError("unknown state '" + n + "'");
        names.push_back(n);
    }
    return StateSet::of(space, names);
}

Json dist_to_json(const Dist& mu) {
    Json out = Json::object();
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] != 0) out[mu.space()->name(i)] = format_rational(mu[i]);
    }
    return out;
}

Dist dist_from_json(const SpacePtr& space, const Json& j) {
    if (!j.is_object()) throw ParseError("expected a distribution object, got " + j.dump());
    std::vector<Rational> w(space->size(), Rational(0));
    for (const auto& [k, v] : j.items()) {
        if (!space->contains(k)) throw ParseError("unknown state '" + k + "' in distribution");
        w[space->index(k)] = rational_from_json(v);
    }
    try {
        return Dist(space, std::move(w));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("invalid distribution: ") + e.what());
    }
}

Json interval_set_to_json(const IntervalSet& r) {
    Json out = Json::array();
    for (const auto& iv : r.intervals()) {
        out.push_back(Json{{"lo", format_rational(iv.lo)},
                           {"hi", format_rational(iv.hi)},
                           {"lo_closed", iv.lo_closed},
                           {"hi_closed", iv.hi_closed}});
    }
    return out;
}

IntervalSet interval_set_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an interval list");
    std::vector<Interval> pieces;
    for (const auto& x : j) {
        pieces.push_back(Interval{rational_from_json(field(x, "lo", "interval")), rational_from_json(field(x, "hi", "interval")),
                                  field(x, "lo_closed", "interval").get<bool>(), field(x, "hi_closed", "interval").get<bool>()});
    }
    return IntervalSet::from(std::move(pieces));
}

Json ext_kernel_to_json(const ExtKernel& k) {
    Json out = Json::object();
    const auto& names = k.space()->names();
    for (std::size_t s = 0; s < k.size(); ++s) {
        Json row = Json::object();
        for (std::size_t t = 0; t < k.size(); ++t) {
            if (!k.at(s, t).is_zero()) row[names[t]] = k.at(s, t).str();
        }
        out[names[s]] = std::move(row);
    }
    return out;
}

Json kernel_to_json(const Kernel& k) {
    Json out = Json::object();
    for (std::size_t s = 0; s < k.size(); ++s) out[k.space()->name(s)] = dist_to_json(k.row(s));
    return out;
}

GameModel model_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("model must be a JSON object");
    const Json& states = field(j, "states", "model");
    if (!states.is_array()) throw ParseError("\"states\" must be an array");
    std::vector<std::string> names;
    for (const auto& s : states) {
        if (!s.is_string()) throw ParseError("state names must be strings");
        names.push_back(s.get<std::string>());
    }
    SpacePtr space;
    try {
        space = StateSpace::make(names);
    } catch (const ResourceLimit&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("invalid state list: ") + e.what());
    }

    std::map<std::string, StateSet> atoms;
    if (j.contains("atoms")) {
        const Json& a = j.at("atoms");
        if (!a.is_object()) throw ParseError("\"atoms\" must be an object");
        for (const auto& [p, v] : a.items()) atoms.emplace(p, state_set_from_json(space, v));
    }

    std::map<std::string, Interpretation> games;
    if (j.contains("games")) {
        const Json& g = j.at("games");
        if (!g.is_object()) throw ParseError("\"games\" must be an object");
        for (const auto& [name, spec] : g.items()) {
            const std::string where = "game '" + name + "'";
            const Json& kind = field(spec, "kind", where);
            if (kind == "kripke") {
                const Json& rows = field(spec, "rows", where);
                if (!rows.is_object()) throw ParseError(where + ": \"rows\" must be an object");
                std::vector<Dist> ds(space->size(), Dist::zero(space));
                for (const auto& [s, row] : rows.items()) {
                    if (!space->contains(s)) throw ParseError(where + ": unknown state '" + s + "'");
                    ds[space->index(s)] = dist_from_json(space, row);
                }
                games.emplace(name, Kernel(std::move(ds)));
            } else if (kind == "effectivity") {
                const Json& gens = field(spec, "generators", where);
                if (!gens.is_object()) throw ParseError(where + ": \"generators\" must be an object");
                std::vector<std::vector<Generator>> per_state(space->size());
                for (const auto& [s, list] : gens.items()) {
                    if (!space->contains(s)) throw ParseError(where + ": unknown state '" + s + "'");
                    if (!list.is_array()) throw ParseError(where + ": generators of '" + s + "' must be an array");
                    auto& out = per_state[space->index(s)];
                    for (const auto& gen : list) {
                        if (!gen.is_array()) throw ParseError(where + ": each generator must be an array of distributions");
                        Generator g2;
                        for (const auto& mu : gen) g2.push_back(dist_from_json(space, mu));
                        out.push_back(std::move(g2));
                    }
                }
                for (std::size_t s = 0; s < space->size(); ++s) {
                    if (per_state[s].empty()) throw ParseError(where + ": state '" + space->name(s) + "' has no generators");
                    for (const auto& g2 : per_state[s]) {
                        if (g2.empty()) throw ParseError(where + ": empty generator at '" + space->name(s) + "'");
                    }
                }
                games.emplace(name, EffectivityFn(space, std::move(per_state)));
            } else {
                throw ParseError(where + ": kind must be \"kripke\" or \"effectivity\"");
            }
        }
    }
    try {
        return GameModel(space, std::move(games), std::move(atoms));
    } catch (const ParseError&) {
        throw;
    } catch (const SpaceMismatch&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

Json model_to_json(const GameModel& m) {
    Json out;
    out["states"] = m.space()->names();
    Json atoms = Json::object();
    for (const auto& [p, v] : m.atoms()) atoms[p] = state_set_to_json(v);
    out["atoms"] = atoms;
    Json games = Json::object();
    for (const auto& [name, interp] : m.games()) {
        if (const Kernel* k = m.kernel(name)) {
            games[name] = Json{{"kind", "kripke"}, {"rows", kernel_to_json(*k)}};
            continue;
        }
        const EffectivityFn& p = m.effectivity(name);
        Json gens = Json::object();
        for (std::size_t s = 0; s < p.size(); ++s) {
            Json list = Json::array();
            for (const auto& g : p.generators(s)) {
                Json one = Json::array();
                for (const auto& mu : g) one.push_back(dist_to_json(mu));
                list.push_back(std::move(one));
            }
            gens[m.space()->name(s)] = std::move(list);
        }
        games[name] = Json{{"kind", "effectivity"}, {"generators", gens}};
    }
    out["games"] = games;
    return out;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

GameModel load_model(const std::string& path) {
    const Json j = load_json(path);
    try {
        return model_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace sgl
