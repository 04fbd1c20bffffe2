#pragma once

/// Model and system files. Models are human-editable JSON with exact integer
/// fields only; floats appear in oracle system files, never in models.
///
/// Model schema:
///   {
///     "label": "name",            optional
///     "p": 3,
///     "a": [3,1,1], "b": [1,1,1], arrays of exactly p non-negative ints
///     "h0": 3, "h": [0,0,0],      h[0] must be 0
///     "r0": 0, "r": [0,0,0],      r[0] must be 0
///     "sw": { "total": 1, "lifts": [1,null,null], "chamber": "plus" }
///   }
/// "sw" is optional and may also be an array of such objects, one per
/// chamber value set.
///
/// System schema:
///   {
///     "p": 3, "in_weights": [1], "out_weights": [2],
///     "equations": [[ {"coeff": [1,0], "powers": [[2,0]]},
///                     {"coeff": [-1,0], "powers": [[0,1]]} ]],
///     "target": [[0,0]]           optional, defaults to zero
///   }

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "esw/errors.hpp"
#include "esw/oracle.hpp"
#include "esw/reps.hpp"

namespace esw {

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end())
        throw schema_error("missing field \"" + key + "\"");
    return *it;
}

inline int require_int(const nlohmann::json& j, const std::string& key) {
    const nlohmann::json& v = require_field(j, key);
    if (!v.is_number_integer())
        throw schema_error("field \"" + key + "\" must be an integer");
    return v.get<int>();
}

inline std::vector<int> require_int_array(const nlohmann::json& j, const std::string& key) {
    const nlohmann::json& v = require_field(j, key);
    if (!v.is_array())
        throw schema_error("field \"" + key + "\" must be an array of integers");
    std::vector<int> out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer())
            throw schema_error("field \"" + key + "[" + std::to_string(i) +
                               "]\" must be an integer");
        out.push_back(v[i].get<int>());
    }
    return out;
}

inline SwValues sw_values_from_json(const nlohmann::json& j, int p) {
    if (!j.is_object())
        throw schema_error("field \"sw\" entries must be objects");
    SwValues out;
    if (auto it = j.find("chamber"); it != j.end() && !it->is_null()) {
        if (!it->is_string())
            throw schema_error("field \"sw.chamber\" must be a string");
        out.chamber = it->get<std::string>();
    }
    if (auto it = j.find("total"); it != j.end() && !it->is_null()) {
        if (!it->is_number_integer())
            throw schema_error("field \"sw.total\" must be an integer");
        out.total = it->get<int>();
    }
    out.lifts.assign(static_cast<size_t>(p), std::nullopt);
    if (auto it = j.find("lifts"); it != j.end() && !it->is_null()) {
        if (!it->is_array() || it->size() != static_cast<size_t>(p))
            throw schema_error("field \"sw.lifts\" must be an array of exactly p entries");
        for (size_t k = 0; k < it->size(); ++k) {
            const nlohmann::json& v = (*it)[k];
            if (v.is_null())
                continue;
            if (!v.is_number_integer())
                throw schema_error("field \"sw.lifts[" + std::to_string(k) +
                                   "]\" must be an integer or null");
            out.lifts[k] = v.get<int>();
        }
    }
    return out;
}

inline std::complex<double> complex_from_json(const nlohmann::json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw schema_error(where + " must be a [re, im] pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

} // namespace detail

inline ModelSpec model_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw schema_error("model file must contain a JSON object");
    const int p_raw = detail::require_int(j, "p");
    PrimeModulus p(p_raw);

    auto vec = [&](const std::string& key) {
        try {
            return WeightVector(p, detail::require_int_array(j, key));
        } catch (const schema_error& e) {
            throw schema_error("field \"" + key + "\": " + e.what());
        }
    };
    std::string label;
    if (auto it = j.find("label"); it != j.end() && !it->is_null()) {
        if (!it->is_string())
            throw schema_error("field \"label\" must be a string");
        label = it->get<std::string>();
    }
    std::vector<SwValues> sw;
    if (auto it = j.find("sw"); it != j.end() && !it->is_null()) {
        if (it->is_array()) {
            for (const nlohmann::json& entry : *it)
                sw.push_back(detail::sw_values_from_json(entry, p.value()));
        } else {
            sw.push_back(detail::sw_values_from_json(*it, p.value()));
        }
    }
    return ModelSpec(p, vec("a"), vec("b"), detail::require_int(j, "h0"), vec("h"),
                     detail::require_int(j, "r0"), vec("r"), std::move(label), std::move(sw));
}

inline nlohmann::json model_to_json(const ModelSpec& m) {
    nlohmann::json j;
    j["label"] = m.label();
    j["p"] = m.p().value();
    j["a"] = m.a().entries();
    j["b"] = m.b().entries();
    j["h0"] = m.h0();
    j["h"] = m.h().entries();
    j["r0"] = m.r0();
    j["r"] = m.r().entries();
    if (!m.sw_sets().empty()) {
        nlohmann::json sets = nlohmann::json::array();
        for (const SwValues& set : m.sw_sets()) {
            nlohmann::json s;
            if (set.chamber)
                s["chamber"] = *set.chamber;
            if (set.total)
                s["total"] = *set.total;
            nlohmann::json lifts = nlohmann::json::array();
            for (const auto& v : set.lifts)
                lifts.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
            s["lifts"] = lifts;
            sets.push_back(std::move(s));
        }
        j["sw"] = sets.size() == 1 ? sets[0] : sets;
    }
    return j;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw schema_error(path + ": cannot open file");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw schema_error(path + ": " + e.what());
    }
}

inline ModelSpec load_model_file(const std::string& path) {
    try {
        return model_from_json(load_json_file(path));
    } catch (const schema_error& e) {
        std::string what = e.what();
        if (what.rfind(path, 0) == 0)
            throw;
        throw schema_error(path + ": " + what);
    }
}

inline EquivariantSystem system_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw schema_error("system file must contain a JSON object");
    EquivariantSystem sys;
    sys.p = detail::require_int(j, "p");
    sys.in_weights = detail::require_int_array(j, "in_weights");
    sys.out_weights = detail::require_int_array(j, "out_weights");
    const nlohmann::json& eqs = detail::require_field(j, "equations");
    if (!eqs.is_array())
        throw schema_error("field \"equations\" must be an array");
    for (size_t c = 0; c < eqs.size(); ++c) {
        if (!eqs[c].is_array())
            throw schema_error("equations[" + std::to_string(c) + "] must be an array of monomials");
        std::vector<Monomial> eq;
        for (size_t t = 0; t < eqs[c].size(); ++t) {
            const nlohmann::json& mj = eqs[c][t];
            const std::string where =
                "equations[" + std::to_string(c) + "][" + std::to_string(t) + "]";
            Monomial m;
            m.coeff = detail::complex_from_json(detail::require_field(mj, "coeff"),
                                                where + ".coeff");
            const nlohmann::json& powers = detail::require_field(mj, "powers");
            if (!powers.is_array())
                throw schema_error(where + ".powers must be an array of [alpha, beta] pairs");
            for (const nlohmann::json& pw : powers) {
                if (!pw.is_array() || pw.size() != 2 || !pw[0].is_number_integer() ||
                    !pw[1].is_number_integer())
                    throw schema_error(where + ".powers entries must be [alpha, beta] pairs");
                m.powers.emplace_back(pw[0].get<int>(), pw[1].get<int>());
            }
            eq.push_back(std::move(m));
        }
        sys.equations.push_back(std::move(eq));
    }
    sys.target.assign(sys.out_weights.size(), {0.0, 0.0});
    if (auto it = j.find("target"); it != j.end() && !it->is_null()) {
        if (!it->is_array() || it->size() != sys.out_weights.size())
            throw schema_error("field \"target\" must have one [re, im] pair per output");
        for (size_t c = 0; c < it->size(); ++c)
            sys.target[c] = detail::complex_from_json((*it)[c],
                                                      "target[" + std::to_string(c) + "]");
    }
    try {
        validate_system(sys);
    } catch (const oracle_error& e) {
        throw schema_error(std::string("invalid system: ") + e.what());
    }
    return sys;
}

inline nlohmann::json system_to_json(const EquivariantSystem& sys) {
    nlohmann::json j;
    j["p"] = sys.p;
    j["in_weights"] = sys.in_weights;
    j["out_weights"] = sys.out_weights;
    nlohmann::json eqs = nlohmann::json::array();
    for (const auto& eq : sys.equations) {
        nlohmann::json terms = nlohmann::json::array();
        for (const Monomial& m : eq) {
            nlohmann::json mj;
            mj["coeff"] = {m.coeff.real(), m.coeff.imag()};
            nlohmann::json powers = nlohmann::json::array();
            for (const auto& [al, be] : m.powers)
                powers.push_back({al, be});
            mj["powers"] = powers;
            terms.push_back(std::move(mj));
        }
        eqs.push_back(std::move(terms));
    }
    j["equations"] = eqs;
    nlohmann::json target = nlohmann::json::array();
    for (const auto& t : sys.target)
        target.push_back({t.real(), t.imag()});
    j["target"] = target;
    return j;
}

inline EquivariantSystem load_system_file(const std::string& path) {
    try {
        return system_from_json(load_json_file(path));
    } catch (const schema_error& e) {
        std::string what = e.what();
        if (what.rfind(path, 0) == 0)
            throw;
        throw schema_error(path + ": " + what);
    }
}

} // namespace esw
