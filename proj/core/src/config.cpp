#include "dqw/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "dqw/errors.hpp"

namespace dqw {

using nlohmann::json;

namespace {

double required_param(const EnsembleSpec& spec, const char* key) {
    if (!spec.params.contains(key)) throw ConfigError("ensemble '" + spec.name + "' needs parameter '" + key + "'");
    const auto& v = spec.params.at(key);
    if (!v.is_number()) throw ConfigError(std::string("parameter '") + key + "' must be a number");
    return v.get<double>();
}

void allow_only(const EnsembleSpec& spec, std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : spec.params.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
            throw ConfigError("ensemble '" + spec.name + "' does not take parameter '" + key + "'");
        }
    }
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    while (first < last && *first == ' ') ++first;
    while (last > first && last[-1] == ' ') --last;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) throw ConfigError("not a number: '" + text + "'");
    return value;
}

}  // namespace

EnsembleSpec EnsembleSpec::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("ensemble config must be a JSON object");
    EnsembleSpec spec;
    try {
        spec.name = j.at("ensemble").get<std::string>();
        if (j.contains("params")) spec.params = j.at("params");
        if (j.contains("seed")) {
            const auto& seed = j.at("seed");
            if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<long long>() < 0))
                throw ConfigError("'seed' must be a non-negative integer");
            spec.seed = seed.get<std::uint64_t>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad ensemble config: ") + e.what());
    }
    if (!spec.params.is_object()) throw ConfigError("'params' must be an object");
    if (std::find(kEnsembleNames.begin(), kEnsembleNames.end(), spec.name) == kEnsembleNames.end()) {
        throw ConfigError("unknown ensemble '" + spec.name + "'");
    }
    return spec;
}

json EnsembleSpec::to_json() const { return {{"ensemble", name}, {"params", params}, {"seed", seed}}; }

CoinEnsemble build_ensemble(const EnsembleSpec& spec) {
    try {
        if (spec.name == "ribeiro_uniform") {
            allow_only(spec, {});
            return make_ribeiro_uniform();
        }
        if (spec.name == "ribeiro_two_point") {
            allow_only(spec, {"xi"});
            return make_ribeiro_two_point(required_param(spec, "xi"));
        }
        if (spec.name == "mackay_uniform") {
            allow_only(spec, {});
            return make_mackay_uniform();
        }
        if (spec.name == "shapira") {
            allow_only(spec, {"sigma"});
            return make_shapira(required_param(spec, "sigma"));
        }
        if (spec.name == "fixed_hadamard") {
            allow_only(spec, {});
            return make_fixed_hadamard();
        }
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown ensemble '" + spec.name + "'");
}

InitialStateRule build_initial_state(const std::string& spec) {
    if (spec == "caseI") return InitialStateRule::case_I_default();
    if (spec == "caseII") return InitialStateRule::case_II_uniform_phase();

    std::vector<double> parts;
    std::size_t begin = 0;
    for (;;) {
        const std::size_t comma = spec.find(',', begin);
        parts.push_back(parse_double(spec.substr(begin, comma - begin)));
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    try {
        if (parts.size() == 2) return InitialStateRule::fixed(parts[0], parts[1]);
        if (parts.size() == 4) return InitialStateRule::fixed({parts[0], parts[1]}, {parts[2], parts[3]});
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("initial state must be caseI, caseII, 'a,b' or 'ar,ai,br,bi'; got '" + spec + "'");
}

}  // namespace dqw
