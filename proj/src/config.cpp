#include "lsmi/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "lsmi/errors.hpp"

namespace lsmi {

namespace {

void reject_unknown(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
    if (!node.IsMap()) throw ConfigError(where + " must be a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.contains(key)) {
            throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
        }
    }
}

template <typename T>
T read(const YAML::Node& node, const std::string& key) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError("key '" + key + "' has the wrong type");
    }
}

template <typename T>
void read_if(const YAML::Node& parent, const std::string& key, const std::string& where, T& out) {
    if (const auto node = parent[key]) out = read<T>(node, where.empty() ? key : where + "." + key);
}

double parse_ratio(const YAML::Node& node) {
    const auto text = read<std::string>(node, "m_ratio");
    const auto slash = text.find('/');
    auto number = [&](std::string_view part) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size()) {
            throw ConfigError("m_ratio '" + text + "' is not a number or p/q ratio");
        }
        return v;
    };
    if (slash == std::string::npos) return number(text);
    const double den = number(std::string_view(text).substr(slash + 1));
    if (den == 0.0) throw ConfigError("m_ratio has a zero denominator");
    return number(std::string_view(text).substr(0, slash)) / den;
}

ScenarioConfig parse_scenario(const YAML::Node& node) {
    reject_unknown(node, "scenario",
                   {"prf", "components", "noise_power", "signal_doppler", "signal_power", "contaminated",
                    "training_signal_power"});
    ScenarioConfig s;
    read_if(node, "prf", "scenario", s.prf);
    read_if(node, "noise_power", "scenario", s.noise_power);
    read_if(node, "signal_doppler", "scenario", s.signal_doppler);
    read_if(node, "signal_power", "scenario", s.signal_power);
    read_if(node, "contaminated", "scenario", s.contaminated);
    if (const auto p = node["training_signal_power"]) {
        s.training_signal_power = read<double>(p, "scenario.training_signal_power");
    }
    if (const auto comps = node["components"]) {
        if (!comps.IsSequence()) throw ConfigError("scenario.components must be a sequence");
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const std::string where = "scenario.components[" + std::to_string(i) + "]";
            reject_unknown(comps[i], where, {"center_doppler", "doppler_spread", "power"});
            InterferenceComponent c;
            read_if(comps[i], "center_doppler", where, c.center_doppler);
            read_if(comps[i], "doppler_spread", where, c.doppler_spread);
            read_if(comps[i], "power", where, c.power);
            s.components.push_back(c);
        }
    }
    return s;
}

}  // namespace

std::string_view sinr_reference_name(SinrReference r) {
    return r == SinrReference::Interference ? "interference" : "interference_plus_noise";
}

std::string_view negative_alpha_name(NegativeAlphaPolicy p) {
    return p == NegativeAlphaPolicy::Reflect ? "reflect" : "clamp";
}

ExperimentConfig parse_experiment_config(std::string_view yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    reject_unknown(root, "", {"scenario", "n_values", "m_ratio", "input_sinr_db", "trials", "seed", "methods",
                              "adaptive_T", "grid", "sinr_reference", "adaptive_negative_alpha", "threads"});

    ExperimentConfig cfg;
    if (const auto s = root["scenario"]) cfg.scenario = parse_scenario(s);
    read_if(root, "n_values", "", cfg.n_values);
    if (const auto r = root["m_ratio"]) cfg.m_ratio = parse_ratio(r);
    read_if(root, "input_sinr_db", "", cfg.input_sinr_db);
    read_if(root, "trials", "", cfg.trials);
    read_if(root, "seed", "", cfg.seed);
    read_if(root, "adaptive_T", "", cfg.adaptive_T);
    read_if(root, "threads", "", cfg.threads);

    if (const auto m = root["methods"]) {
        cfg.methods.clear();
        for (const auto& name : read<std::vector<std::string>>(m, "methods")) {
            const auto method = parse_method(name);
            if (!method) throw ConfigError("unknown method '" + name + "'");
            cfg.methods.push_back(*method);
        }
    }
    if (const auto g = root["grid"]) {
        reject_unknown(g, "grid", {"alpha_min_db", "alpha_max_db", "points"});
        read_if(g, "alpha_min_db", "grid", cfg.grid.alpha_min_db);
        read_if(g, "alpha_max_db", "grid", cfg.grid.alpha_max_db);
        read_if(g, "points", "grid", cfg.grid.points);
    }
    if (const auto r = root["sinr_reference"]) {
        const auto name = read<std::string>(r, "sinr_reference");
        if (name == "interference") {
            cfg.sinr_reference = SinrReference::Interference;
        } else if (name == "interference_plus_noise") {
            cfg.sinr_reference = SinrReference::InterferencePlusNoise;
        } else {
            throw ConfigError("sinr_reference must be 'interference' or 'interference_plus_noise'");
        }
    }
    if (const auto p = root["adaptive_negative_alpha"]) {
        const auto name = read<std::string>(p, "adaptive_negative_alpha");
        if (name == "reflect") {
            cfg.adaptive_negative_alpha = NegativeAlphaPolicy::Reflect;
        } else if (name == "clamp") {
            cfg.adaptive_negative_alpha = NegativeAlphaPolicy::Clamp;
        } else {
            throw ConfigError("adaptive_negative_alpha must be 'reflect' or 'clamp'");
        }
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_experiment_config(text.str());
}

}  // namespace lsmi
