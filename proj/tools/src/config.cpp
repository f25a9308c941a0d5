#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "frontier/error.hpp"

namespace frontier::cli {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw Error(errc::invalid_argument, field + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& scope) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key))
            throw Error(errc::invalid_argument,
                        "unknown config key: " + (scope.empty() ? key : scope + "." + key));
    }
}

double get_number(const json& obj, const char* field, double fallback) {
    if (!obj.contains(field)) return fallback;
    const json& v = obj.at(field);
    if (!v.is_number()) field_error(field, "must be a number");
    return v.get<double>();
}

std::uint64_t get_unsigned(const json& obj, const char* field, std::uint64_t fallback) {
    if (!obj.contains(field)) return fallback;
    const json& v = obj.at(field);
    if (!v.is_number_unsigned()) field_error(field, "must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* field, const std::string& fallback) {
    if (!obj.contains(field)) return fallback;
    const json& v = obj.at(field);
    if (!v.is_string()) field_error(field, "must be a string");
    return v.get<std::string>();
}

std::vector<double> get_number_array(const json& obj, const char* field) {
    if (!obj.contains(field)) field_error(field, "is required");
    const json& v = obj.at(field);
    if (!v.is_array() || v.empty()) field_error(field, "must be a non-empty array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& e : v) {
        if (!e.is_number()) field_error(field, "must be a non-empty array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

DomainBounds parse_bounds(const json& doc) {
    if (!doc.contains("bounds")) field_error("bounds", "is required");
    const json& b = doc.at("bounds");
    if (!b.is_object()) field_error("bounds", "must be an object with min, max, clip_mode");
    reject_unknown_keys(b, {"min", "max", "clip_mode"}, "bounds");

    std::vector<double> lo = get_number_array(b, "min");
    std::vector<double> hi = get_number_array(b, "max");
    const std::string mode = get_string(b, "clip_mode", "clip");
    ClipMode clip;
    if (mode == "clip")
        clip = ClipMode::clip;
    else if (mode == "reject")
        clip = ClipMode::reject;
    else
        field_error("bounds.clip_mode", "must be \"clip\" or \"reject\"");

    try {
        return DomainBounds(BoundingBox(std::move(lo), std::move(hi)), clip);
    } catch (const Error& e) {
        field_error("bounds", e.what());
    }
}

}  // namespace

json load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::invalid_argument, "cannot read config file " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(errc::invalid_argument, path.string() + ": " + e.what());
    }
}

void apply_set_override(json& doc, const std::string& key_eq_value) {
    const auto eq = key_eq_value.find('=');
    if (eq == std::string::npos || eq == 0)
        throw Error(errc::invalid_argument, "--set expects key=value, got \"" + key_eq_value + "\"");
    const std::string key = key_eq_value.substr(0, eq);
    const std::string raw = key_eq_value.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;  // bare words (e.g. update_mode=retrain) are strings
    }

    json* node = &doc;
    std::istringstream path(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(path, part, '.')) parts.push_back(part);
    if (parts.empty()) throw Error(errc::invalid_argument, "--set key is empty");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];
    (*node)[parts.back()] = std::move(value);
}

RunConfig parse_run_config(const json& doc) {
    if (!doc.is_object()) throw Error(errc::invalid_argument, "config root must be an object");
    reject_unknown_keys(doc,
                        {"epsilon", "batch_size", "warmup_size", "num_trees", "max_iterations",
                         "bounds", "collision_tolerance", "seed", "update_mode", "output_dir",
                         "output_format", "emit_per_iteration"},
                        "");

    RunConfig cfg;
    ExplorerConfig defaults;
    cfg.explorer.epsilon = get_number(doc, "epsilon", defaults.epsilon);
    cfg.explorer.batch_size =
        static_cast<std::size_t>(get_unsigned(doc, "batch_size", defaults.batch_size));
    cfg.explorer.warmup_size =
        static_cast<std::size_t>(get_unsigned(doc, "warmup_size", defaults.warmup_size));
    cfg.explorer.num_trees =
        static_cast<std::size_t>(get_unsigned(doc, "num_trees", defaults.num_trees));
    cfg.explorer.max_iterations = get_unsigned(doc, "max_iterations", defaults.max_iterations);
    cfg.explorer.bounds = parse_bounds(doc);
    cfg.explorer.collision_tolerance =
        get_number(doc, "collision_tolerance", defaults.collision_tolerance);
    cfg.explorer.seed = get_unsigned(doc, "seed", defaults.seed);

    const std::string mode = get_string(doc, "update_mode", "streaming");
    if (mode == "streaming")
        cfg.explorer.update_mode = UpdateMode::streaming;
    else if (mode == "retrain")
        cfg.explorer.update_mode = UpdateMode::retrain;
    else
        field_error("update_mode", "must be \"streaming\" or \"retrain\"");

    cfg.output_dir = get_string(doc, "output_dir", "");

    const std::string format = get_string(doc, "output_format", "jsonl");
    if (format == "jsonl")
        cfg.format = LogFormat::jsonl;
    else if (format == "csv")
        cfg.format = LogFormat::csv;
    else
        field_error("output_format", "must be \"jsonl\" or \"csv\"");

    if (doc.contains("emit_per_iteration")) {
        if (!doc.at("emit_per_iteration").is_boolean())
            field_error("emit_per_iteration", "must be a boolean");
        cfg.emit_per_iteration = doc.at("emit_per_iteration").get<bool>();
    }

    cfg.explorer.validate();
    return cfg;
}

std::string resolve_output_dir(const std::string& flag_value, const std::string& config_value,
                               const std::string& fallback) {
    if (!flag_value.empty()) return flag_value;
    if (!config_value.empty()) return config_value;
    if (const char* env = std::getenv("FRONTIER_OUTPUT_DIR"); env && *env) return env;
    return fallback;
}

}  // namespace frontier::cli
