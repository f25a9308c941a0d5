#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frontier/explorer.hpp"
#include "logio.hpp"

namespace frontier::cli {

// ExplorerConfig plus the output plumbing the run command needs.
struct RunConfig {
    ExplorerConfig explorer;
    std::string output_dir;  // empty = not set in the file
    LogFormat format = LogFormat::jsonl;
    bool emit_per_iteration = true;
};

// Reads and parses the file; parse errors are reported with the json
// diagnostic (byte offset).
nlohmann::json load_config_file(const std::filesystem::path& path);

// `key=value` with dotted paths (`bounds.clip_mode=reject`); the value is
// parsed as a json fragment, falling back to a string.
void apply_set_override(nlohmann::json& doc, const std::string& key_eq_value);

// Validates the document against the schema (unknown keys rejected, every
// diagnostic names its field) and re-checks all ExplorerConfig invariants.
RunConfig parse_run_config(const nlohmann::json& doc);

// flag > config file > FRONTIER_OUTPUT_DIR > fallback.
std::string resolve_output_dir(const std::string& flag_value, const std::string& config_value,
                               const std::string& fallback);

}  // namespace frontier::cli
