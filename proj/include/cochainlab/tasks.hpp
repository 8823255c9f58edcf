#pragma once

#include <optional>

#include "cochainlab/serialize.hpp"

namespace cochainlab {

enum class ConfigErrorCode { E_PARSE, E_TASK, E_SPEC, E_CAP, E_PARAM, E_SEED };

const char* config_error_name(ConfigErrorCode c);

struct ConfigError : std::runtime_error {
    ConfigErrorCode code;
    ConfigError(ConfigErrorCode c, const std::string& msg)
        : std::runtime_error(std::string(config_error_name(c)) + ": " + msg), code(c) {}
};

/// Validated task configuration with defaults filled (degree cap 3,
/// ε = 1e−6); seed is mandatory for randomized tasks.
struct TaskConfig {
    std::string task;
    Json raw;  // canonicalized config (defaults included)
    std::string mode = "exact";
    std::optional<std::uint64_t> seed;
    Json params;
};

bool task_is_randomized(const std::string& task);
const std::vector<std::string>& known_tasks();

TaskConfig parse_config(const std::string& text);

struct Report {
    std::string task;
    std::string status;  // pass | fail | budget-exhausted
    std::string content_hash;
    Json payload;
    double seconds = 0;
    int exit_code = 1;
};

Report run_task(const TaskConfig& cfg);

/// format: "json" (schema-stable, sorted keys) or "table". Exact-mode output
/// carries no timing so reruns are bitwise identical.
std::string emit_report(const Report& r, const std::string& format);

/// FNV-1a 64 hash of the canonicalized config, as fixed-width hex.
std::string content_hash_hex(const Json& canonical);

}  // namespace cochainlab
