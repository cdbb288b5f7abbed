#pragma once

// Model configuration as a flat JSON object. Every EdcsParams and
// SaleScenario field is a key; unknown keys are rejected so that a misspelt
// rate cannot silently fall back to its default.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vbank/scenarios.hpp"

namespace vbank {

struct ModelConfig {
    EdcsParams params;
    SaleScenario scenario;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Keys present in `text` override `base`. Result is validated.
ModelConfig parse_config(std::string_view text, const ModelConfig& base = {});
ModelConfig load_config(const std::filesystem::path& path, const ModelConfig& base = {});

/// All keys, pretty printed; parse_config(dump_config(c)) == c.
std::string dump_config(const ModelConfig& c);

bool operator==(const ModelConfig& a, const ModelConfig& b);

} // namespace vbank
