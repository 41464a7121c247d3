#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcpdc/csd.hpp"
#include "pcpdc/opamp.hpp"

namespace pcpdc::app {

/// Invalid configuration: syntax error, missing or unknown field, or a value
/// outside the domain of the type it populates. Maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    std::size_t n = 0;
    double half_width = 0.0;
};

/// Either explicit GSM widths or a directly set coherence ratio.
struct SourceSpec {
    std::optional<GsmParams> gsm;
    std::optional<double> lambda;
    double amplitude = 1.0;

    /// GSM parameters to build the source kernel from. A direct lambda maps
    /// to sigma_c = 1, sigma_s = lambda.
    GsmParams gsm_params() const;
    /// sigma_s / sigma_c or the direct lambda.
    double coherence_ratio() const;
};

struct AnalysisSpec {
    double m_e = 0.0;
    std::size_t n_modes = 0;
    std::size_t series_order = 0;
};

struct OutputSpec {
    std::filesystem::path directory;
    bool csv = true;
    bool json = true;
};

struct RunConfig {
    GridSpec grid;
    GridSpec k_grid;
    SourceSpec source;
    PumpModeParams pump;
    PhaseMatchingModel phase_matching;
    AnalysisSpec analysis;
    OutputSpec output;
    std::vector<double> figure1_lambdas;
    double figure2_step = 0.001;
};

/// The built-in configuration, identical to config/default.json.
nlohmann::json default_config_json();

/// Parses a config file; syntax errors carry line and column.
nlohmann::json load_config_text(const std::string& text, const std::string& origin = "config");
nlohmann::json load_config_file(const std::filesystem::path& path);

/// Applies "dotted.path=value". The value is read as JSON when it parses as
/// JSON, otherwise as a plain string. A null value removes the key.
void apply_override(nlohmann::json& config, const std::string& assignment);

/// Validates every field (unknown keys rejected) and builds the typed config.
RunConfig parse_config(const nlohmann::json& config);

} // namespace pcpdc::app
