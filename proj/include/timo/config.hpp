#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "timo/certificate.hpp"
#include "timo/field.hpp"
#include "timo/simulate.hpp"
#include "timo/weight_search.hpp"

namespace timo {

/// Configuration problem with a JSON-path context, e.g. "beam.rho.amplitude".
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DiscretizationConfig {
    std::size_t n_elements = 50;
    double dt = 1e-3;
    double t_end = 50.0;
};

struct OutputConfig {
    std::string directory = "out";
    bool dump_system = false;
};

/// One JSON document drives every subcommand. Unknown keys are rejected at
/// every level so typos fail loudly.
struct RunConfig {
    BeamParameters beam;
    std::optional<LyapunovWeights> weights;
    std::optional<SearchConfig> search;
    DiscretizationConfig discretization;
    InitialCondition initial_condition = InitialCondition::raised_cosine_default();
    OutputConfig output;

    static RunConfig from_json(const nlohmann::json& doc);
    static RunConfig from_file(const std::string& path);

    /// Normalized re-serialization: pi-literal strings come back as plain
    /// numbers, defaults are materialized. Parsing the result reproduces it.
    nlohmann::json to_json() const;
};

/// Accepts a JSON number or a "pi"-literal string such as "2pi", "pi/4",
/// "3pi/4", "2*pi/3" or "-pi/2".
double parse_pi_expression(const nlohmann::json& value, const std::string& path);

}  // namespace timo
