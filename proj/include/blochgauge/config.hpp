#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "blochgauge/functions.hpp"
#include "blochgauge/weights.hpp"

namespace blochgauge {

/// A parsed audit configuration. Function, weight and boundary specs are kept
/// as raw JSON and materialized by the runner.
struct AuditConfig {
    std::string command; // check | lemma | thm2 | little-bloch | weights

    nlohmann::json function_spec;
    nlohmann::json boundary_spec;
    nlohmann::json weight_spec;

    int grid_k = 10;
    int grid_j = 64;
    std::size_t nodes = 1024;
    int boundary_samples = 64;

    unsigned workers = 0; // 0: pick at run time
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    double hardy_p = std::numeric_limits<double>::infinity();
    int weight_k_max = 12;
    double weight_delta = 0.5;

    std::string out_dir = ".";
    std::string format = "both"; // csv | json | both
    std::string basename;        // defaults to the command name

    nlohmann::json echo; // the config as read, for the report
};

AuditConfig parse_config_file(const std::string& path);
AuditConfig parse_config_json(const nlohmann::json& j);

// Builders for the declarative specs.
HoloFunction build_function(const nlohmann::json& spec, std::size_t herglotz_nodes);
Weight build_weight(const nlohmann::json& spec);
BoundaryData build_boundary(const nlohmann::json& spec);

// "index value" pairs, one per line, a power of two many.
std::vector<double> read_sample_file(const std::string& path);

// BLOCHGAUGE_SEED when set; nullopt leaves the config seed in force.
std::optional<std::uint64_t> seed_from_environment();

} // namespace blochgauge
