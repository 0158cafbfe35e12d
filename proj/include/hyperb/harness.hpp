#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "hyperb/general_norm.hpp"
#include "hyperb/spectral.hpp"

namespace hyperb {

struct RunConfig {
    std::string graph_spec = "tree:2,4";
    std::optional<int> N, Q, P, M;
    std::optional<double> B, alpha, s, T;
    std::optional<int> delta_override;
    NormCaps caps;
    unsigned long seed = 1;
    long exhaustive_threshold = 10000000;
    std::vector<std::string> suites{"all"};
    std::string out_path;
    // optional artifact dumps
    std::string dump_operators;
    std::string db_matrix_out;
    std::string defect_csv;
    std::string norms_csv;
    std::vector<double> alpha_list{0.0, 0.25, 0.5, 1.0};
};

struct RunResult {
    nlohmann::json report;
    int exit_code = 0;
};

ParameterSet resolve_parameters(const RunConfig& cfg, const DistanceGraph& g, int p_max_hint);

RunResult run_suite(const RunConfig& cfg);

void write_report(const nlohmann::json& report, const std::string& path);

}  // namespace hyperb
