#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modflow/report.hpp"

namespace modflow {

// Everything a verification run depends on. Loaded from JSON, then overridden by CLI flags.
struct RunConfig {
    std::uint64_t seed = 20240601ULL;
    unsigned threads = 0;               // 0: hardware concurrency
    std::optional<double> tolerance;    // replaces every AtMost/Near tolerance when set
    std::string out = "modflow_out";    // report directory

    int geometry_samples = 10000;
    int conformal_probes = 24;
    int flow_samples = 10000;
    double flow_fd_step = 0.1;
    int fredenhagen_samples = 4000;
    int psdo_grid = 4096;
    double psdo_box = 64;
    int yngvason_grid = 256;
    std::vector<double> by_betas{1.0, 5.0, 20.0};
    int by_n_max = 2;
    double two_point_eps = 0.05;
    double kms_eps = 1e-3;
    int kms_samples = 1 << 20;
    double kms_window = 60;
    int radial_points = 2048;
    double radial_step = 0.05;
    double pj_sigma = 0.05;
};

// throws ConfigError on unknown keys, wrong types or non-positive tolerances
void apply_config_json(RunConfig& cfg, const std::string& json_text);
RunConfig load_config_file(const std::string& path);
void validate(const RunConfig& cfg);
std::string to_json(const RunConfig& cfg);
std::string config_digest(const RunConfig& cfg);

struct SuiteOutput {
    VerificationReport report;
    std::map<std::string, CsvTable> tables;  // file stem -> table
};

const std::vector<std::string>& suite_names();  // geometry .. thermal, without "all"

// runs one module suite; tables carry the config digest and resolved constants as metadata
SuiteOutput run_suite(const std::string& name, const RunConfig& cfg);

} // namespace modflow
