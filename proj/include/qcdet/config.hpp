#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qcdet/trials.hpp"

namespace qcdet {

// Knobs for the named experiments; defaults match the bundled configs.
struct ExperimentSpec {
    double bias_offset = 0.0;
    double bias_region_lo = 0.0;
    double bias_region_hi = 0.0;
    std::vector<double> densities;   // rarified sweep
    std::vector<double> sigma_rs;    // transverse sweep
    long n_trials = 0;               // per sweep point; 0 = use trials.n_trials
};

struct RunConfig {
    TrialConfig trial;
    ExperimentSpec experiment;
    std::string out_dir = ".";
};

// Strict parser: unknown keys anywhere in the document are an error naming
// the offending key. Throws ConfigError.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

// Fully resolved echo of the configuration (defaults applied), written into
// summary.json for provenance.
nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace qcdet
