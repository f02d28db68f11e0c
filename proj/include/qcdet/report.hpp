#pragma once

#include <string>

#include <json.hpp>

#include "qcdet/appendix.hpp"
#include "qcdet/config.hpp"
#include "qcdet/trials.hpp"

namespace qcdet {

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

// Columns: trial,molecule,r,omega_n,omega_in,tau_det
void write_events_csv(const std::string& path, const std::vector<DetectionEvent>& events);

// Columns: bin_lo,bin_hi,count,psi_sq_bin_mean
void write_histogram_csv(const std::string& path, const SpatialHistogram& hist);

nlohmann::json appendix_to_json(const AppendixReport& report);

// Human-readable table form of the appendix report (ratios to 2 significant
// figures).
std::string appendix_to_table(const AppendixReport& report);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace qcdet
