#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qcdet/dephasing.hpp"
#include "qcdet/medium.hpp"
#include "qcdet/stats.hpp"
#include "qcdet/twolevel.hpp"
#include "qcdet/wavepacket.hpp"

namespace qcdet {

enum class DecisionMode { closed_form, walk };
enum class MediumMode { fresh_per_trial, frozen };

struct PacketSpec {
    double k0 = 50.0;
    double sigma_k = 2.0;
    std::size_t grid_points = 512;
    double grid_span = 32.0;  // total k range, centered on k0
    Dispersion dispersion = Dispersion::linear(1.0);

    Wavepacket build() const;
};

struct TrialConfig {
    PacketSpec packet;
    MediumSpec medium;
    double epsilon = 0.008;
    double gamma = 1.0;
    double g = 1e-4;
    std::optional<double> window_width;  // G; defaults to gamma
    DiffusionVariant variant = DiffusionVariant::normalized;
    WindowSemantics semantics = WindowSemantics::at_time;
    double walk_dt = 1.0;
    DecisionMode decision_mode = DecisionMode::closed_form;
    MediumMode medium_mode = MediumMode::fresh_per_trial;
    long n_trials = 500000;
    std::uint64_t master_seed = 1;
    int histogram_bins = 64;
    int threads = 1;
    bool force_window_unity = false;  // dissipation-free mode
    RegimeMargins margins;
    // Optional position-dependent offset added to every sampled omega_n.
    std::function<double(double)> frequency_bias;

    double effective_window_width() const { return window_width.value_or(gamma); }
    void validate() const;
};

struct DetectionEvent {
    long trial = 0;
    std::size_t molecule = 0;
    double r = 0.0;
    double omega_n = 0.0;   // resonant frequency actually matched (bias included)
    double omega_in = 0.0;
    double tau_det = 0.0;

    bool operator==(const DetectionEvent&) const = default;
};

// `detections` counts binned events; an event falling outside the binned
// support stays in the event log but not in `counts`.
struct SpatialHistogram {
    std::vector<double> edges;            // bins + 1 entries
    std::vector<long> counts;
    std::vector<double> psi_sq_bin_mean;  // bin-averaged |psi|^2
    long trials = 0;
    long detections = 0;
};

struct TrialOutcome {
    std::optional<DetectionEvent> event;
    std::uint32_t candidate_multiplicity = 0;
};

struct EnsembleResult {
    SpatialHistogram histogram;
    std::vector<DetectionEvent> events;
    long n_trials = 0;
    long no_candidate_trials = 0;
    double mean_multiplicity = 0.0;
};

// Per-trial mechanistic engine. Immutable after construction; run_trial is
// const and every trial's randomness is a pure function of
// (master_seed, trial_index), so calls may run concurrently.
class TrialEngine {
public:
    explicit TrialEngine(TrialConfig cfg);
    // Frozen-medium engine with a caller-supplied medium (forces
    // medium_mode == frozen regardless of cfg).
    TrialEngine(TrialConfig cfg, Medium medium);

    const TrialConfig& config() const { return cfg_; }
    const Wavepacket& packet() const { return wp_; }

    // |psi| as the engine sees it (table lookup over the medium extent).
    double psi_abs(double r) const;
    double psi_abs_max() const { return psi_max_; }

    // Expected resonant-candidate multiplicity per trial,
    // (2 eps / S) * rho * integral |psi| dr, by trapezoid over the table.
    double analytic_mean_multiplicity() const;

    TrialOutcome run_trial(long trial_index) const;
    EnsembleResult run_ensemble() const;

private:
    TrialConfig cfg_;
    Wavepacket wp_;
    std::vector<double> psi_table_;  // |psi| on a uniform grid over the extent
    double table_lo_ = 0.0, table_step_ = 0.0;
    double psi_max_ = 0.0;
    std::optional<Medium> frozen_medium_;

    SpatialHistogram make_histogram_frame() const;
};

EnsembleResult run_ensemble(const TrialConfig& cfg);

// Least-squares fit of bin counts against bin-averaged |psi|^exponent
// through the origin (exponent 2 is the Born-rule fit). Throws
// std::invalid_argument with fewer than 10 nonempty bins.
stats::OriginFit born_fit(const SpatialHistogram& hist, int psi_exponent = 2);

struct RepeatabilityReport {
    bool identical = false;
    long n_events_first = 0;
    long n_events_second = 0;
};

// Runs the frozen-medium config twice and compares event logs field by
// field. Requires medium_mode == frozen.
RepeatabilityReport repeatability_experiment(const TrialConfig& cfg);

struct DissipationFreeResult {
    EnsembleResult ensemble;
    stats::OriginFit fit_psi;     // rate vs |psi|
    stats::OriginFit fit_psi_sq;  // rate vs |psi|^2
};

// Forces window survival probability to 1; detection rate then scales with
// |psi| instead of |psi|^2.
DissipationFreeResult experiment_dissipation_free(TrialConfig cfg);

struct SpectralBiasResult {
    EnsembleResult ensemble;
    long events_in_region = 0;
};

// Adds `offset` to omega_n for molecules with r in [region_lo, region_hi].
SpectralBiasResult experiment_spectral_bias(TrialConfig cfg, double offset,
                                            double region_lo, double region_hi);

struct RarifiedRow {
    double density = 0.0;
    double delta_over_bandwidth = 0.0;  // mean level spacing / Omega
    double no_resonance_fraction = 0.0;
};

std::vector<RarifiedRow> experiment_rarified(TrialConfig cfg,
                                             const std::vector<double>& densities);

struct TransverseRow {
    double sigma_r = 0.0;           // packet position-space width
    double mean_multiplicity = 0.0;
    double analytic_multiplicity = 0.0;
};

struct TransverseScaleResult {
    std::vector<TransverseRow> rows;
    double crossover_sigma_r = 0.0;           // empirical multiplicity = 1
    double analytic_crossover_sigma_r = 0.0;  // closed-form expectation = 1
};

// Sweeps the packet's position-space width (sigma_k = 1 / (2 sigma_r)) and
// locates where the mean candidate multiplicity crosses 1.
TransverseScaleResult experiment_transverse_scale(TrialConfig cfg,
                                                  const std::vector<double>& sigma_rs);

}  // namespace qcdet
