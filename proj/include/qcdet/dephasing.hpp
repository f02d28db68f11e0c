#pragma once

#include <random>

namespace qcdet {

// `as_written` keeps the printed Gaussian with 2 pi g tau in both the
// prefactor and the exponent (it integrates to sqrt(pi)); `normalized` is
// the proper density with variance g tau. Both share the same peak value.
enum class DiffusionVariant { normalized, as_written };

// `at_time` scores the walker inside the window at tau; `throughout`
// requires the window condition at every step (survival).
enum class WindowSemantics { at_time, throughout };

struct DiffusionParams {
    double g = 1.0;            // diffusion strength, frequency^2 per time
    double window_width = 0.0; // G; the open-channel band is |dw| < G/2
    DiffusionVariant variant = DiffusionVariant::normalized;
    WindowSemantics semantics = WindowSemantics::at_time;
};

struct WalkParams {
    enum class StepLaw { gaussian, plus_minus };
    double dt = 1.0;
    StepLaw step_law = StepLaw::gaussian;
};

// Frequency-offset density of the level walk after time tau.
double occupancy_pdf(double d_omega, double tau, const DiffusionParams& p);

// min(G / sqrt(2 pi g tau), 1): the peak-occupancy window estimate.
double window_probability(double tau, const DiffusionParams& p);

// Window estimate evaluated at the detection timescale with G replaced by
// gamma: min(|c| sqrt(gamma / (2 pi g)), 1).
double p_window_at_detection(double coupling_mag, double gamma, double g);

// Per-step variance rate matching occupancy_pdf's time-tau variance.
double step_variance_rate(const DiffusionParams& p);

// One walker from d_omega = 0; returns whether the window condition holds
// per p.semantics. Requires tau / walk.dt >= 100 (diffusion limit).
bool simulate_walk(std::mt19937_64& engine, const WalkParams& walk,
                   const DiffusionParams& p, double tau);

}  // namespace qcdet
