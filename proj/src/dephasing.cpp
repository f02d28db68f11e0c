#include "qcdet/dephasing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcdet {

double occupancy_pdf(double d_omega, double tau, const DiffusionParams& p) {
    if (tau <= 0.0) throw std::invalid_argument("occupancy_pdf: tau must be positive");
    if (p.g <= 0.0) throw std::invalid_argument("occupancy_pdf: g must be positive");
    const double two_pi_g_tau = 2.0 * std::numbers::pi * p.g * tau;
    const double pref = 1.0 / std::sqrt(two_pi_g_tau);
    if (p.variant == DiffusionVariant::as_written)
        return pref * std::exp(-d_omega * d_omega / two_pi_g_tau);
    return pref * std::exp(-d_omega * d_omega / (2.0 * p.g * tau));
}

double window_probability(double tau, const DiffusionParams& p) {
    if (tau <= 0.0) throw std::invalid_argument("window_probability: tau must be positive");
    if (p.window_width < 0.0)
        throw std::invalid_argument("window_probability: G must be >= 0");
    return std::min(p.window_width / std::sqrt(2.0 * std::numbers::pi * p.g * tau), 1.0);
}

double p_window_at_detection(double coupling_mag, double gamma, double g) {
    if (coupling_mag <= 0.0)
        throw std::invalid_argument("p_window_at_detection: |c| must be positive");
    if (gamma <= 0.0 || g <= 0.0)
        throw std::invalid_argument("p_window_at_detection: gamma and g must be positive");
    return std::min(coupling_mag * std::sqrt(gamma / (2.0 * std::numbers::pi * g)), 1.0);
}

double step_variance_rate(const DiffusionParams& p) {
    return p.variant == DiffusionVariant::as_written ? std::numbers::pi * p.g : p.g;
}

bool simulate_walk(std::mt19937_64& engine, const WalkParams& walk,
                   const DiffusionParams& p, double tau) {
    if (walk.dt <= 0.0) throw std::invalid_argument("simulate_walk: dt must be positive");
    if (tau / walk.dt < 100.0)
        throw std::invalid_argument(
            "simulate_walk: tau/dt >= 100 required for the diffusion limit");

    const long n_steps = static_cast<long>(std::ceil(tau / walk.dt));
    const double dt = tau / static_cast<double>(n_steps);
    const double sigma_step = std::sqrt(step_variance_rate(p) * dt);
    const double half_window = 0.5 * p.window_width;

    std::normal_distribution<double> gauss(0.0, sigma_step);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double d_omega = 0.0;
    for (long s = 0; s < n_steps; ++s) {
        if (walk.step_law == WalkParams::StepLaw::gaussian)
            d_omega += gauss(engine);
        else
            d_omega += (unit(engine) < 0.5 ? sigma_step : -sigma_step);
        if (p.semantics == WindowSemantics::throughout &&
            std::abs(d_omega) >= half_window)
            return false;
    }
    return std::abs(d_omega) < half_window;
}

}  // namespace qcdet
