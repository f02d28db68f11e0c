#pragma once

namespace qcdet {

struct BornParams {
    double eps = 1.0;       // coupling constant
    double gamma = 1.0;     // decay width, frequency units
    double g = 1.0;         // diffusion strength
    double bandwidth = 1.0; // Omega
    double omega_in = 1.0;  // carrier, used in the factorization

    void validate() const;  // all strictly positive
};

// Probability of a clamped closed form plus its pre-clamp value; the
// estimates are leading order and can exceed 1 in extreme corners.
struct ClampedProbability {
    double value = 0.0;   // clamped to [0, 1]
    double raw = 0.0;     // pre-clamp
};

// min(2 eps |psi| / Omega, 1): chance that some level lands in the
// resonance window.
ClampedProbability p_resonance(double eps, double psi_mag, double bandwidth);

// min(eps^2 |psi|^2 sqrt(2 gamma / (pi g Omega^2)), 1): resonance times
// window survival.
ClampedProbability p_detection(double eps, double psi_mag, double gamma, double g,
                               double bandwidth);

// The |psi|^2 x interaction-volume x efficiency split whose product equals
// the pre-clamp p_detection.
struct EfficiencyFactorization {
    double psi_sq = 0.0;
    double interaction_volume = 0.0;  // eps^2 / omega_in^2, units length^d
    double efficiency = 0.0;          // omega_in^2 sqrt(2 gamma / (pi g Omega^2))
    double product() const { return psi_sq * interaction_volume * efficiency; }
};

EfficiencyFactorization efficiency_factorization(const BornParams& params,
                                                 double psi_mag);

}  // namespace qcdet
