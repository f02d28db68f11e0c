#include "qcdet/born.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcdet {

void BornParams::validate() const {
    if (eps <= 0.0 || gamma <= 0.0 || g <= 0.0 || bandwidth <= 0.0 || omega_in <= 0.0)
        throw std::invalid_argument("BornParams: all parameters must be strictly positive");
}

ClampedProbability p_resonance(double eps, double psi_mag, double bandwidth) {
    if (bandwidth <= 0.0) throw std::invalid_argument("p_resonance: bandwidth must be positive");
    if (psi_mag < 0.0 || eps < 0.0)
        throw std::invalid_argument("p_resonance: eps and |psi| must be nonnegative");
    ClampedProbability p;
    p.raw = 2.0 * eps * psi_mag / bandwidth;
    p.value = std::min(p.raw, 1.0);
    return p;
}

ClampedProbability p_detection(double eps, double psi_mag, double gamma, double g,
                               double bandwidth) {
    if (gamma <= 0.0 || g <= 0.0 || bandwidth <= 0.0)
        throw std::invalid_argument("p_detection: gamma, g and bandwidth must be positive");
    if (psi_mag < 0.0 || eps < 0.0)
        throw std::invalid_argument("p_detection: eps and |psi| must be nonnegative");
    ClampedProbability p;
    p.raw = eps * eps * psi_mag * psi_mag *
            std::sqrt(2.0 * gamma / (std::numbers::pi * g * bandwidth * bandwidth));
    p.value = std::min(p.raw, 1.0);
    return p;
}

EfficiencyFactorization efficiency_factorization(const BornParams& params,
                                                 double psi_mag) {
    params.validate();
    if (psi_mag < 0.0)
        throw std::invalid_argument("efficiency_factorization: |psi| must be nonnegative");
    EfficiencyFactorization f;
    f.psi_sq = psi_mag * psi_mag;
    f.interaction_volume = params.eps * params.eps / (params.omega_in * params.omega_in);
    f.efficiency = params.omega_in * params.omega_in *
                   std::sqrt(2.0 * params.gamma /
                             (std::numbers::pi * params.g * params.bandwidth * params.bandwidth));
    return f;
}

}  // namespace qcdet
