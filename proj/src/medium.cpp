#include "qcdet/medium.hpp"

#include <algorithm>
#include <stdexcept>

#include "qcdet/errors.hpp"

namespace qcdet {

void MediumSpec::validate() const {
    if (density <= 0.0) throw std::invalid_argument("MediumSpec: density must be positive");
    if (extent <= 0.0) throw std::invalid_argument("MediumSpec: extent must be positive");
    if (spread <= 0.0) throw std::invalid_argument("MediumSpec: spread must be positive");
    if (count_law.kind == CountLaw::Kind::fixed && count_law.fixed_count < 0)
        throw std::invalid_argument("MediumSpec: fixed count must be nonnegative");
}

Medium sample_medium(const MediumSpec& spec, std::mt19937_64& engine) {
    spec.validate();

    long count = 0;
    if (spec.count_law.kind == CountLaw::Kind::fixed) {
        count = spec.count_law.fixed_count;
    } else {
        std::poisson_distribution<long> pois(spec.density * spec.extent);
        count = pois(engine);
    }
    if (count == 0)
        throw EmptyMediumError("sample_medium: sampled zero molecules");

    std::uniform_real_distribution<double> pos(-0.5 * spec.extent, 0.5 * spec.extent);
    std::uniform_real_distribution<double> freq_u(spec.omega_center - 0.5 * spec.spread,
                                                  spec.omega_center + 0.5 * spec.spread);
    std::normal_distribution<double> freq_g(spec.omega_center, 0.5 * spec.spread);

    Medium m;
    m.molecules.resize(static_cast<std::size_t>(count));
    for (auto& mol : m.molecules) {
        mol.r = pos(engine);
        mol.omega = spec.frequency_law == FrequencyLaw::uniform ? freq_u(engine)
                                                                : freq_g(engine);
    }
    return m;
}

std::vector<std::size_t> resonant_candidates(
    const Medium& medium, double omega_in,
    const std::function<double(const Molecule&)>& window_of) {
    std::vector<std::size_t> hits;
    for (std::size_t n = 0; n < medium.molecules.size(); ++n) {
        const double w = window_of(medium.molecules[n]);
        if (w < 0.0)
            throw std::invalid_argument("resonant_candidates: negative window");
        if (std::abs(omega_in - medium.molecules[n].omega) < w) hits.push_back(n);
    }
    std::stable_sort(hits.begin(), hits.end(), [&](std::size_t a, std::size_t b) {
        const double da = std::abs(omega_in - medium.molecules[a].omega);
        const double db = std::abs(omega_in - medium.molecules[b].omega);
        if (da != db) return da < db;
        return a < b;
    });
    return hits;
}

double mean_level_spacing(const Medium& medium) {
    if (medium.molecules.size() < 2)
        throw TooFewMoleculesError("mean_level_spacing: need at least 2 molecules");
    std::vector<double> w;
    w.reserve(medium.molecules.size());
    for (const auto& mol : medium.molecules) w.push_back(mol.omega);
    std::sort(w.begin(), w.end());
    return (w.back() - w.front()) / static_cast<double>(w.size() - 1);
}

}  // namespace qcdet
