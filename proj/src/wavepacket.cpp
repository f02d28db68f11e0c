#include "qcdet/wavepacket.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "qcdet/errors.hpp"

namespace qcdet {

void SpectralGrid::validate() const {
    if (dimension != 1 && dimension != 3)
        throw std::invalid_argument("SpectralGrid: dimension must be 1 or 3");
    if (k_samples.size() < 2)
        throw std::invalid_argument("SpectralGrid: need at least 2 samples");
    if (box_extent <= 0.0)
        throw std::invalid_argument("SpectralGrid: box_extent must be positive");
    const double dk = k_samples[1] - k_samples[0];
    if (dk <= 0.0)
        throw std::invalid_argument("SpectralGrid: samples must be strictly increasing");
    for (std::size_t j = 1; j < k_samples.size(); ++j) {
        const double step = k_samples[j] - k_samples[j - 1];
        if (std::abs(step - dk) > 1e-9 * dk)
            throw std::invalid_argument("SpectralGrid: spacing must be uniform");
    }
}

SpectralGrid SpectralGrid::uniform(double k_lo, double k_hi, std::size_t n,
                                   Dispersion disp, int dim) {
    if (n < 2 || k_hi <= k_lo)
        throw std::invalid_argument("SpectralGrid::uniform: bad range");
    SpectralGrid g;
    g.dimension = dim;
    g.dispersion = disp;
    g.box_extent = 2.0 * std::numbers::pi / ((k_hi - k_lo) / static_cast<double>(n - 1));
    g.k_samples.resize(n);
    const double dk = (k_hi - k_lo) / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) g.k_samples[j] = k_lo + dk * static_cast<double>(j);
    g.validate();
    return g;
}

Wavepacket::Wavepacket(SpectralGrid grid, std::vector<std::complex<double>> amplitudes)
    : grid_(std::move(grid)), amplitudes_(std::move(amplitudes)) {
    grid_.validate();
    if (amplitudes_.size() != grid_.k_samples.size())
        throw std::invalid_argument("Wavepacket: amplitude count must match grid");

    const double dk = grid_.spacing();
    double norm2 = 0.0;
    for (const auto& a : amplitudes_) norm2 += std::norm(a);
    norm2 *= dk;
    if (norm2 <= 0.0)
        throw std::invalid_argument("Wavepacket: zero spectral amplitude");
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : amplitudes_) a *= scale;

    double mk = 0.0, mw = 0.0, mw2 = 0.0;
    sample_cdf_.resize(amplitudes_.size());
    double cum = 0.0;
    for (std::size_t j = 0; j < amplitudes_.size(); ++j) {
        const double p = std::norm(amplitudes_[j]) * dk;
        const double w = grid_.dispersion.omega(grid_.k_samples[j]);
        mk += p * grid_.k_samples[j];
        mw += p * w;
        mw2 += p * w * w;
        cum += p;
        sample_cdf_[j] = cum;
    }
    sample_cdf_.back() = 1.0;
    mean_k_ = mk;
    carrier_ = mw;
    bandwidth_ = 2.0 * std::sqrt(std::max(0.0, mw2 - mw * mw));
}

double Wavepacket::eval_half_width() const {
    return std::numbers::pi / grid_.spacing();
}

std::vector<double> Wavepacket::dual_grid() const {
    const std::size_t n = grid_.k_samples.size();
    const double dr = 2.0 * std::numbers::pi / (static_cast<double>(n) * grid_.spacing());
    std::vector<double> r(n);
    for (std::size_t m = 0; m < n; ++m)
        r[m] = dr * (static_cast<double>(m) - 0.5 * static_cast<double>(n));
    return r;
}

Wavepacket make_gaussian(double k0, double sigma_k, SpectralGrid grid) {
    grid.validate();
    if (sigma_k <= 0.0)
        throw std::invalid_argument("make_gaussian: sigma_k must be positive");
    if (grid.k_samples.front() > k0 - 6.0 * sigma_k ||
        grid.k_samples.back() < k0 + 6.0 * sigma_k)
        throw GridTooNarrowError(
            "make_gaussian: grid does not cover [k0 - 6 sigma_k, k0 + 6 sigma_k]; "
            "the Gaussian would be truncated");

    std::vector<std::complex<double>> amps(grid.k_samples.size());
    for (std::size_t j = 0; j < amps.size(); ++j) {
        const double u = (grid.k_samples[j] - k0) / sigma_k;
        amps[j] = std::exp(-0.25 * u * u);  // |phi|^2 has std sigma_k
    }
    return Wavepacket(std::move(grid), std::move(amps));
}

std::complex<double> position_amplitude(const Wavepacket& wp, double r) {
    const auto& grid = wp.grid();
    if (grid.dimension != 1)
        throw std::invalid_argument(
            "position_amplitude: discrete transform implemented for dimension 1 only");
    if (std::abs(r) > wp.eval_half_width() * (1.0 + 1e-12))
        throw std::invalid_argument("position_amplitude: r outside the evaluation box");

    const double dk = grid.spacing();
    // Phase-increment recurrence over the uniform grid.
    const std::complex<double> step = std::exp(std::complex<double>(0.0, -dk * r));
    std::complex<double> phase = std::exp(std::complex<double>(0.0, -grid.k_samples[0] * r));
    std::complex<double> sum = 0.0;
    for (const auto& a : wp.amplitudes()) {
        sum += a * phase;
        phase *= step;
    }
    return sum * (dk / std::sqrt(2.0 * std::numbers::pi));
}

double spectral_sample(const Wavepacket& wp, std::mt19937_64& engine) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(engine);
    const auto it = std::lower_bound(wp.sample_cdf_.begin(), wp.sample_cdf_.end(), u);
    const std::size_t j = static_cast<std::size_t>(it - wp.sample_cdf_.begin());
    return wp.grid().dispersion.omega(wp.grid().k_samples[std::min(j, wp.sample_cdf_.size() - 1)]);
}

}  // namespace qcdet
