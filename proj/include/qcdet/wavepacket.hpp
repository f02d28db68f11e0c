#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace qcdet {

// Maps wavevector k to frequency omega_k. The linear branch is the scalar
// massless idealization (omega = c|k|); the quadratic branch is a massive
// projectile with hbar = 1 (omega = k^2 / 2m).
struct Dispersion {
    enum class Kind { linear, quadratic };
    Kind kind = Kind::linear;
    double param = 1.0;  // speed c or mass m

    double omega(double k) const {
        return kind == Kind::linear ? param * std::abs(k) : k * k / (2.0 * param);
    }
    static Dispersion linear(double c) { return {Kind::linear, c}; }
    static Dispersion quadratic(double m) { return {Kind::quadratic, m}; }
};

// Uniform wavevector grid for the discretized packet. The simulation path
// is one-dimensional (a transverse screen coordinate); dimension 3 is
// accepted for unit bookkeeping only and rejected by the discrete-transform
// operations, which the SI calculator never uses.
struct SpectralGrid {
    int dimension = 1;
    std::vector<double> k_samples;  // strictly increasing, uniform spacing
    double box_extent = 1.0;        // quantization length per axis
    Dispersion dispersion;

    double spacing() const { return k_samples[1] - k_samples[0]; }
    void validate() const;  // throws std::invalid_argument on violation

    static SpectralGrid uniform(double k_lo, double k_hi, std::size_t n,
                                Dispersion disp, int dim = 1);
};

// Immutable momentum-space packet with derived carrier and bandwidth.
// Normalization: sum |phi_j|^2 dk = 1. Bandwidth is twice the spectral
// standard deviation of omega under |phi|^2.
class Wavepacket {
public:
    // Normalizes the amplitudes and precomputes carrier, bandwidth and the
    // sampling CDF. Throws if the amplitude vector is all-zero or its size
    // disagrees with the grid.
    Wavepacket(SpectralGrid grid, std::vector<std::complex<double>> amplitudes);

    const SpectralGrid& grid() const { return grid_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }
    double carrier() const { return carrier_; }
    double bandwidth() const { return bandwidth_; }
    double mean_k() const { return mean_k_; }

    // Half period of the discrete transform; position evaluations must stay
    // within [-half_period, half_period].
    double eval_half_width() const;

    // Positions of the dual grid (same point count, spacing 2*pi/(N*dk),
    // centered at the origin).
    std::vector<double> dual_grid() const;

private:
    SpectralGrid grid_;
    std::vector<std::complex<double>> amplitudes_;
    double carrier_ = 0.0;
    double bandwidth_ = 0.0;
    double mean_k_ = 0.0;
    std::vector<double> sample_cdf_;

    friend double spectral_sample(const Wavepacket&, std::mt19937_64&);
};

// Narrowband Gaussian packet centered at k0 with spectral standard
// deviation sigma_k. Throws GridTooNarrowError unless the grid covers
// [k0 - 6 sigma_k, k0 + 6 sigma_k].
Wavepacket make_gaussian(double k0, double sigma_k, SpectralGrid grid);

// psi(r) by the discrete conjugate-Fourier sum, with the prefactor chosen so
// the dual-grid Parseval identity holds exactly.
std::complex<double> position_amplitude(const Wavepacket& wp, double r);

// One carrier-frequency draw, k sample j with probability |phi_j|^2 dk.
double spectral_sample(const Wavepacket& wp, std::mt19937_64& engine);

}  // namespace qcdet
