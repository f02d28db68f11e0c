#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qcdet/errors.hpp"
#include "qcdet/stats.hpp"
#include "qcdet/wavepacket.hpp"

using namespace qcdet;
using std::numbers::pi;

namespace {

Wavepacket test_gaussian(double k0 = 10.0, double sigma_k = 0.5,
                         std::size_t n = 4096, double half_cover = 10.0) {
    auto grid = SpectralGrid::uniform(k0 - half_cover * sigma_k, k0 + half_cover * sigma_k,
                                      n, Dispersion::linear(1.0));
    return make_gaussian(k0, sigma_k, std::move(grid));
}

double spectral_norm(const Wavepacket& wp) {
    double s = 0.0;
    for (const auto& a : wp.amplitudes()) s += std::norm(a);
    return s * wp.grid().spacing();
}

}  // namespace

TEST_CASE("gaussian packet is unit normalized") {
    auto wp = test_gaussian();
    CHECK(spectral_norm(wp) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("symmetric grid centers the spectral mean at k0") {
    auto wp = test_gaussian(10.0, 0.5);
    CHECK(wp.mean_k() == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("bandwidth equals twice the spectral sigma for linear dispersion") {
    // Quadrature of the discrete spectral variance against the analytic
    // Gaussian value: std(omega) = c * sigma_k, so Omega = 2 * 0.5 * 1.
    auto wp = test_gaussian(10.0, 0.5);
    CHECK(wp.bandwidth() == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("narrow grid is rejected") {
    auto grid = SpectralGrid::uniform(9.0, 11.0, 64, Dispersion::linear(1.0));
    CHECK_THROWS_AS(make_gaussian(10.0, 0.5, std::move(grid)), GridTooNarrowError);
}

TEST_CASE("single mode gives a plane wave of constant magnitude") {
    auto grid = SpectralGrid::uniform(0.0, 1.0, 16, Dispersion::linear(1.0));
    std::vector<std::complex<double>> amps(16, 0.0);
    amps[7] = 1.0;
    Wavepacket wp(std::move(grid), std::move(amps));
    const double ref = std::abs(position_amplitude(wp, 0.0));
    for (double r : {-3.0, -0.7, 0.4, 2.9})
        CHECK(std::abs(position_amplitude(wp, r)) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("dual-grid Parseval identity") {
    auto wp = test_gaussian(10.0, 0.5, 512, 8.0);
    const auto rs = wp.dual_grid();
    const double dr = rs[1] - rs[0];
    double sum = 0.0;
    for (double r : rs) sum += std::norm(position_amplitude(wp, r)) * dr;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("gaussian transform matches the closed form pointwise") {
    const double k0 = 10.0, sigma_k = 0.5;
    auto wp = test_gaussian(k0, sigma_k);
    const double peak = std::pow(2.0 * sigma_k * sigma_k / pi, 0.25);
    for (double r = -7.0; r <= 7.0; r += 0.37) {
        const double mag = peak * std::exp(-sigma_k * sigma_k * r * r);
        if (mag < 1e-3 * peak) continue;
        const std::complex<double> expected =
            mag * std::exp(std::complex<double>(0.0, -k0 * r));
        const std::complex<double> got = position_amplitude(wp, r);
        CHECK(std::abs(got - expected) / std::abs(expected) < 1e-6);
    }
}

TEST_CASE("transform is linear and phase covariant") {
    auto grid = SpectralGrid::uniform(5.0, 15.0, 128, Dispersion::linear(1.0));
    std::mt19937_64 eng(7);
    std::normal_distribution<double> n01;
    std::vector<std::complex<double>> a(128), b(128), mix(128);
    for (std::size_t j = 0; j < 128; ++j) {
        a[j] = {n01(eng), n01(eng)};
        b[j] = {n01(eng), n01(eng)};
    }
    const std::complex<double> ca(0.3, -1.1), cb(-0.8, 0.2);
    for (std::size_t j = 0; j < 128; ++j) mix[j] = ca * a[j] + cb * b[j];

    // Build un-normalized packets through the normalizing constructor, then
    // undo the normalization scale to compare the raw transforms.
    auto raw_psi = [&grid](const std::vector<std::complex<double>>& amps, double r) {
        Wavepacket wp(grid, amps);
        double norm2 = 0.0;
        for (const auto& x : amps) norm2 += std::norm(x);
        return position_amplitude(wp, r) * std::sqrt(norm2 * grid.spacing());
    };
    for (double r : {-1.3, 0.0, 2.7}) {
        const auto lhs = raw_psi(mix, r);
        const auto rhs = ca * raw_psi(a, r) + cb * raw_psi(b, r);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }

    // Global phase leaves |psi| unchanged.
    auto phased = a;
    for (auto& x : phased) x *= std::exp(std::complex<double>(0.0, 0.83));
    Wavepacket wa(grid, a), wb(grid, phased);
    for (double r : {-2.0, 0.4, 1.9})
        CHECK(std::abs(position_amplitude(wa, r)) ==
              doctest::Approx(std::abs(position_amplitude(wb, r))).epsilon(1e-12));
}

TEST_CASE("spectral sampling: delta spectrum is constant") {
    auto grid = SpectralGrid::uniform(0.0, 1.0, 8, Dispersion::linear(2.0));
    std::vector<std::complex<double>> amps(8, 0.0);
    amps[3] = 1.0;
    Wavepacket wp(std::move(grid), std::move(amps));
    std::mt19937_64 eng(1);
    const double expected = wp.grid().dispersion.omega(wp.grid().k_samples[3]);
    for (int i = 0; i < 100; ++i) CHECK(spectral_sample(wp, eng) == expected);
}

TEST_CASE("spectral sampling: gaussian mean and histogram") {
    auto wp = test_gaussian(10.0, 0.5, 512, 8.0);
    std::mt19937_64 eng(42);
    const long n = 1000000;
    double sum = 0.0;
    std::vector<double> draws(n);
    for (long i = 0; i < n; ++i) {
        draws[i] = spectral_sample(wp, eng);
        sum += draws[i];
    }
    const double sigma_omega = 0.5 * wp.bandwidth();
    CHECK(std::abs(sum / n - wp.carrier()) < 4.0 * sigma_omega / std::sqrt(double(n)));

    // 50-bin goodness of fit of the draw histogram against |phi|^2.
    const int bins = 50;
    const double lo = wp.carrier() - 4.0 * sigma_omega;
    const double hi = wp.carrier() + 4.0 * sigma_omega;
    std::vector<double> observed(bins + 1, 0.0), expected(bins + 1, 0.0);
    auto bin_of = [&](double w) {
        if (w < lo || w >= hi) return bins;  // overflow bucket
        return static_cast<int>((w - lo) / (hi - lo) * bins);
    };
    for (double d : draws) observed[bin_of(d)] += 1.0;
    const double dk = wp.grid().spacing();
    for (std::size_t j = 0; j < wp.amplitudes().size(); ++j) {
        const double w = wp.grid().dispersion.omega(wp.grid().k_samples[j]);
        expected[bin_of(w)] += std::norm(wp.amplitudes()[j]) * dk * n;
    }
    auto gof = stats::chi_square_gof(observed, expected);
    CHECK(gof.p_value > 0.001);
}

TEST_CASE("dimension-3 grids are unit bookkeeping only") {
    auto grid = SpectralGrid::uniform(0.0, 1.0, 8, Dispersion::linear(1.0), 3);
    std::vector<std::complex<double>> amps(8, 1.0);
    Wavepacket wp(std::move(grid), std::move(amps));
    CHECK_THROWS_AS(position_amplitude(wp, 0.0), std::invalid_argument);
}
