#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qcdet/errors.hpp"
#include "qcdet/twolevel.hpp"

using namespace qcdet;
using cplx = std::complex<double>;

namespace {

Wavepacket random_packet(std::uint64_t seed) {
    auto grid = SpectralGrid::uniform(5.0, 15.0, 256, Dispersion::linear(1.0));
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> n01;
    std::vector<cplx> amps(256);
    for (auto& a : amps) a = {n01(eng), n01(eng)};
    return Wavepacket(std::move(grid), std::move(amps));
}

}  // namespace

TEST_CASE("coupling element trivial zeros") {
    auto wp = random_packet(1);
    CHECK(coupling_element(wp, 0.0, 0.3) == cplx(0.0, 0.0));
}

TEST_CASE("coupling element equals the direct mode sum") {
    // Brute-force sum over modes with per-term exponentials, independent of
    // the recurrence used by position_amplitude.
    for (std::uint64_t seed : {2u, 3u, 4u}) {
        auto wp = random_packet(seed);
        std::mt19937_64 eng(seed + 100);
        std::uniform_real_distribution<double> rpos(-3.0, 3.0);
        const double eps = 0.7, r = rpos(eng);
        const double dk = wp.grid().spacing();
        cplx sum = 0.0;
        for (std::size_t j = 0; j < wp.amplitudes().size(); ++j)
            sum += std::conj(wp.amplitudes()[j]) *
                   std::polar(1.0, wp.grid().k_samples[j] * r);
        sum *= eps * dk / std::sqrt(2.0 * std::numbers::pi);
        const cplx got = coupling_element(wp, eps, r);
        CHECK(std::abs(got - sum) <= 1e-10 * std::abs(sum));
    }
}

TEST_CASE("decoupled eigenvalues are the diagonal") {
    EffectivePair p{2.0, 5.0, 0.0, 0.3};
    auto e = exact_eigen(p);
    CHECK(e.in_dominant == cplx(2.0, 0.0));
    CHECK(e.excited_dominant == cplx(5.0, 0.3));
}

TEST_CASE("hermitian symmetric case gives the Rabi pair") {
    EffectivePair p{0.0, 0.0, 0.04, 0.0};
    auto e = exact_eigen(p);
    CHECK(std::abs(e.in_dominant.real()) == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(e.in_dominant.real() == doctest::Approx(-e.excited_dominant.real()).epsilon(1e-12));
    CHECK(std::abs(e.in_dominant.imag()) < 1e-15);
}

TEST_CASE("large-width small eigenvalue approaches i |c|^2 / gamma") {
    EffectivePair p{0.0, 0.0, 1e-3, 1.0};
    auto e = exact_eigen(p);
    const cplx target(0.0, 1e-6);
    CHECK(std::abs(e.in_dominant - target) <= 1e-5 * std::abs(target));
    CHECK(e.excited_dominant.imag() == doctest::Approx(1.0 - 1e-6).epsilon(1e-9));
}

TEST_CASE("trace and determinant identities hold for random pairs") {
    std::mt19937_64 eng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0), upos(0.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        EffectivePair p{u(eng), u(eng), cplx(u(eng), u(eng)), upos(eng)};
        auto e = exact_eigen(p);
        const cplx tr(p.omega_in + p.omega_n, p.gamma);
        const cplx det = cplx(p.omega_in, 0.0) * cplx(p.omega_n, p.gamma) -
                         std::norm(p.coupling);
        CHECK(std::abs(e.in_dominant + e.excited_dominant - tr) <=
              1e-12 * (1.0 + std::abs(tr)));
        CHECK(std::abs(e.in_dominant * e.excited_dominant - det) <=
              1e-12 * (1.0 + std::abs(det)));
    }
}

TEST_CASE("eigenvalues depend only on the coupling magnitude") {
    EffectivePair a{0.4, 0.6, cplx(3e-3, 4e-3), 1.0};
    EffectivePair b = a;
    b.coupling = 5e-3;  // same magnitude, zero phase
    auto ea = exact_eigen(a), eb = exact_eigen(b);
    CHECK(std::abs(ea.in_dominant - eb.in_dominant) < 1e-14);
    CHECK(std::abs(ea.excited_dominant - eb.excited_dominant) < 1e-14);
}

TEST_CASE("seesaw pair on resonance") {
    EffectivePair p{0.0, 0.0, 1e-3, 1.0};
    auto s = seesaw_approx(p);
    CHECK(s.in_dominant == cplx(0.0, 1e-6));
    CHECK(s.excited_dominant == cplx(0.0, 1.0));

    // gamma x10 with c fixed scales the small eigenvalue by 1/10.
    p.gamma = 10.0;
    CHECK(seesaw_approx(p).in_dominant.imag() == doctest::Approx(1e-7).epsilon(1e-12));
}

TEST_CASE("seesaw keeps the common omega_n as a real offset") {
    EffectivePair p{3.0, 3.0, 1e-3, 1.0};
    auto s = seesaw_approx(p);
    CHECK(s.in_dominant.real() == doctest::Approx(3.0));
    CHECK(s.excited_dominant.real() == doctest::Approx(3.0));
}

TEST_CASE("seesaw error is quadratic in |c|/gamma") {
    for (double ratio = 1e-5; ratio <= 1e-2 * 1.0001; ratio *= std::sqrt(10.0)) {
        EffectivePair p{0.0, 0.0, ratio, 1.0};
        const auto exact = exact_eigen(p).in_dominant;
        const auto approx = seesaw_approx(p).in_dominant;
        const double rel = std::abs(approx - exact) / std::abs(exact);
        CHECK(rel <= 10.0 * ratio * ratio);
    }
}

TEST_CASE("regime check boundaries") {
    RegimeMargins m{10.0, 10.0};
    CHECK(regime_check({0.0, 0.0, 1e-3, 1.0}, m).pass());
    CHECK_FALSE(regime_check({0.0, 0.0, 1.0, 1.0}, {10.0, 2.0}).width_ok);
    // Exactly on the resonance boundary: the <= convention passes.
    const double c = 1e-3;
    CHECK(regime_check({c / 10.0, 0.0, c, 1.0}, m).resonance_ok);
    CHECK_THROWS_AS(seesaw_approx({0.0, 0.0, 1.0, 1.0}, m), RegimeViolationError);
}

TEST_CASE("detection timescale") {
    EffectivePair p{0.0, 0.0, 1e-3, 1.0};
    CHECK(detection_timescale(p) == doctest::Approx(1e6).epsilon(1e-12));

    // Doubling the coupling magnitude quarters the timescale.
    EffectivePair q = p;
    q.coupling = 2e-3;
    CHECK(detection_timescale(q) == doctest::Approx(0.25e6).epsilon(1e-12));

    // tau_det * |small seesaw eigenvalue| = 1 by construction.
    const double lam = std::abs(seesaw_approx(p).in_dominant - cplx(p.omega_n, 0.0));
    CHECK(detection_timescale(p) * lam == doctest::Approx(1.0).epsilon(1e-12));

    p.coupling = 0.0;
    CHECK_THROWS_AS(detection_timescale(p), ZeroCouplingError);
}

TEST_CASE("full integrator: zero coupling freezes populations") {
    auto wp = random_packet(5);
    Medium m;
    m.molecules = {{0.1, 9.0}, {-0.2, 11.0}};
    auto res = integrate_full(wp, m, 0.0, 0.0, 5.0);
    CHECK(res.in_population == doctest::Approx(1.0).epsilon(1e-8));
    for (double p : res.excited_populations) CHECK(p == doctest::Approx(0.0));
}

TEST_CASE("full integrator: single-level resonance is a Rabi oscillation") {
    // One molecule at the carrier; flatten the spectral profile influence by
    // placing it where psi is known, then compare against sin^2(|c| t).
    auto grid = SpectralGrid::uniform(5.0, 15.0, 64, Dispersion::linear(1.0));
    auto wp = make_gaussian(10.0, 0.6, std::move(grid));
    Medium m;
    m.molecules = {{0.0, wp.carrier()}};
    const double eps = 0.05;
    const double cmag = std::abs(coupling_element(wp, eps, 0.0));
    for (double t : {3.0, 11.0, 26.0}) {
        auto res = integrate_full(wp, m, eps, 0.0, t);
        const double expected = std::pow(std::sin(cmag * t), 2);
        CHECK(std::abs(res.excited_populations[0] - expected) < 1e-6);
        // norm conservation at gamma = 0
        double norm = res.in_population;
        for (double p : res.excited_populations) norm += p;
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("full integrator: width makes the norm non-increasing") {
    auto grid = SpectralGrid::uniform(5.0, 15.0, 64, Dispersion::linear(1.0));
    auto wp = make_gaussian(10.0, 0.6, std::move(grid));
    Medium m;
    m.molecules = {{0.0, wp.carrier()}, {0.2, wp.carrier() + 0.3}};
    double prev = 1.0;
    for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        auto res = integrate_full(wp, m, 0.05, 0.2, t);
        double norm = res.in_population;
        for (double p : res.excited_populations) norm += p;
        CHECK(norm <= prev + 1e-9);
        prev = norm;
    }
}

TEST_CASE("full integrator: closest-in-frequency molecule dominates (spot check)") {
    // Small version of the acceptance property: N molecules, sparse windows,
    // Lorentzian discrimination via the decay width.
    std::mt19937_64 eng(99);
    int wins = 0;
    const int seeds = 10;
    for (int s = 0; s < seeds; ++s) {
        auto grid = SpectralGrid::uniform(40.0, 60.0, 64, Dispersion::linear(1.0));
        auto wp = make_gaussian(50.0, 0.5, std::move(grid));
        MediumSpec spec;
        spec.density = 100.0;
        spec.extent = 1.0;
        spec.omega_center = wp.carrier();
        spec.spread = 0.2;
        spec.count_law = CountLaw::fixed(100);
        auto medium = sample_medium(spec, eng);

        const double eps = 2e-4, gamma = 1e-3;
        double best_detune = 1e300;
        std::size_t best = 0;
        for (std::size_t n = 0; n < medium.molecules.size(); ++n) {
            const double d = std::abs(wp.carrier() - medium.molecules[n].omega);
            if (d < best_detune) {
                best_detune = d;
                best = n;
            }
        }
        const double cmag = std::abs(coupling_element(wp, eps, medium.molecules[best].r));
        auto res = integrate_full(wp, medium, eps, gamma, 3.0 / cmag, 1 << 14);
        std::size_t argmax = 0;
        for (std::size_t n = 1; n < res.excited_populations.size(); ++n)
            if (res.excited_populations[n] > res.excited_populations[argmax]) argmax = n;
        wins += argmax == best;
    }
    CHECK(wins >= seeds - 1);
}
