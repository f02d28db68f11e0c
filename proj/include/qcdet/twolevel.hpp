#pragma once

#include <complex>
#include <vector>

#include "qcdet/medium.hpp"
#include "qcdet/wavepacket.hpp"

namespace qcdet {

// The 2x2 reduced system: [[omega_in, conj(c)], [c, omega_n + i gamma]].
// gamma carries the emission width in frequency units. Note the +i gamma
// convention is kept as in the reduced matrix; eigenvalues come out with
// positive imaginary part and |small eigenvalue| is read as a rate.
struct EffectivePair {
    double omega_in = 0.0;
    double omega_n = 0.0;
    std::complex<double> coupling;  // eps * psi(r_n)
    double gamma = 0.0;

    double detuning() const { return omega_in - omega_n; }
};

struct RegimeMargins {
    double resonance_margin = 10.0;  // |detuning| * m1 <= |c|
    double width_margin = 10.0;      // |c| * m2 <= gamma
};

struct RegimeReport {
    bool resonance_ok = false;
    bool width_ok = false;
    double detuning_over_coupling = 0.0;
    double coupling_over_gamma = 0.0;
    bool pass() const { return resonance_ok && width_ok; }
};

// Named rather than ordered: `in_dominant` is the eigenvalue whose
// eigenvector has the larger |in> component (the initial condition branch).
struct EigenPair {
    std::complex<double> in_dominant;
    std::complex<double> excited_dominant;
};

// eps * conj(psi(r_n)); equal to the direct mode sum over the grid.
std::complex<double> coupling_element(const Wavepacket& wp, double eps, double r_n);

// Exact eigenvalues via the numerically stable quadratic (the small root is
// formed as det / large_root, not by cancellation).
EigenPair exact_eigen(const EffectivePair& pair);

RegimeReport regime_check(const EffectivePair& pair, const RegimeMargins& margins);

// The large-width asymptotic pair with the common omega_n restored as a
// real offset: excited branch omega_n + i gamma, in branch
// omega_n + i |c|^2 / gamma. Throws RegimeViolationError naming the failed
// inequality when regime_check does not pass.
EigenPair seesaw_approx(const EffectivePair& pair,
                        const RegimeMargins& margins = RegimeMargins{});

// gamma / |c|^2, the inverse of the slow leak rate. Throws
// ZeroCouplingError when the coupling vanishes.
double detection_timescale(const EffectivePair& pair);

struct FullIntegration {
    double in_population = 0.0;
    std::vector<double> excited_populations;  // one per molecule
    long steps_used = 0;
};

// Oracle integrator for the full (N+1)-level restricted Hamiltonian:
// star-coupled amplitudes a_in, {a_n} propagated by fixed-step RK4 from
// (1, 0, ..., 0), with amplitude damping gamma on every excited level so
// the norm is non-increasing. Step count doubles until halving changes the
// final populations by < 1e-6; throws NonConvergenceError at the budget.
FullIntegration integrate_full(const Wavepacket& wp, const Medium& medium,
                               double eps, double gamma, double t_final,
                               long initial_steps = 1024,
                               long max_steps = 1 << 22);

}  // namespace qcdet
