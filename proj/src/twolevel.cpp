#include "qcdet/twolevel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qcdet/errors.hpp"

namespace qcdet {

std::complex<double> coupling_element(const Wavepacket& wp, double eps, double r_n) {
    return eps * std::conj(position_amplitude(wp, r_n));
}

EigenPair exact_eigen(const EffectivePair& pair) {
    const std::complex<double> a(pair.omega_in, 0.0);
    const std::complex<double> d(pair.omega_n, pair.gamma);
    const std::complex<double> c = pair.coupling;

    if (std::abs(c) == 0.0) return {a, d};

    const std::complex<double> tr = a + d;
    const std::complex<double> det = a * d - std::norm(c);
    const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
    // Root of larger magnitude first; the other via the product identity.
    const std::complex<double> big =
        (std::abs(tr + disc) >= std::abs(tr - disc)) ? 0.5 * (tr + disc)
                                                     : 0.5 * (tr - disc);
    const std::complex<double> small = det / big;

    // |in> weight of the eigenvector (conj(c), lambda - omega_in).
    auto in_weight = [&](const std::complex<double>& lambda) {
        const double num = std::norm(c);
        return num / (num + std::norm(lambda - a));
    };
    if (in_weight(big) >= in_weight(small)) return {big, small};
    return {small, big};
}

RegimeReport regime_check(const EffectivePair& pair, const RegimeMargins& margins) {
    RegimeReport rep;
    const double cmag = std::abs(pair.coupling);
    rep.detuning_over_coupling = cmag > 0.0
                                     ? std::abs(pair.detuning()) / cmag
                                     : (pair.detuning() == 0.0 ? 0.0 : HUGE_VAL);
    rep.coupling_over_gamma = pair.gamma > 0.0 ? cmag / pair.gamma
                                               : (cmag == 0.0 ? 0.0 : HUGE_VAL);
    rep.resonance_ok = std::abs(pair.detuning()) * margins.resonance_margin <= cmag;
    rep.width_ok = cmag * margins.width_margin <= pair.gamma;
    return rep;
}

EigenPair seesaw_approx(const EffectivePair& pair, const RegimeMargins& margins) {
    const RegimeReport rep = regime_check(pair, margins);
    if (!rep.pass()) {
        std::ostringstream msg;
        msg << "seesaw_approx: regime violated:";
        if (!rep.resonance_ok)
            msg << " |detuning| * " << margins.resonance_margin << " > |coupling|";
        if (!rep.width_ok)
            msg << " |coupling| * " << margins.width_margin << " > gamma";
        throw RegimeViolationError(msg.str());
    }
    const double c2 = std::norm(pair.coupling);
    return {{pair.omega_n, c2 / pair.gamma}, {pair.omega_n, pair.gamma}};
}

double detection_timescale(const EffectivePair& pair) {
    const double c2 = std::norm(pair.coupling);
    if (c2 == 0.0)
        throw ZeroCouplingError("detection_timescale: zero coupling, no detection channel");
    return pair.gamma / c2;
}

namespace {

using CVec = std::vector<std::complex<double>>;

struct StarHamiltonian {
    double omega_in;
    std::vector<double> omegas;
    std::vector<std::complex<double>> couplings;  // c_n = eps * psi(r_n)
    double gamma;

    // da/dt for the star-coupled system with amplitude damping on the
    // excited levels.
    void deriv(const CVec& a, CVec& out) const {
        const std::complex<double> I(0.0, 1.0);
        std::complex<double> acc = omega_in * a[0];
        for (std::size_t n = 0; n < omegas.size(); ++n)
            acc += std::conj(couplings[n]) * a[n + 1];
        out[0] = -I * acc;
        for (std::size_t n = 0; n < omegas.size(); ++n)
            out[n + 1] = -I * (omegas[n] * a[n + 1] + couplings[n] * a[0]) -
                         gamma * a[n + 1];
    }
};

CVec rk4_run(const StarHamiltonian& h, double t_final, long steps) {
    const std::size_t dim = h.omegas.size() + 1;
    CVec a(dim, 0.0), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    a[0] = 1.0;
    const double dt = t_final / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
        h.deriv(a, k1);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = a[i] + 0.5 * dt * k1[i];
        h.deriv(tmp, k2);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = a[i] + 0.5 * dt * k2[i];
        h.deriv(tmp, k3);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = a[i] + dt * k3[i];
        h.deriv(tmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            a[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return a;
}

}  // namespace

FullIntegration integrate_full(const Wavepacket& wp, const Medium& medium,
                               double eps, double gamma, double t_final,
                               long initial_steps, long max_steps) {
    if (gamma < 0.0) throw std::invalid_argument("integrate_full: gamma must be >= 0");
    if (t_final < 0.0) throw std::invalid_argument("integrate_full: t_final must be >= 0");

    // Work in the frame rotating at the carrier: a common diagonal shift is
    // a global phase and leaves all populations unchanged, but keeps the
    // integrated phases small.
    StarHamiltonian h;
    h.omega_in = 0.0;
    h.gamma = gamma;
    h.omegas.reserve(medium.molecules.size());
    h.couplings.reserve(medium.molecules.size());
    for (const auto& mol : medium.molecules) {
        h.omegas.push_back(mol.omega - wp.carrier());
        h.couplings.push_back(eps * position_amplitude(wp, mol.r));
    }

    auto populations = [](const CVec& a) {
        std::vector<double> p(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) p[i] = std::norm(a[i]);
        return p;
    };

    long steps = initial_steps;
    std::vector<double> coarse = populations(rk4_run(h, t_final, steps));
    while (steps * 2 <= max_steps) {
        std::vector<double> fine = populations(rk4_run(h, t_final, steps * 2));
        double max_diff = 0.0;
        for (std::size_t i = 0; i < fine.size(); ++i)
            max_diff = std::max(max_diff, std::abs(fine[i] - coarse[i]));
        if (max_diff < 1e-6) {
            FullIntegration result;
            result.in_population = fine[0];
            result.excited_populations.assign(fine.begin() + 1, fine.end());
            result.steps_used = steps * 2;
            return result;
        }
        coarse = std::move(fine);
        steps *= 2;
    }
    throw NonConvergenceError("integrate_full: step-halving check failed at the step budget");
}

}  // namespace qcdet
