#include "qcdet/trials.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qcdet/errors.hpp"
#include "qcdet/rng.hpp"

namespace qcdet {

namespace {
constexpr std::size_t kPsiTablePoints = (1u << 15) + 1;

double interp_crossing(const std::vector<double>& x, const std::vector<double>& y,
                       double level) {
    for (std::size_t i = 1; i < x.size(); ++i) {
        const bool below = y[i - 1] < level, above = y[i] >= level;
        if (below && above) {
            const double lx0 = std::log(x[i - 1]), lx1 = std::log(x[i]);
            const double ly0 = std::log(y[i - 1]), ly1 = std::log(y[i]);
            const double t = (std::log(level) - ly0) / (ly1 - ly0);
            return std::exp(lx0 + t * (lx1 - lx0));
        }
    }
    throw std::runtime_error("transverse sweep does not bracket the multiplicity crossover");
}
}  // namespace

Wavepacket PacketSpec::build() const {
    if (grid_span < 12.0 * sigma_k)
        throw GridTooNarrowError("PacketSpec: grid_span must cover at least 12 sigma_k");
    auto grid = SpectralGrid::uniform(k0 - 0.5 * grid_span, k0 + 0.5 * grid_span,
                                      grid_points, dispersion);
    return make_gaussian(k0, sigma_k, std::move(grid));
}

void TrialConfig::validate() const {
    medium.validate();
    if (epsilon <= 0.0) throw ConfigError("TrialConfig: epsilon must be positive");
    if (gamma <= 0.0) throw ConfigError("TrialConfig: gamma must be positive");
    if (g <= 0.0) throw ConfigError("TrialConfig: g must be positive");
    if (window_width && *window_width < 0.0)
        throw ConfigError("TrialConfig: G must be nonnegative");
    if (walk_dt <= 0.0) throw ConfigError("TrialConfig: walk_dt must be positive");
    if (n_trials < 1) throw ConfigError("TrialConfig: n_trials must be >= 1");
    if (histogram_bins < 2) throw ConfigError("TrialConfig: histogram_bins must be >= 2");
    if (threads < 1) throw ConfigError("TrialConfig: threads must be >= 1");
}

TrialEngine::TrialEngine(TrialConfig cfg)
    : cfg_(std::move(cfg)), wp_(cfg_.packet.build()) {
    cfg_.validate();
    const double half = 0.5 * cfg_.medium.extent;
    if (half > wp_.eval_half_width())
        throw ConfigError("TrialEngine: medium extent exceeds the packet evaluation box");

    table_lo_ = -half;
    table_step_ = cfg_.medium.extent / static_cast<double>(kPsiTablePoints - 1);
    psi_table_.resize(kPsiTablePoints);
    for (std::size_t i = 0; i < kPsiTablePoints; ++i) {
        const double r = table_lo_ + table_step_ * static_cast<double>(i);
        psi_table_[i] = std::abs(position_amplitude(wp_, r));
        psi_max_ = std::max(psi_max_, psi_table_[i]);
    }

    if (cfg_.medium_mode == MediumMode::frozen) {
        auto eng = rng::make_engine(cfg_.master_seed, 0, "frozen-medium");
        frozen_medium_ = sample_medium(cfg_.medium, eng);
    }
}

TrialEngine::TrialEngine(TrialConfig cfg, Medium medium) : TrialEngine([&] {
        cfg.medium_mode = MediumMode::frozen;
        return std::move(cfg);
    }()) {
    if (medium.molecules.empty())
        throw EmptyMediumError("TrialEngine: supplied medium is empty");
    frozen_medium_ = std::move(medium);
}

double TrialEngine::psi_abs(double r) const {
    if (r <= table_lo_) return psi_table_.front();
    const double u = (r - table_lo_) / table_step_;
    const std::size_t i = static_cast<std::size_t>(u);
    if (i + 1 >= psi_table_.size()) return psi_table_.back();
    const double t = u - static_cast<double>(i);
    return psi_table_[i] + t * (psi_table_[i + 1] - psi_table_[i]);
}

double TrialEngine::analytic_mean_multiplicity() const {
    double integral = 0.0;
    for (std::size_t i = 1; i < psi_table_.size(); ++i)
        integral += 0.5 * (psi_table_[i - 1] + psi_table_[i]) * table_step_;
    return 2.0 * cfg_.epsilon * cfg_.medium.density * integral / cfg_.medium.spread;
}

TrialOutcome TrialEngine::run_trial(long trial_index) const {
    const auto trial = static_cast<std::uint64_t>(trial_index);
    auto eng_in = rng::make_engine(cfg_.master_seed, trial, "omega_in");
    const double omega_in = spectral_sample(wp_, eng_in);

    Medium fresh;
    const Medium* medium = nullptr;
    if (cfg_.medium_mode == MediumMode::frozen) {
        medium = &*frozen_medium_;
    } else {
        auto eng_med = rng::make_engine(cfg_.master_seed, trial, "medium");
        try {
            fresh = sample_medium(cfg_.medium, eng_med);
        } catch (const EmptyMediumError&) {
            // Physically a no-candidate trial: nothing to resonate with.
            return {std::nullopt, 0};
        }
        medium = &fresh;
    }

    // Resonance scan with the bias applied on the fly.
    std::size_t best = 0;
    double best_detuning = HUGE_VAL;
    double best_omega = 0.0;
    std::uint32_t multiplicity = 0;
    for (std::size_t n = 0; n < medium->molecules.size(); ++n) {
        const auto& mol = medium->molecules[n];
        double omega_n = mol.omega;
        if (cfg_.frequency_bias) omega_n += cfg_.frequency_bias(mol.r);
        const double detuning = std::abs(omega_in - omega_n);
        if (detuning >= cfg_.epsilon * psi_max_) continue;  // cheap reject
        if (detuning < cfg_.epsilon * psi_abs(mol.r)) {
            ++multiplicity;
            if (detuning < best_detuning) {
                best_detuning = detuning;
                best = n;
                best_omega = omega_n;
            }
        }
    }
    if (multiplicity == 0) return {std::nullopt, 0};

    const auto& mol = medium->molecules[best];
    const double cmag = cfg_.epsilon * psi_abs(mol.r);
    const double tau_det = cfg_.gamma / (cmag * cmag);

    bool detected = false;
    if (cfg_.force_window_unity) {
        detected = true;
    } else {
        DiffusionParams dp{cfg_.g, cfg_.effective_window_width(), cfg_.variant,
                           cfg_.semantics};
        auto eng_dec = rng::make_engine(cfg_.master_seed, trial, "decide");
        if (cfg_.decision_mode == DecisionMode::closed_form) {
            const double p = window_probability(tau_det, dp);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            detected = unit(eng_dec) < p;
        } else {
            detected = simulate_walk(eng_dec, WalkParams{cfg_.walk_dt}, dp, tau_det);
        }
    }
    if (!detected) return {std::nullopt, multiplicity};

    return {DetectionEvent{trial_index, best, mol.r, best_omega, omega_in, tau_det},
            multiplicity};
}

SpatialHistogram TrialEngine::make_histogram_frame() const {
    // 99% |psi|^2 support from the table.
    double total = 0.0;
    for (double p : psi_table_) total += p * p;
    double lo = table_lo_, hi = table_lo_ + table_step_ * (kPsiTablePoints - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < psi_table_.size(); ++i) {
        acc += psi_table_[i] * psi_table_[i];
        if (acc < 0.005 * total) lo = table_lo_ + table_step_ * static_cast<double>(i);
        if (acc <= 0.995 * total) hi = table_lo_ + table_step_ * static_cast<double>(i);
    }

    SpatialHistogram h;
    const int bins = cfg_.histogram_bins;
    h.edges.resize(bins + 1);
    h.counts.assign(bins, 0);
    h.psi_sq_bin_mean.resize(bins);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (int b = 0; b <= bins; ++b) h.edges[b] = lo + width * b;
    constexpr int kSub = 16;
    for (int b = 0; b < bins; ++b) {
        double s = 0.0;
        for (int j = 0; j < kSub; ++j) {
            const double r = h.edges[b] + width * (j + 0.5) / kSub;
            const double p = psi_abs(r);
            s += p * p;
        }
        h.psi_sq_bin_mean[b] = s / kSub;
    }
    return h;
}

EnsembleResult TrialEngine::run_ensemble() const {
    const long n = cfg_.n_trials;
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(n));

    const int threads = std::min<long>(cfg_.threads, n);
    if (threads <= 1) {
        for (long i = 0; i < n; ++i) outcomes[static_cast<std::size_t>(i)] = run_trial(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        const long chunk = (n + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const long begin = t * chunk;
            const long end = std::min(n, begin + chunk);
            pool.emplace_back([this, &outcomes, begin, end] {
                for (long i = begin; i < end; ++i)
                    outcomes[static_cast<std::size_t>(i)] = run_trial(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    EnsembleResult res;
    res.n_trials = n;
    res.histogram = make_histogram_frame();
    res.histogram.trials = n;
    double mult_sum = 0.0;
    for (const auto& out : outcomes) {
        mult_sum += out.candidate_multiplicity;
        if (out.candidate_multiplicity == 0) ++res.no_candidate_trials;
        if (!out.event) continue;
        res.events.push_back(*out.event);
        const auto& e = *out.event;
        if (e.r >= res.histogram.edges.front() && e.r < res.histogram.edges.back()) {
            const double width = res.histogram.edges[1] - res.histogram.edges[0];
            auto b = static_cast<std::size_t>((e.r - res.histogram.edges.front()) / width);
            b = std::min(b, res.histogram.counts.size() - 1);
            ++res.histogram.counts[b];
            ++res.histogram.detections;
        }
    }
    res.mean_multiplicity = mult_sum / static_cast<double>(n);
    return res;
}

EnsembleResult run_ensemble(const TrialConfig& cfg) {
    return TrialEngine(cfg).run_ensemble();
}

stats::OriginFit born_fit(const SpatialHistogram& hist, int psi_exponent) {
    if (psi_exponent != 1 && psi_exponent != 2)
        throw std::invalid_argument("born_fit: psi exponent must be 1 or 2");
    long nonempty = 0;
    for (long c : hist.counts) nonempty += c > 0;
    if (nonempty < 10)
        throw std::invalid_argument("born_fit: fewer than 10 nonempty bins");

    std::vector<double> x(hist.counts.size()), y(hist.counts.size());
    for (std::size_t b = 0; b < hist.counts.size(); ++b) {
        x[b] = psi_exponent == 2 ? hist.psi_sq_bin_mean[b]
                                 : std::sqrt(hist.psi_sq_bin_mean[b]);
        y[b] = static_cast<double>(hist.counts[b]);
    }
    return stats::fit_through_origin(x, y);
}

RepeatabilityReport repeatability_experiment(const TrialConfig& cfg) {
    if (cfg.medium_mode != MediumMode::frozen)
        throw ConfigError("repeatability_experiment: medium_mode must be frozen");
    const EnsembleResult a = run_ensemble(cfg);
    const EnsembleResult b = run_ensemble(cfg);
    RepeatabilityReport rep;
    rep.n_events_first = static_cast<long>(a.events.size());
    rep.n_events_second = static_cast<long>(b.events.size());
    rep.identical = a.events == b.events;
    return rep;
}

DissipationFreeResult experiment_dissipation_free(TrialConfig cfg) {
    cfg.force_window_unity = true;
    DissipationFreeResult res;
    res.ensemble = run_ensemble(cfg);
    res.fit_psi = born_fit(res.ensemble.histogram, 1);
    res.fit_psi_sq = born_fit(res.ensemble.histogram, 2);
    return res;
}

SpectralBiasResult experiment_spectral_bias(TrialConfig cfg, double offset,
                                            double region_lo, double region_hi) {
    cfg.frequency_bias = [=](double r) {
        return (r >= region_lo && r <= region_hi) ? offset : 0.0;
    };
    SpectralBiasResult res;
    res.ensemble = run_ensemble(cfg);
    for (const auto& e : res.ensemble.events)
        if (e.r >= region_lo && e.r <= region_hi) ++res.events_in_region;
    return res;
}

std::vector<RarifiedRow> experiment_rarified(TrialConfig cfg,
                                             const std::vector<double>& densities) {
    std::vector<RarifiedRow> rows;
    const double bandwidth = cfg.packet.build().bandwidth();
    for (double rho : densities) {
        cfg.medium.density = rho;
        const double expected_n = rho * cfg.medium.extent;
        const double delta = cfg.medium.spread / std::max(expected_n - 1.0, 1.0);
        const EnsembleResult res = run_ensemble(cfg);
        rows.push_back({rho, delta / bandwidth,
                        static_cast<double>(res.no_candidate_trials) /
                            static_cast<double>(res.n_trials)});
    }
    return rows;
}

TransverseScaleResult experiment_transverse_scale(TrialConfig cfg,
                                                  const std::vector<double>& sigma_rs) {
    TransverseScaleResult res;
    std::vector<double> xs, emp, ana;
    for (double sigma_r : sigma_rs) {
        cfg.packet.sigma_k = 1.0 / (2.0 * sigma_r);
        cfg.packet.grid_span = 16.0 * cfg.packet.sigma_k;
        TrialEngine engine(cfg);
        const EnsembleResult r = engine.run_ensemble();
        TransverseRow row{sigma_r, r.mean_multiplicity, engine.analytic_mean_multiplicity()};
        res.rows.push_back(row);
        xs.push_back(sigma_r);
        emp.push_back(std::max(row.mean_multiplicity, 1e-12));
        ana.push_back(std::max(row.analytic_multiplicity, 1e-12));
    }
    res.crossover_sigma_r = interp_crossing(xs, emp, 1.0);
    res.analytic_crossover_sigma_r = interp_crossing(xs, ana, 1.0);
    return res;
}

}  // namespace qcdet
