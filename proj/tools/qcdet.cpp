#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qcdet/appendix.hpp"
#include "qcdet/born.hpp"
#include "qcdet/config.hpp"
#include "qcdet/errors.hpp"
#include "qcdet/report.hpp"
#include "qcdet/trials.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path = "configs/born_default.json";
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "JSON run configuration");
    cmd->add_option("--out", opts.out_dir, "Output directory");
    cmd->add_option("--seed", opts.seed, "Master seed override");
    cmd->add_option("--trials", opts.trials, "Trial count override");
    cmd->add_option("--threads", opts.threads,
                    "Worker thread count (results are invariant to it)");
}

qcdet::RunConfig load_with_overrides(const CommonOpts& opts) {
    qcdet::RunConfig cfg = qcdet::load_run_config(opts.config_path);
    if (opts.seed) cfg.trial.master_seed = *opts.seed;
    if (opts.trials) cfg.trial.n_trials = *opts.trials;
    if (opts.threads) cfg.trial.threads = *opts.threads;
    cfg.out_dir = opts.out_dir;
    cfg.trial.validate();
    return cfg;
}

std::string out_path(const qcdet::RunConfig& cfg, const char* name) {
    fs::create_directories(cfg.out_dir);
    return (fs::path(cfg.out_dir) / name).string();
}

int cmd_simulate(const CommonOpts& opts) {
    const qcdet::RunConfig cfg = load_with_overrides(opts);
    const qcdet::EnsembleResult res = qcdet::run_ensemble(cfg.trial);
    const qcdet::stats::OriginFit fit = qcdet::born_fit(res.histogram);

    qcdet::write_events_csv(out_path(cfg, "events.csv"), res.events);
    qcdet::write_histogram_csv(out_path(cfg, "histogram.csv"), res.histogram);
    json summary = {
        {"config", qcdet::config_to_json(cfg)},
        {"trials", res.n_trials},
        {"detections", static_cast<long>(res.events.size())},
        {"binned_detections", res.histogram.detections},
        {"no_candidate_trials", res.no_candidate_trials},
        {"mean_multiplicity", res.mean_multiplicity},
        {"slope", fit.slope},
        {"r_squared", fit.r_squared},
    };
    qcdet::write_json(out_path(cfg, "summary.json"), summary);
    std::cout << "detections " << res.events.size() << ", slope "
              << qcdet::format_double(fit.slope) << ", R^2 "
              << qcdet::format_double(fit.r_squared) << '\n';
    return 0;
}

int cmd_experiment(const std::string& name, const CommonOpts& opts) {
    qcdet::RunConfig cfg = load_with_overrides(opts);
    const qcdet::Wavepacket wp = cfg.trial.packet.build();
    json verdict;

    if (name == "repeatability") {
        cfg.trial.medium_mode = qcdet::MediumMode::frozen;
        const auto rep = qcdet::repeatability_experiment(cfg.trial);
        verdict = {{"experiment", name},
                   {"identical", rep.identical},
                   {"events", rep.n_events_first}};
    } else if (name == "dissipation_free") {
        const auto res = qcdet::experiment_dissipation_free(cfg.trial);
        qcdet::write_histogram_csv(out_path(cfg, "histogram.csv"), res.ensemble.histogram);
        verdict = {{"experiment", name},
                   {"r_squared_vs_psi", res.fit_psi.r_squared},
                   {"r_squared_vs_psi_sq", res.fit_psi_sq.r_squared},
                   {"psi_fit_wins", res.fit_psi.r_squared > res.fit_psi_sq.r_squared}};
    } else if (name == "spectral_bias") {
        double offset = cfg.experiment.bias_offset;
        double lo = cfg.experiment.bias_region_lo, hi = cfg.experiment.bias_region_hi;
        if (offset == 0.0) {
            offset = 10.0 * wp.bandwidth();
            lo = 0.0;
            hi = 0.5 * cfg.trial.medium.extent;
        }
        const auto res = qcdet::experiment_spectral_bias(cfg.trial, offset, lo, hi);
        qcdet::write_histogram_csv(out_path(cfg, "histogram.csv"), res.ensemble.histogram);
        verdict = {{"experiment", name},
                   {"bias_offset", offset},
                   {"bias_region", {lo, hi}},
                   {"events_total", static_cast<long>(res.ensemble.events.size())},
                   {"events_in_region", res.events_in_region},
                   {"region_dark", res.events_in_region == 0}};
    } else if (name == "rarified") {
        std::vector<double> densities = cfg.experiment.densities;
        if (densities.empty()) {
            for (double ratio : {0.05, 0.15, 0.5, 1.5, 5.0})
                densities.push_back(cfg.trial.medium.spread /
                                    (ratio * wp.bandwidth() * cfg.trial.medium.extent));
        }
        if (cfg.experiment.n_trials > 0) cfg.trial.n_trials = cfg.experiment.n_trials;
        const auto rows = qcdet::experiment_rarified(cfg.trial, densities);
        auto csv = out_path(cfg, "rarified.csv");
        {
            std::ofstream out(csv);
            out << "density,delta_over_omega,no_resonance_fraction\n";
            for (const auto& r : rows)
                out << qcdet::format_double(r.density) << ','
                    << qcdet::format_double(r.delta_over_bandwidth) << ','
                    << qcdet::format_double(r.no_resonance_fraction) << '\n';
        }
        bool monotone = true;
        for (std::size_t i = 1; i < rows.size(); ++i)
            monotone &= rows[i].no_resonance_fraction >= rows[i - 1].no_resonance_fraction;
        verdict = {{"experiment", name}, {"points", rows.size()}, {"monotone", monotone}};
    } else if (name == "transverse_scale") {
        std::vector<double> sigma_rs = cfg.experiment.sigma_rs;
        if (sigma_rs.empty())
            sigma_rs = {0.1, 0.2, 0.4, 0.8, 1.6, 3.2, 6.4};
        if (cfg.experiment.n_trials > 0) cfg.trial.n_trials = cfg.experiment.n_trials;
        const auto res = qcdet::experiment_transverse_scale(cfg.trial, sigma_rs);
        auto csv = out_path(cfg, "transverse.csv");
        {
            std::ofstream out(csv);
            out << "sigma_r,mean_multiplicity,analytic_multiplicity\n";
            for (const auto& r : res.rows)
                out << qcdet::format_double(r.sigma_r) << ','
                    << qcdet::format_double(r.mean_multiplicity) << ','
                    << qcdet::format_double(r.analytic_multiplicity) << '\n';
        }
        verdict = {{"experiment", name},
                   {"crossover_sigma_r", res.crossover_sigma_r},
                   {"analytic_crossover_sigma_r", res.analytic_crossover_sigma_r}};
    } else {
        std::cerr << "unknown experiment '" << name
                  << "'; valid names: dissipation_free, spectral_bias, rarified, "
                     "transverse_scale, repeatability\n";
        return 2;
    }

    json summary = {{"config", qcdet::config_to_json(cfg)}, {"verdict", verdict}};
    qcdet::write_json(out_path(cfg, "summary.json"), summary);
    std::cout << verdict.dump(2) << '\n';
    return 0;
}

int cmd_validate(const CommonOpts& opts) {
    const qcdet::RunConfig cfg = load_with_overrides(opts);
    const qcdet::TrialEngine engine(cfg.trial);
    const qcdet::Wavepacket& wp = engine.packet();

    const double psi_peak = engine.psi_abs_max();
    const double coupling_peak = cfg.trial.epsilon * psi_peak;
    qcdet::EffectivePair pair{wp.carrier(), wp.carrier(), coupling_peak, cfg.trial.gamma};
    const auto regime = qcdet::regime_check(pair, cfg.trial.margins);

    const double expected_n = cfg.trial.medium.density * cfg.trial.medium.extent;
    const double delta = cfg.trial.medium.spread / std::max(expected_n - 1.0, 1.0);
    const double mult = engine.analytic_mean_multiplicity();

    std::cout << "carrier " << qcdet::format_double(wp.carrier()) << ", bandwidth "
              << qcdet::format_double(wp.bandwidth()) << '\n'
              << "peak coupling eps*|psi| " << qcdet::format_double(coupling_peak)
              << ", gamma " << qcdet::format_double(cfg.trial.gamma) << '\n'
              << "mean level spacing " << qcdet::format_double(delta)
              << ", peak window / spacing " << qcdet::format_double(coupling_peak / delta)
              << '\n'
              << "expected resonance multiplicity "
              << qcdet::format_double(mult) << " ("
              << (mult < 1.0 ? "sparse" : "crowded") << " regime)\n";
    if (!regime.width_ok)
        std::cout << "warning: peak coupling too close to gamma; the large-width "
                     "reduction margin is violated\n";
    return 0;
}

int cmd_appendix(qcdet::NeutronExperimentInputs inputs, const std::string& out_dir) {
    const qcdet::AppendixReport report = qcdet::compute_report(inputs);
    std::cout << qcdet::appendix_to_table(report);
    fs::create_directories(out_dir);
    qcdet::write_json((fs::path(out_dir) / "appendix.json").string(),
                      qcdet::appendix_to_json(report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-continuum single-quantum detection simulator"};
    app.require_subcommand(1);

    CommonOpts sim_opts, exp_opts, val_opts;
    std::string experiment_name;
    std::string appendix_out = ".";
    qcdet::NeutronExperimentInputs appendix_inputs;

    auto* sim = app.add_subcommand("simulate", "Run a detection ensemble and the Born fit");
    add_common(sim, sim_opts);

    auto* exp = app.add_subcommand("experiment", "Run one of the named experiments");
    exp->add_option("name", experiment_name,
                    "dissipation_free | spectral_bias | rarified | transverse_scale | "
                    "repeatability")
        ->required();
    add_common(exp, exp_opts);

    auto* val = app.add_subcommand("validate", "Parse and validate a config; print regime "
                                               "diagnostics without running");
    add_common(val, val_opts);

    auto* apx = app.add_subcommand("appendix", "Slow-neutron sanity-number calculator");
    apx->add_option("--sigma", appendix_inputs.cross_section, "Cross section, m^2");
    apx->add_option("--lambda", appendix_inputs.wavelength, "Neutron wavelength, m");
    apx->add_option("--bandwidth-fraction", appendix_inputs.bandwidth_fraction,
                    "delta_k / k");
    apx->add_option("--rho", appendix_inputs.number_density, "Molecule density, m^-3");
    apx->add_option("--temperature", appendix_inputs.temperature, "Gas temperature, K");
    apx->add_option("--width", appendix_inputs.transverse_width,
                    "Transverse packet width, m");
    apx->add_option("--out", appendix_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_opts);
        if (exp->parsed()) return cmd_experiment(experiment_name, exp_opts);
        if (val->parsed()) return cmd_validate(val_opts);
        if (apx->parsed()) return cmd_appendix(appendix_inputs, appendix_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
