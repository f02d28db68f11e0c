#include "qcdet/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

#include "qcdet/errors.hpp"

namespace qcdet {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& context) {
    if (!j.is_object())
        throw ConfigError("config: '" + context + "' must be an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items())
        if (!ok.count(key))
            throw ConfigError("config: unknown key '" + key + "' in " + context);
}

template <typename T>
void get_if_present(const json& j, const char* key, T& out, const std::string& context) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: bad value for '" + std::string(key) + "' in " + context);
    }
}

void parse_packet(const json& j, PacketSpec& p) {
    reject_unknown(j, {"k0", "sigma_k", "grid_points", "grid_span", "dispersion"},
                   "packet");
    get_if_present(j, "k0", p.k0, "packet");
    get_if_present(j, "sigma_k", p.sigma_k, "packet");
    get_if_present(j, "grid_points", p.grid_points, "packet");
    get_if_present(j, "grid_span", p.grid_span, "packet");
    if (j.contains("dispersion")) {
        const json& d = j.at("dispersion");
        reject_unknown(d, {"linear", "quadratic"}, "packet.dispersion");
        if (d.contains("linear") == d.contains("quadratic"))
            throw ConfigError(
                "config: packet.dispersion needs exactly one of 'linear' or 'quadratic'");
        if (d.contains("linear"))
            p.dispersion = Dispersion::linear(d.at("linear").get<double>());
        else
            p.dispersion = Dispersion::quadratic(d.at("quadratic").get<double>());
    }
}

void parse_medium(const json& j, MediumSpec& m) {
    reject_unknown(j,
                   {"density", "extent", "omega_center", "spread", "frequency_law",
                    "count_law"},
                   "medium");
    get_if_present(j, "density", m.density, "medium");
    get_if_present(j, "extent", m.extent, "medium");
    get_if_present(j, "omega_center", m.omega_center, "medium");
    get_if_present(j, "spread", m.spread, "medium");
    if (j.contains("frequency_law")) {
        const std::string law = j.at("frequency_law").get<std::string>();
        if (law == "uniform")
            m.frequency_law = FrequencyLaw::uniform;
        else if (law == "gaussian")
            m.frequency_law = FrequencyLaw::gaussian;
        else
            throw ConfigError("config: medium.frequency_law must be 'uniform' or 'gaussian'");
    }
    if (j.contains("count_law")) {
        const json& cl = j.at("count_law");
        if (cl.is_string() && cl.get<std::string>() == "poisson") {
            m.count_law = CountLaw::poisson();
        } else if (cl.is_object()) {
            reject_unknown(cl, {"fixed"}, "medium.count_law");
            if (!cl.contains("fixed"))
                throw ConfigError("config: medium.count_law object needs 'fixed'");
            m.count_law = CountLaw::fixed(cl.at("fixed").get<long>());
        } else {
            throw ConfigError(
                "config: medium.count_law must be 'poisson' or {\"fixed\": N}");
        }
    }
}

void parse_dynamics(const json& j, TrialConfig& t) {
    reject_unknown(j, {"epsilon", "gamma", "resonance_margin", "width_margin"},
                   "dynamics");
    get_if_present(j, "epsilon", t.epsilon, "dynamics");
    get_if_present(j, "gamma", t.gamma, "dynamics");
    get_if_present(j, "resonance_margin", t.margins.resonance_margin, "dynamics");
    get_if_present(j, "width_margin", t.margins.width_margin, "dynamics");
}

void parse_dephasing(const json& j, TrialConfig& t) {
    reject_unknown(j, {"g", "G", "diffusion_variant", "window_semantics", "walk_dt"},
                   "dephasing");
    get_if_present(j, "g", t.g, "dephasing");
    if (j.contains("G")) t.window_width = j.at("G").get<double>();
    if (j.contains("diffusion_variant")) {
        const std::string v = j.at("diffusion_variant").get<std::string>();
        if (v == "normalized")
            t.variant = DiffusionVariant::normalized;
        else if (v == "as_written")
            t.variant = DiffusionVariant::as_written;
        else
            throw ConfigError(
                "config: dephasing.diffusion_variant must be 'normalized' or 'as_written'");
    }
    if (j.contains("window_semantics")) {
        const std::string s = j.at("window_semantics").get<std::string>();
        if (s == "at_time")
            t.semantics = WindowSemantics::at_time;
        else if (s == "throughout")
            t.semantics = WindowSemantics::throughout;
        else
            throw ConfigError(
                "config: dephasing.window_semantics must be 'at_time' or 'throughout'");
    }
    get_if_present(j, "walk_dt", t.walk_dt, "dephasing");
}

void parse_trials(const json& j, TrialConfig& t) {
    reject_unknown(j, {"n_trials", "decision_mode", "medium_mode", "histogram_bins"},
                   "trials");
    get_if_present(j, "n_trials", t.n_trials, "trials");
    if (j.contains("decision_mode")) {
        const std::string m = j.at("decision_mode").get<std::string>();
        if (m == "closed_form")
            t.decision_mode = DecisionMode::closed_form;
        else if (m == "walk")
            t.decision_mode = DecisionMode::walk;
        else
            throw ConfigError("config: trials.decision_mode must be 'closed_form' or 'walk'");
    }
    if (j.contains("medium_mode")) {
        const std::string m = j.at("medium_mode").get<std::string>();
        if (m == "fresh_per_trial")
            t.medium_mode = MediumMode::fresh_per_trial;
        else if (m == "frozen")
            t.medium_mode = MediumMode::frozen;
        else
            throw ConfigError(
                "config: trials.medium_mode must be 'fresh_per_trial' or 'frozen'");
    }
    get_if_present(j, "histogram_bins", t.histogram_bins, "trials");
}

void parse_experiment(const json& j, ExperimentSpec& e) {
    reject_unknown(j, {"bias_offset", "bias_region", "densities", "sigma_rs", "n_trials"},
                   "experiment");
    get_if_present(j, "bias_offset", e.bias_offset, "experiment");
    if (j.contains("bias_region")) {
        const json& reg = j.at("bias_region");
        if (!reg.is_array() || reg.size() != 2)
            throw ConfigError("config: experiment.bias_region must be [lo, hi]");
        e.bias_region_lo = reg[0].get<double>();
        e.bias_region_hi = reg[1].get<double>();
    }
    get_if_present(j, "densities", e.densities, "experiment");
    get_if_present(j, "sigma_rs", e.sigma_rs, "experiment");
    get_if_present(j, "n_trials", e.n_trials, "experiment");
}

}  // namespace

RunConfig parse_run_config(const json& j) {
    reject_unknown(j,
                   {"packet", "medium", "dynamics", "dephasing", "trials", "experiment",
                    "seed"},
                   "top level");
    RunConfig cfg;
    if (j.contains("packet")) parse_packet(j.at("packet"), cfg.trial.packet);
    if (j.contains("medium")) parse_medium(j.at("medium"), cfg.trial.medium);
    if (j.contains("dynamics")) parse_dynamics(j.at("dynamics"), cfg.trial);
    if (j.contains("dephasing")) parse_dephasing(j.at("dephasing"), cfg.trial);
    if (j.contains("trials")) parse_trials(j.at("trials"), cfg.trial);
    if (j.contains("experiment")) parse_experiment(j.at("experiment"), cfg.experiment);
    get_if_present(j, "seed", cfg.trial.master_seed, "top level");
    cfg.trial.validate();
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: parse error in '" + path + "': " + e.what());
    }
    return parse_run_config(j);
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    const TrialConfig& t = cfg.trial;
    json disp;
    if (t.packet.dispersion.kind == Dispersion::Kind::linear)
        disp = {{"linear", t.packet.dispersion.param}};
    else
        disp = {{"quadratic", t.packet.dispersion.param}};

    json count_law;
    if (t.medium.count_law.kind == CountLaw::Kind::poisson)
        count_law = "poisson";
    else
        count_law = {{"fixed", t.medium.count_law.fixed_count}};

    json j = {
        {"packet",
         {{"k0", t.packet.k0},
          {"sigma_k", t.packet.sigma_k},
          {"grid_points", t.packet.grid_points},
          {"grid_span", t.packet.grid_span},
          {"dispersion", disp}}},
        {"medium",
         {{"density", t.medium.density},
          {"extent", t.medium.extent},
          {"omega_center", t.medium.omega_center},
          {"spread", t.medium.spread},
          {"frequency_law",
           t.medium.frequency_law == FrequencyLaw::uniform ? "uniform" : "gaussian"},
          {"count_law", count_law}}},
        {"dynamics",
         {{"epsilon", t.epsilon},
          {"gamma", t.gamma},
          {"resonance_margin", t.margins.resonance_margin},
          {"width_margin", t.margins.width_margin}}},
        {"dephasing",
         {{"g", t.g},
          {"G", t.effective_window_width()},
          {"diffusion_variant",
           t.variant == DiffusionVariant::normalized ? "normalized" : "as_written"},
          {"window_semantics",
           t.semantics == WindowSemantics::at_time ? "at_time" : "throughout"},
          {"walk_dt", t.walk_dt}}},
        {"trials",
         {{"n_trials", t.n_trials},
          {"decision_mode",
           t.decision_mode == DecisionMode::closed_form ? "closed_form" : "walk"},
          {"medium_mode",
           t.medium_mode == MediumMode::fresh_per_trial ? "fresh_per_trial" : "frozen"},
          {"histogram_bins", t.histogram_bins}}},
        {"seed", t.master_seed},
    };
    if (cfg.experiment.bias_offset != 0.0 || !cfg.experiment.densities.empty() ||
        !cfg.experiment.sigma_rs.empty()) {
        j["experiment"] = {
            {"bias_offset", cfg.experiment.bias_offset},
            {"bias_region",
             {cfg.experiment.bias_region_lo, cfg.experiment.bias_region_hi}},
            {"densities", cfg.experiment.densities},
            {"sigma_rs", cfg.experiment.sigma_rs},
            {"n_trials", cfg.experiment.n_trials},
        };
    }
    return j;
}

}  // namespace qcdet
