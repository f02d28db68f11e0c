#include "qcdet/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcdet {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {
std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

std::string two_sig(double v) {
    if (v == 0.0) return "0";
    std::ostringstream os;
    os.precision(2);
    os << std::scientific << v;
    return os.str();
}
}  // namespace

void write_events_csv(const std::string& path, const std::vector<DetectionEvent>& events) {
    auto out = open_out(path);
    out << "trial,molecule,r,omega_n,omega_in,tau_det\n";
    for (const auto& e : events) {
        out << e.trial << ',' << e.molecule << ',' << format_double(e.r) << ','
            << format_double(e.omega_n) << ',' << format_double(e.omega_in) << ','
            << format_double(e.tau_det) << '\n';
    }
}

void write_histogram_csv(const std::string& path, const SpatialHistogram& hist) {
    auto out = open_out(path);
    out << "bin_lo,bin_hi,count,psi_sq_bin_mean\n";
    for (std::size_t b = 0; b < hist.counts.size(); ++b) {
        out << format_double(hist.edges[b]) << ',' << format_double(hist.edges[b + 1])
            << ',' << hist.counts[b] << ',' << format_double(hist.psi_sq_bin_mean[b])
            << '\n';
    }
}

nlohmann::json appendix_to_json(const AppendixReport& r) {
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : r.verdicts)
        verdicts.push_back({{"name", v.name}, {"ratio", v.ratio}, {"holds", v.holds}});
    return {
        {"wavenumber_per_m", r.wavenumber},
        {"wavenumber_spread_per_m", r.wavenumber_spread},
        {"packet_volume_m3", r.packet_volume},
        {"psi_mag_m_minus_3_2", r.psi_mag},
        {"molecule_count", r.molecule_count},
        {"excitation_energy_ev", r.excitation_energy_ev},
        {"thermal_speed_m_s", r.thermal_speed},
        {"doppler_spread_ev", r.doppler_spread_ev},
        {"level_spacing_ev", r.level_spacing_ev},
        {"neutron_energy_ev", r.neutron_energy_ev},
        {"energy_bandwidth_ev", r.energy_bandwidth_ev},
        {"epsilon_s_m32", r.epsilon},
        {"coupling_energy_ev", r.coupling_energy_ev},
        {"verdicts", verdicts},
        {"discrepancies", r.discrepancies},
        {"notes", r.notes},
    };
}

std::string appendix_to_table(const AppendixReport& r) {
    std::ostringstream os;
    auto row = [&](const char* name, double v, const char* unit) {
        os << "  " << name << " = " << format_double(v) << ' ' << unit << '\n';
    };
    os << "slow-neutron detection estimates\n";
    row("k", r.wavenumber, "1/m");
    row("delta_k", r.wavenumber_spread, "1/m");
    row("packet volume", r.packet_volume, "m^3");
    row("|psi|", r.psi_mag, "m^-3/2");
    row("molecule count", r.molecule_count, "");
    row("excitation energy Delta", r.excitation_energy_ev, "eV");
    row("thermal speed v", r.thermal_speed, "m/s");
    row("Doppler spread S", r.doppler_spread_ev, "eV");
    row("level spacing delta", r.level_spacing_ev, "eV");
    row("neutron energy E", r.neutron_energy_ev, "eV");
    row("hbar*Omega", r.energy_bandwidth_ev, "eV");
    row("epsilon (perturbative)", r.epsilon, "s^-1 m^3/2");
    row("hbar*eps*|psi|", r.coupling_energy_ev, "eV");
    os << "inequality chain:\n";
    for (const auto& v : r.verdicts)
        os << "  " << v.name << ": ratio " << two_sig(v.ratio) << " -> "
           << (v.holds ? "holds" : "fails") << '\n';
    os << "flagged discrepancies:\n";
    for (const auto& d : r.discrepancies) os << "  - " << d << '\n';
    os << "notes:\n";
    for (const auto& n : r.notes) os << "  - " << n << '\n';
    return os.str();
}

void write_json(const std::string& path, const nlohmann::json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

}  // namespace qcdet
