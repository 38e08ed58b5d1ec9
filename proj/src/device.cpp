#include "ringrc/device.hpp"

#include <sstream>

namespace ringrc {

namespace {

struct Field {
    const char* key;
    double MrrParams::*member;
    bool required;
};

constexpr Field fields[] = {
    {"omega_p", &MrrParams::omega_p, true},
    {"delta_omega", &MrrParams::delta_omega, false},
    {"tau_c", &MrrParams::tau_c, true},
    {"alpha", &MrrParams::alpha, true},
    {"tau_fc", &MrrParams::tau_fc, true},
    {"tau_th", &MrrParams::tau_th, true},
    {"n_si", &MrrParams::n_si, true},
    {"dn_dN", &MrrParams::dn_dN, true},
    {"dn_dT", &MrrParams::dn_dT, true},
    {"beta_tpa", &MrrParams::beta_tpa, true},
    {"sigma_fca", &MrrParams::sigma_fca, true},
    {"c_p", &MrrParams::c_p, true},
    {"mass", &MrrParams::mass, true},
    {"gamma_fca_conf", &MrrParams::gamma_fca_conf, true},
    {"gamma_tpa_conf", &MrrParams::gamma_tpa_conf, true},
    {"gamma_th_conf", &MrrParams::gamma_th_conf, true},
    {"v_fca", &MrrParams::v_fca, true},
    {"v_tpa", &MrrParams::v_tpa, true},
    {"absorption_fraction", &MrrParams::absorption_fraction, false},
};

}  // namespace

MrrParams device_from(const KeyValueFile& file) {
    MrrParams p;
    for (const auto& f : fields) {
        const std::string key = std::string("device.") + f.key;
        if (f.required || file.contains(key)) p.*f.member = file.number(key);
    }
    p.validate();
    return p;
}

MrrParams load_device(const std::filesystem::path& path) { return device_from(KeyValueFile::load(path)); }

std::string device_to_toml(const MrrParams& params) {
    std::ostringstream out;
    out.precision(17);
    out << "[device]\n";
    for (const auto& f : fields) out << f.key << " = " << params.*f.member << '\n';
    return out.str();
}

}  // namespace ringrc
