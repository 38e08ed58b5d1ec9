#include "ringrc/physics.hpp"

#include <string>

#include "ringrc/errors.hpp"

namespace ringrc {

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigError(std::string("device parameter '") + field + "' " + what);
}

}  // namespace

void MrrParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    require(finite(omega_p) && omega_p > 0.0, "omega_p", "must be positive");
    require(finite(delta_omega), "delta_omega", "must be finite");
    require(omega_0() > 0.0, "delta_omega", "leaves a non-positive cold resonance");
    require(std::abs(delta_omega) < 1e-2 * omega_0(), "delta_omega", "must be small compared to the resonance");
    require(finite(tau_c) && tau_c > 0.0, "tau_c", "must be positive");
    require(finite(alpha) && alpha >= 0.0, "alpha", "must be non-negative");
    require(finite(tau_fc) && tau_fc > 0.0, "tau_fc", "must be positive");
    require(finite(tau_th) && tau_th > 0.0, "tau_th", "must be positive");
    require(finite(n_si) && n_si > 0.0, "n_si", "must be positive");
    require(finite(dn_dN) && dn_dN <= 0.0, "dn_dN", "must not be positive (carrier dispersion blue-shifts)");
    require(finite(dn_dT) && dn_dT >= 0.0, "dn_dT", "must not be negative (heating red-shifts)");
    require(finite(beta_tpa) && beta_tpa >= 0.0, "beta_tpa", "must be non-negative");
    require(finite(sigma_fca) && sigma_fca >= 0.0, "sigma_fca", "must be non-negative");
    require(finite(c_p) && c_p > 0.0, "c_p", "must be positive");
    require(finite(mass) && mass > 0.0, "mass", "must be positive");
    require(finite(gamma_fca_conf) && gamma_fca_conf >= 0.0, "gamma_fca_conf", "must be non-negative");
    require(finite(gamma_tpa_conf) && gamma_tpa_conf >= 0.0, "gamma_tpa_conf", "must be non-negative");
    require(finite(gamma_th_conf) && gamma_th_conf >= 0.0, "gamma_th_conf", "must be non-negative");
    require(finite(v_fca) && v_fca > 0.0, "v_fca", "must be positive");
    require(finite(v_tpa) && v_tpa > 0.0, "v_tpa", "must be positive");
    require(finite(absorption_fraction) && absorption_fraction >= 0.0 && absorption_fraction <= 1.0,
            "absorption_fraction", "must lie in [0, 1]");
}

MrrParams MrrParams::linearized() const {
    MrrParams p = *this;
    p.beta_tpa = 0.0;
    p.sigma_fca = 0.0;
    p.dn_dN = 0.0;
    p.dn_dT = 0.0;
    return p;
}

double detuning(const MrrState& state, const MrrParams& params) {
    const double index_change = state.carriers * params.dn_dN + state.temperature * params.dn_dT;
    return params.omega_p - params.omega_0() * (1.0 - index_change / params.n_si);
}

LossRates loss_rates(const MrrState& state, const MrrParams& p) {
    constexpr double c = constants::speed_of_light;
    LossRates r;
    r.gamma_lin = c * p.alpha / (2.0 * p.n_si);
    r.gamma_coup = 2.0 / p.tau_c;
    r.gamma_tpa = p.gamma_tpa_conf * p.beta_tpa * c * c * std::norm(state.a) / (2.0 * p.n_si * p.n_si * p.v_tpa);
    r.gamma_fca = p.gamma_fca_conf * p.sigma_fca * c * state.carriers / (2.0 * p.n_si);
    r.gamma_tot = r.gamma_lin + r.gamma_coup + r.gamma_tpa + r.gamma_fca;
    return r;
}

MrrState rhs(const MrrState& state, const DriveField& drive, const MrrParams& p) {
    constexpr double c = constants::speed_of_light;
    const LossRates rates = loss_rates(state, p);
    const double delta = detuning(state, p);
    const double energy = std::norm(state.a);
    const std::complex<double> i{0.0, 1.0};

    MrrState d;
    d.a = (i * delta - rates.gamma_tot) * state.a + i * std::sqrt(2.0 / p.tau_c) * (drive.e_in + drive.e_add);
    d.carriers = -state.carriers / p.tau_fc +
                 p.gamma_fca_conf * c * c * p.beta_tpa * energy * energy /
                     (2.0 * constants::hbar * p.omega_p * p.v_fca * p.v_fca * p.n_si * p.n_si);
    // Only absorbed power heats the ring; out-coupled light leaves as light.
    const double absorption_rate = 2.0 * (p.absorption_fraction * rates.gamma_lin + rates.gamma_tpa + rates.gamma_fca);
    d.temperature = -state.temperature / p.tau_th + p.gamma_th_conf * absorption_rate * energy / (p.mass * p.c_p);
    return d;
}

PortFields port_fields(const MrrState& state, const DriveField& drive, const MrrParams& p) {
    const double coupling = std::sqrt(2.0 / p.tau_c);
    return {drive.e_in + std::complex<double>(0.0, coupling) * state.a, coupling * coupling * std::norm(state.a)};
}

}  // namespace ringrc
