#pragma once

// Coupled-mode model of a silicon add-drop microring with two-photon
// absorption, free-carrier absorption/dispersion and thermo-optic heating.
// Everything is expressed in the frame rotating at the pump frequency, so
// the mode amplitude and port fields are slowly varying envelopes.

#include <cmath>
#include <complex>

#include "ringrc/units.hpp"

namespace ringrc {

/// Dynamical state of the ring. Templated on the scalar so the integrator
/// can be exercised in extended precision.
template <typename Scalar>
struct BasicMrrState {
    std::complex<Scalar> a{};  ///< mode amplitude, |a|^2 is stored energy
    Scalar carriers{};         ///< excess free-carrier density
    Scalar temperature{};      ///< temperature offset from the environment

    BasicMrrState& operator+=(const BasicMrrState& o) {
        a += o.a;
        carriers += o.carriers;
        temperature += o.temperature;
        return *this;
    }
    BasicMrrState& operator*=(Scalar s) {
        a *= s;
        carriers *= s;
        temperature *= s;
        return *this;
    }
    friend BasicMrrState operator+(BasicMrrState l, const BasicMrrState& r) { return l += r; }
    friend BasicMrrState operator*(BasicMrrState l, Scalar s) { return l *= s; }
    friend BasicMrrState operator*(Scalar s, BasicMrrState r) { return r *= s; }
    friend bool operator==(const BasicMrrState&, const BasicMrrState&) = default;
};

/// SI state: a in sqrt(J), carriers in m^-3, temperature in K.
using MrrState = BasicMrrState<double>;

template <typename Scalar>
bool is_finite(const BasicMrrState<Scalar>& s) {
    using std::isfinite;
    return isfinite(s.a.real()) && isfinite(s.a.imag()) && isfinite(s.carriers) &&
           isfinite(s.temperature);
}

/// Device and material parameters, SI units throughout.
struct MrrParams {
    double omega_p = 2.0 * constants::pi * constants::speed_of_light / 1550e-9;  // rad/s
    double delta_omega = 0.0;  // omega_p - omega_0, rad/s

    double tau_c = 20e-12;   // s, per-bus coupling time
    double alpha = 23.0;     // 1/m, power attenuation of the waveguide
    double tau_fc = 10e-9;   // s
    double tau_th = 50e-9;   // s

    double n_si = 3.485;
    double dn_dN = -1.73e-27;  // m^3
    double dn_dT = 1.86e-4;    // 1/K

    double beta_tpa = 8.4e-12;   // m/W
    double sigma_fca = 1.45e-21; // m^2
    double c_p = 700.0;          // J/(kg K)
    double mass = 5.5e-15;       // kg

    double gamma_fca_conf = 0.9972;
    double gamma_tpa_conf = 0.9931;
    double gamma_th_conf = 0.9346;
    double v_fca = 2.36e-18;  // m^3
    double v_tpa = 2.59e-18;  // m^3

    /// Fraction of the linear waveguide loss that is absorbed (heats the ring).
    double absorption_fraction = 1.0;

    double omega_0() const { return omega_p - delta_omega; }

    /// Throws ConfigError naming the first field that violates its invariant.
    void validate() const;

    /// Copy with every nonlinear coefficient zeroed.
    MrrParams linearized() const;
};

/// Complex baseband envelopes at the two input ports, sqrt(W).
struct DriveField {
    std::complex<double> e_in{};
    std::complex<double> e_add{};
};

/// Amplitude decay rates, 1/s.
struct LossRates {
    double gamma_lin = 0.0;
    double gamma_coup = 0.0;
    double gamma_tpa = 0.0;
    double gamma_fca = 0.0;
    double gamma_tot = 0.0;
};

struct PortFields {
    std::complex<double> e_through{};  // sqrt(W)
    double p_drop = 0.0;               // W
};

/// Total angular detuning between pump and the hot-cavity resonance, rad/s.
double detuning(const MrrState& state, const MrrParams& params);

LossRates loss_rates(const MrrState& state, const MrrParams& params);

/// Time derivative of the state (per second) for the given drive.
MrrState rhs(const MrrState& state, const DriveField& drive, const MrrParams& params);

PortFields port_fields(const MrrState& state, const DriveField& drive, const MrrParams& params);

/// The same model with every coefficient pre-scaled to the internal units
/// (ns, pJ, mW, 1e24 m^-3, K). This is what the integrator runs.
template <typename Scalar>
class NormalizedRing {
public:
    using State = BasicMrrState<Scalar>;
    using Complex = std::complex<Scalar>;

    explicit NormalizedRing(const MrrParams& p) {
        constexpr double c = constants::speed_of_light;
        const double t = scale::time;
        const double e = scale::energy;
        const double n = p.n_si;
        const double omega0 = p.omega_0();

        delta_omega_ = Scalar(p.delta_omega * t);
        shift_per_carrier_ = Scalar(omega0 * p.dn_dN * scale::carriers / n * t);
        shift_per_kelvin_ = Scalar(omega0 * p.dn_dT * scale::temperature / n * t);
        gamma_lin_ = Scalar(c * p.alpha / (2.0 * n) * t);
        gamma_coup_ = Scalar(2.0 / p.tau_c * t);
        // sqrt(T P / E) == 1 for the chosen scales, so the coupling
        // coefficient is the same for injection and out-coupling.
        coupling_ = Scalar(std::sqrt(2.0 * t / p.tau_c * t * scale::power / e));
        tpa_per_energy_ = Scalar(p.gamma_tpa_conf * p.beta_tpa * c * c / (2.0 * n * n * p.v_tpa) * t * e);
        fca_per_carrier_ = Scalar(p.gamma_fca_conf * p.sigma_fca * c / (2.0 * n) * t * scale::carriers);
        inv_tau_fc_ = Scalar(t / p.tau_fc);
        inv_tau_th_ = Scalar(t / p.tau_th);
        generation_ = Scalar(p.gamma_fca_conf * c * c * p.beta_tpa /
                             (2.0 * constants::hbar * p.omega_p * p.v_fca * p.v_fca * n * n) * t * e * e /
                             scale::carriers);
        heating_ = Scalar(p.gamma_th_conf * e / (p.mass * p.c_p) / scale::temperature);
        absorption_fraction_ = Scalar(p.absorption_fraction);
    }

    /// d(state)/d(t_internal) for the summed input field (sqrt(mW)).
    State derivative(const State& s, const Complex& drive) const {
        const Scalar energy = std::norm(s.a);
        const Scalar g_tpa = tpa_per_energy_ * energy;
        const Scalar g_fca = fca_per_carrier_ * s.carriers;
        const Scalar g_tot = gamma_lin_ + gamma_coup_ + g_tpa + g_fca;
        const Scalar delta = delta_omega_ + shift_per_carrier_ * s.carriers + shift_per_kelvin_ * s.temperature;
        const Scalar absorbed = Scalar(2) * (absorption_fraction_ * gamma_lin_ + g_tpa + g_fca);

        State d;
        d.a = Complex(-g_tot, delta) * s.a + Complex(Scalar(0), coupling_) * drive;
        d.carriers = -s.carriers * inv_tau_fc_ + generation_ * energy * energy;
        d.temperature = -s.temperature * inv_tau_th_ + heating_ * absorbed * energy;
        return d;
    }

    /// Through-port envelope, sqrt(mW).
    Complex through(const State& s, const Complex& e_in) const {
        return e_in + Complex(Scalar(0), coupling_) * s.a;
    }

    /// Drop-port power, mW.
    Scalar drop_power(const State& s) const { return coupling_ * coupling_ * std::norm(s.a); }

    Scalar linear_decay_rate() const { return gamma_lin_ + gamma_coup_; }

private:
    Scalar delta_omega_{};
    Scalar shift_per_carrier_{};
    Scalar shift_per_kelvin_{};
    Scalar gamma_lin_{};
    Scalar gamma_coup_{};
    Scalar coupling_{};
    Scalar tpa_per_energy_{};
    Scalar fca_per_carrier_{};
    Scalar inv_tau_fc_{};
    Scalar inv_tau_th_{};
    Scalar generation_{};
    Scalar heating_{};
    Scalar absorption_fraction_{};
};

// Conversions between SI and internal units.
template <typename Scalar = double>
BasicMrrState<Scalar> to_internal(const MrrState& s) {
    return {std::complex<Scalar>(s.a / std::sqrt(scale::energy)), Scalar(s.carriers / scale::carriers),
            Scalar(s.temperature / scale::temperature)};
}

template <typename Scalar>
MrrState to_si(const BasicMrrState<Scalar>& s) {
    return {std::complex<double>(s.a) * std::sqrt(scale::energy), double(s.carriers) * scale::carriers,
            double(s.temperature) * scale::temperature};
}

inline std::complex<double> field_to_internal(std::complex<double> e_si) { return e_si / std::sqrt(scale::power); }
inline std::complex<double> field_to_si(std::complex<double> e) { return e * std::sqrt(scale::power); }

}  // namespace ringrc
