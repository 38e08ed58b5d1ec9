#pragma once

#include <string>
#include <vector>

#include "ringrc/physics.hpp"

namespace ringrc {

struct OracleResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

// Analytic oracles. Each integrates the ring model at the given step and
// compares against a closed-form answer.

/// Global error of pure amplitude decay (rate 1/ns, 5 ns) at dt and dt/2;
/// `measured` is the error ratio, which must lie in [12, 20].
OracleResult rk4_order_oracle(double dt);

/// Drive-off carrier decay N0 exp(-t/tau_fc) over five lifetimes.
OracleResult carrier_decay_oracle(const MrrParams& params, double dt, double tolerance = 1e-6);

/// Drive-off thermal decay T0 exp(-t/tau_th) over five lifetimes.
OracleResult thermal_decay_oracle(const MrrParams& params, double dt, double tolerance = 1e-6);

/// Drive-off field decay; log-slope of |a| against the linear rate.
OracleResult field_decay_oracle(const MrrParams& params, double dt, double tolerance = 1e-3);

/// Linearized ring under constant drive against the Lorentzian
/// |a|^2 = (2/tau_c)|E|^2 / (detuning^2 + gamma^2); `detuning_in_linewidths`
/// is detuning / gamma_tot.
OracleResult lorentzian_oracle(const MrrParams& params, double dt, double detuning_in_linewidths,
                               double tolerance = 5e-3);

/// Ridge weights against an independent Gaussian-elimination solve of the
/// normal equations on random systems.
OracleResult ridge_oracle(int systems, int rows, int cols, double tolerance = 1e-10);

/// NARMA-10 with zero input converges to 0.7 - sqrt(0.29).
OracleResult narma_fixed_point_oracle(double tolerance = 1e-6);

/// Mean predictor gives exactly 1; (0,1,2,3) vs (0,1,2,4) gives 0.2.
OracleResult nmse_definition_oracle();

/// The full battery run by `ringrc validate`.
std::vector<OracleResult> run_oracle_battery(const MrrParams& params, double dt);

}  // namespace ringrc
