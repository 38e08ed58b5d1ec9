#pragma once

namespace ringrc {

/// Evaluation instant of a Runge-Kutta stage within one step.
enum class Stage { start, mid, end };

/// Classical fourth-order Runge-Kutta step. `f(state, stage)` returns the
/// derivative at the given stage; State needs `+` and scalar `*`.
template <typename State, typename Scalar, typename Rhs>
State rk4_step(const State& y, Scalar h, Rhs&& f) {
    const Scalar half = h / Scalar(2);
    const State k1 = f(y, Stage::start);
    const State k2 = f(y + half * k1, Stage::mid);
    const State k3 = f(y + half * k2, Stage::mid);
    const State k4 = f(y + h * k3, Stage::end);
    return y + (h / Scalar(6)) * (k1 + Scalar(2) * (k2 + k3) + k4);
}

}  // namespace ringrc
