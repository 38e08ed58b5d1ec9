#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ringrc/errors.hpp"
#include "ringrc/feedback.hpp"
#include "ringrc/physics.hpp"
#include "ringrc/rk4.hpp"
#include "ringrc/waveform.hpp"

namespace ringrc {

struct IntegratorConfig {
    double dt = 1e-12;  // s
    std::size_t record_stride = 1;

    /// Throws ConfigError for dt <= 0 or a zero stride.
    void validate() const;

    /// Resolution warnings: dt should not exceed a tenth of any time scale.
    std::vector<std::string> warnings(const MrrParams& params, double chip_duration) const;
};

/// One RK4 step of the SI model. Drives are the samples at t, t+dt/2, t+dt.
/// Throws NonFinite if the result is not finite.
MrrState rk4_step(const MrrState& state, const DriveField& drive_at_t, const DriveField& drive_at_half,
                  const DriveField& drive_at_next, double dt, const MrrParams& params);

struct TraceSample {
    double t = 0.0;  // s
    MrrState state;
    double p_drop = 0.0;                 // W
    std::complex<double> e_through{};    // sqrt(W)
};

using Trace = std::vector<TraceSample>;

/// Steps the ring over the whole waveform (size() - 1 steps) and records
/// every `record_stride`-th grid sample, starting with t = 0. `feedback`
/// may be null.
Trace integrate(const MrrState& initial, const EncodedWaveform& waveform, const MrrParams& params,
                const IntegratorConfig& cfg, FeedbackLine* feedback);

/// CSV with columns t_s, re_a, im_a, deltaN_m3, deltaT_K, p_drop_W.
void write_trace_csv(std::ostream& out, const Trace& trace);

/// Core stepping loop in internal units. `observe(n, state, through)` is
/// called for every grid sample n = 0..size()-1 with the internal state and
/// the through field (sqrt(mW)) at that sample. The waveform is read in SI
/// and converted on the fly; the feedback line carries internal fields.
template <typename Observer>
BasicMrrState<double> run_ring(const NormalizedRing<double>& ring, BasicMrrState<double> state,
                               const EncodedWaveform& waveform, double dt_s, FeedbackLine* feedback,
                               Observer&& observe) {
    const double h = dt_s / scale::time;
    const double to_internal = 1.0 / std::sqrt(scale::power);
    const std::size_t n_samples = waveform.size();
    if (n_samples == 0) return state;

    if (feedback) feedback->prime(dt_s);

    std::complex<double> e_now = waveform[0] * to_internal;
    for (std::size_t n = 0;; ++n) {
        const std::complex<double> through = ring.through(state, e_now);
        observe(n, state, through);
        if (n + 1 == n_samples) break;

        const std::complex<double> e_next = waveform[n + 1] * to_internal;
        std::complex<double> drive_now = e_now;
        std::complex<double> drive_next = e_next;
        if (feedback) {
            feedback->push(through);
            drive_now += feedback->add_now();
            drive_next += feedback->add_next();
        }
        // Piecewise-constant drive: the midpoint sees the sample covering it.
        state = rk4_step(state, h, [&](const BasicMrrState<double>& s, Stage stage) {
            return ring.derivative(s, stage == Stage::end ? drive_next : drive_now);
        });
        if (!is_finite(state)) {
            throw NonFinite("ring state became non-finite (step too large or unphysical parameters)",
                            double(n + 1) * dt_s);
        }
        e_now = e_next;
    }
    return state;
}

}  // namespace ringrc
