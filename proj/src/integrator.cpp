#include "ringrc/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ringrc {

void IntegratorConfig::validate() const {
    if (!(std::isfinite(dt) && dt > 0.0)) throw ConfigError("integrator dt must be positive");
    if (record_stride == 0) throw ConfigError("integrator record_stride must be at least 1");
}

std::vector<std::string> IntegratorConfig::warnings(const MrrParams& params, double chip_duration) const {
    std::vector<std::string> out;
    auto check = [&](double scale_s, const char* name) {
        if (dt > scale_s / 10.0) {
            std::ostringstream msg;
            msg << "dt = " << dt << " s exceeds a tenth of " << name << " (" << scale_s << " s)";
            out.push_back(msg.str());
        }
    };
    check(params.tau_fc, "tau_fc");
    check(params.tau_th, "tau_th");
    check(params.tau_c, "tau_c");
    if (chip_duration > 0.0) check(chip_duration, "the chip duration");
    return out;
}

MrrState rk4_step(const MrrState& state, const DriveField& drive_at_t, const DriveField& drive_at_half,
                  const DriveField& drive_at_next, double dt, const MrrParams& params) {
    MrrState next = rk4_step(state, dt, [&](const MrrState& s, Stage stage) {
        switch (stage) {
            case Stage::start: return rhs(s, drive_at_t, params);
            case Stage::mid: return rhs(s, drive_at_half, params);
            case Stage::end: break;
        }
        return rhs(s, drive_at_next, params);
    });
    if (!is_finite(next)) throw NonFinite("rk4_step produced a non-finite state", dt);
    return next;
}

Trace integrate(const MrrState& initial, const EncodedWaveform& waveform, const MrrParams& params,
                const IntegratorConfig& cfg, FeedbackLine* feedback) {
    cfg.validate();
    params.validate();
    if (!is_finite(initial)) throw NonFinite("initial state is not finite", 0.0);

    const NormalizedRing<double> ring(params);
    const double field_si = std::sqrt(scale::power);
    Trace trace;
    if (waveform.size() > 0) trace.reserve((waveform.size() - 1) / cfg.record_stride + 1);
    run_ring(ring, to_internal(initial), waveform, cfg.dt, feedback,
             [&](std::size_t n, const BasicMrrState<double>& s, std::complex<double> through) {
                 if (n % cfg.record_stride != 0) return;
                 trace.push_back({double(n) * cfg.dt, to_si(s), ring.drop_power(s) * scale::power, through * field_si});
             });
    return trace;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
    out << "t_s,re_a,im_a,deltaN_m3,deltaT_K,p_drop_W\n";
    out.precision(17);
    for (const auto& s : trace) {
        out << s.t << ',' << s.state.a.real() << ',' << s.state.a.imag() << ',' << s.state.carriers << ','
            << s.state.temperature << ',' << s.p_drop << '\n';
    }
}

double EncodedWaveform::mean_power() const {
    if (chips.empty()) return 0.0;
    const double sum = std::accumulate(chips.begin(), chips.end(), 0.0,
                                       [](double acc, std::complex<double> e) { return acc + std::norm(e); });
    return sum / double(chips.size());
}

EncodedWaveform EncodedWaveform::from_samples(std::vector<std::complex<double>> samples, double dt) {
    EncodedWaveform w;
    w.chips = std::move(samples);
    w.samples_per_chip = 1;
    w.chips_per_symbol = 1;
    w.dt = dt;
    return w;
}

FeedbackLine::FeedbackLine(double delay_s, double phase_rad, double gain)
    : delay_(delay_s), phase_(phase_rad), gain_(gain), factor_(std::polar(gain, phase_rad)) {
    if (!(std::isfinite(delay_s) && delay_s > 0.0)) throw ConfigError("feedback delay must be positive");
    if (!(std::isfinite(gain) && gain >= 0.0 && gain <= 1.0)) throw ConfigError("feedback gain must lie in [0, 1]");
    if (!std::isfinite(phase_rad)) throw ConfigError("feedback phase must be finite");
}

void FeedbackLine::prime(double dt) {
    const double steps = delay_ / dt;
    const double rounded = std::round(steps);
    if (rounded < 1.0 || std::abs(steps - rounded) > 1e-6 * std::max(1.0, rounded)) {
        throw ConfigMismatch("feedback delay is not a whole number of integrator steps");
    }
    delay_samples_ = static_cast<std::size_t>(rounded);
    buffer_.assign(delay_samples_ + 1, std::complex<double>{});
    write_ = 0;
}

}  // namespace ringrc
