#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ringrc {

/// Delay loop from the through port back to the add port.
/// E_add(t) = gain * exp(i phase) * E_through(t - delay), zero before the
/// loop has filled.
class FeedbackLine {
public:
    FeedbackLine() = default;
    FeedbackLine(double delay_s, double phase_rad, double gain);

    double delay() const { return delay_; }
    double phase() const { return phase_; }
    double gain() const { return gain_; }

    /// Sizes the buffer for a step `dt` and clears it. The delay must be a
    /// whole number of steps.
    void prime(double dt);

    std::size_t delay_samples() const { return delay_samples_; }

    /// Appends the through field of the current grid sample.
    void push(std::complex<double> through) {
        buffer_[write_] = through;
        write_ = write_ + 1 == buffer_.size() ? 0 : write_ + 1;
    }

    /// Add-port field at the current sample (the one most recently pushed).
    std::complex<double> add_now() const { return factor_ * buffer_[write_]; }

    /// Add-port field one grid step later.
    std::complex<double> add_next() const {
        const std::size_t i = write_ + 1 == buffer_.size() ? 0 : write_ + 1;
        return factor_ * buffer_[i];
    }

private:
    double delay_ = 0.5e-9;
    double phase_ = 0.0;
    double gain_ = 1.0;
    std::complex<double> factor_{1.0, 0.0};
    std::size_t delay_samples_ = 0;
    // Holds delay_samples_ + 1 values; write_ points at the oldest, which
    // is the sample exactly one delay behind the last push.
    std::vector<std::complex<double>> buffer_;
    std::size_t write_ = 0;
};

}  // namespace ringrc
