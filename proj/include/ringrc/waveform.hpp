#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

namespace ringrc {

/// Input-port envelope on the integrator grid. The modulator holds its
/// output for a whole chip, so the waveform is stored one value per chip
/// and expanded to `samples_per_chip` grid samples on access.
struct EncodedWaveform {
    std::vector<std::complex<double>> chips;  // sqrt(W)
    std::size_t samples_per_chip = 1;
    std::size_t chips_per_symbol = 1;
    double dt = 0.0;  // s
    double modulation_index = 0.0;

    std::size_t size() const { return chips.size() * samples_per_chip; }
    std::size_t n_symbols() const { return chips_per_symbol ? chips.size() / chips_per_symbol : 0; }

    /// Sample i; indices past the end hold the last value.
    std::complex<double> operator[](std::size_t i) const {
        return chips[std::min(i / samples_per_chip, chips.size() - 1)];
    }

    double mean_power() const;

    /// One chip per sample, for arbitrary test drives.
    static EncodedWaveform from_samples(std::vector<std::complex<double>> samples, double dt);
};

}  // namespace ringrc
