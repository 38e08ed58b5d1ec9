#pragma once

#include <cstdint>
#include <random>

namespace ringrc {

// std::mt19937_64 has a fully specified output sequence, while the standard
// distributions do not. Uniform draws are built from the raw bits so runs
// reproduce across standard libraries.
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double next() { return double(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double next(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace ringrc
