#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ringrc/feedback.hpp"
#include "ringrc/integrator.hpp"
#include "ringrc/physics.hpp"
#include "ringrc/waveform.hpp"

namespace ringrc {

enum class Encoding {
    power,  // optical power proportional to u*m + bias
    field,  // field amplitude proportional to u*m + bias
};

struct TdrcConfig {
    std::size_t n_nodes = 50;
    double chip_duration = 20e-12;   // s
    double symbol_duration = 1e-9;   // s
    double bias_beta = 8.0;
    double p_in_avg = 1e-3;          // W
    std::uint64_t mask_seed = 1;
    Encoding encoding = Encoding::power;

    /// Throws ConfigError / ConfigMismatch.
    void validate() const;
};

/// Virtual-node drop-port powers, one row per symbol (W).
using StateMatrix = Eigen::MatrixXd;

/// i.i.d. uniform [0, 1] mask, reused for every symbol.
std::vector<double> generate_mask(std::uint64_t seed, std::size_t n_nodes);

/// Chip values u(k) * m(j) + bias, held for a chip each, scaled so that the
/// average optical power equals cfg.p_in_avg. Throws BiasTooSmall if any
/// chip value is not positive, ConfigMismatch if dt does not divide a chip.
EncodedWaveform encode(std::span<const double> u, std::span<const double> mask, const TdrcConfig& cfg, double dt);

/// Drives the ring with the encoded input and the through-to-add feedback
/// loop, samples the drop power at the last grid sample of every chip and
/// drops the first `warmup_symbols` rows.
StateMatrix run_reservoir(const EncodedWaveform& waveform, const MrrParams& mrr, FeedbackLine feedback,
                          const IntegratorConfig& icfg, std::size_t warmup_symbols);

StateMatrix run_reservoir(std::span<const double> u, const MrrParams& mrr, const TdrcConfig& cfg,
                          FeedbackLine feedback, const IntegratorConfig& icfg, std::size_t warmup_symbols);

/// CSV with header node_0..node_{N-1}.
void write_state_csv(std::ostream& out, const StateMatrix& states);

}  // namespace ringrc
