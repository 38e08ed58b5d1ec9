#include "ringrc/tdrc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ringrc/errors.hpp"
#include "ringrc/random.hpp"

namespace ringrc {

namespace {

std::size_t whole_steps(double duration, double dt, const char* what) {
    const double steps = duration / dt;
    const double rounded = std::round(steps);
    if (rounded < 1.0 || std::abs(steps - rounded) > 1e-6 * rounded) {
        throw ConfigMismatch(std::string(what) + " is not a whole number of integrator steps");
    }
    return static_cast<std::size_t>(rounded);
}

}  // namespace

void TdrcConfig::validate() const {
    if (n_nodes == 0) throw ConfigError("tdrc n_nodes must be at least 1");
    if (!(std::isfinite(chip_duration) && chip_duration > 0.0)) throw ConfigError("tdrc chip_duration must be positive");
    if (!(std::isfinite(symbol_duration) && symbol_duration > 0.0)) {
        throw ConfigError("tdrc symbol_duration must be positive");
    }
    if (std::abs(double(n_nodes) * chip_duration - symbol_duration) > 1e-9 * symbol_duration) {
        throw ConfigMismatch("n_nodes * chip_duration must equal symbol_duration");
    }
    if (!std::isfinite(bias_beta)) throw ConfigError("tdrc bias_beta must be finite");
    if (!(std::isfinite(p_in_avg) && p_in_avg >= 0.0)) throw ConfigError("tdrc p_in_avg must be non-negative");
}

std::vector<double> generate_mask(std::uint64_t seed, std::size_t n_nodes) {
    SeededUniform rng(seed);
    std::vector<double> mask(n_nodes);
    for (auto& m : mask) m = rng.next();
    return mask;
}

EncodedWaveform encode(std::span<const double> u, std::span<const double> mask, const TdrcConfig& cfg, double dt) {
    cfg.validate();
    if (mask.size() != cfg.n_nodes) throw ConfigError("mask length differs from n_nodes");
    if (u.empty()) throw ConfigError("cannot encode an empty input sequence");

    EncodedWaveform w;
    w.samples_per_chip = whole_steps(cfg.chip_duration, dt, "chip duration");
    w.chips_per_symbol = cfg.n_nodes;
    w.dt = dt;

    std::vector<double> level;
    level.reserve(u.size() * mask.size());
    for (double uk : u) {
        for (double mj : mask) {
            const double v = uk * mj + cfg.bias_beta;
            if (!(v > 0.0)) throw BiasTooSmall("u*m + bias is not positive; raise bias_beta");
            level.push_back(v);
        }
    }

    double mean = 0.0;
    if (cfg.encoding == Encoding::power) {
        for (double v : level) mean += v;
    } else {
        for (double v : level) mean += v * v;
    }
    mean /= double(level.size());
    const double gain = cfg.p_in_avg / mean;

    w.chips.resize(level.size());
    double p_min = INFINITY;
    double p_max = 0.0;
    for (std::size_t i = 0; i < level.size(); ++i) {
        const double power = cfg.encoding == Encoding::power ? level[i] * gain : level[i] * level[i] * gain;
        w.chips[i] = std::sqrt(power);
        p_min = std::min(p_min, power);
        p_max = std::max(p_max, power);
    }
    w.modulation_index = p_max + p_min > 0.0 ? (p_max - p_min) / (p_max + p_min) : 0.0;
    return w;
}

StateMatrix run_reservoir(const EncodedWaveform& waveform, const MrrParams& mrr, FeedbackLine feedback,
                          const IntegratorConfig& icfg, std::size_t warmup_symbols) {
    icfg.validate();
    mrr.validate();
    const std::size_t n_symbols = waveform.n_symbols();
    const std::size_t n_nodes = waveform.chips_per_symbol;
    if (warmup_symbols > n_symbols) throw OutOfRange("warmup exceeds the number of encoded symbols");
    if (std::abs(waveform.dt - icfg.dt) > 1e-9 * icfg.dt) {
        throw ConfigMismatch("waveform was encoded for a different integrator step");
    }

    const NormalizedRing<double> ring(mrr);
    const std::size_t spc = waveform.samples_per_chip;
    const std::size_t first_sample = warmup_symbols * n_nodes * spc;
    StateMatrix states(n_symbols - warmup_symbols, n_nodes);

    run_ring(ring, BasicMrrState<double>{}, waveform, icfg.dt, &feedback,
             [&](std::size_t n, const BasicMrrState<double>& s, std::complex<double>) {
                 if (n < first_sample || (n + 1) % spc != 0) return;
                 const std::size_t chip = (n - first_sample) / spc;
                 states(chip / n_nodes, chip % n_nodes) = ring.drop_power(s) * scale::power;
             });
    return states;
}

StateMatrix run_reservoir(std::span<const double> u, const MrrParams& mrr, const TdrcConfig& cfg,
                          FeedbackLine feedback, const IntegratorConfig& icfg, std::size_t warmup_symbols) {
    const auto mask = generate_mask(cfg.mask_seed, cfg.n_nodes);
    return run_reservoir(encode(u, mask, cfg, icfg.dt), mrr, std::move(feedback), icfg, warmup_symbols);
}

void write_state_csv(std::ostream& out, const StateMatrix& states) {
    for (Eigen::Index j = 0; j < states.cols(); ++j) out << (j ? "," : "") << "node_" << j;
    out << '\n';
    out.precision(17);
    for (Eigen::Index i = 0; i < states.rows(); ++i) {
        for (Eigen::Index j = 0; j < states.cols(); ++j) out << (j ? "," : "") << states(i, j);
        out << '\n';
    }
}

}  // namespace ringrc
