#include "ringrc/pipeline.hpp"

#include <cmath>

namespace ringrc {

void PipelineConfig::validate() const {
    device.validate();
    tdrc.validate();
    integrator.validate();
    feedback.line();  // constructor validates
    if (task.train < 2 || task.test < 2) throw ConfigError("task train and test sizes must be at least 2");
    if (task.total() <= 10) throw ConfigError("task length must exceed 10 symbols");
    if (!(readout.lambda >= 0.0)) throw ConfigError("readout lambda must be non-negative");
    if (readout.search) {
        if (readout.grid.empty()) throw ConfigError("readout lambda grid is empty");
        for (double l : readout.grid)
            if (!(l >= 0.0) || !std::isfinite(l)) throw ConfigError("readout lambda grid values must be >= 0");
        if (!(readout.validation_fraction > 0.0 && readout.validation_fraction < 1.0)) {
            throw ConfigError("readout validation_fraction must lie in (0, 1)");
        }
    }
}

ReadoutModel train_readout(const StateMatrix& states, std::span<const double> targets, std::size_t train,
                           const ReadoutConfig& cfg) {
    const Eigen::MatrixXd x = with_bias_column(states.topRows(Eigen::Index(train)));
    const Eigen::Map<const Eigen::VectorXd> y(targets.data(), Eigen::Index(train));
    if (!cfg.search) return ridge_train(x, y, cfg.lambda);

    const auto n_val = std::max<Eigen::Index>(2, Eigen::Index(std::llround(double(train) * cfg.validation_fraction)));
    const Eigen::Index n_fit = Eigen::Index(train) - n_val;
    if (n_fit < 1) throw ConfigError("training split too short for the lambda search");
    const auto best = lambda_search(x.topRows(n_fit), y.head(n_fit), x.bottomRows(n_val), y.tail(n_val), cfg.grid);
    return ridge_train(x, y, best.lambda);
}

PipelineRun run_pipeline(const PipelineConfig& cfg, std::uint64_t seed) {
    PipelineRun run;
    run.data = narma10(seed, cfg.task.total());
    const DatasetSplit parts = split(run.data, cfg.task.warmup, cfg.task.train, cfg.task.test);

    const auto mask = generate_mask(cfg.tdrc.mask_seed, cfg.tdrc.n_nodes);
    const EncodedWaveform waveform = encode(run.data.u, mask, cfg.tdrc, cfg.integrator.dt);
    run.modulation_index = waveform.modulation_index;
    run.states = run_reservoir(waveform, cfg.device, cfg.feedback.line(), cfg.integrator, parts.warmup);

    const std::span<const double> y(run.data.y);
    const std::span<const double> targets = y.subspan(parts.train_begin(), parts.train + parts.test);
    run.model = train_readout(run.states, targets, parts.train, cfg.readout);

    const Eigen::MatrixXd x = with_bias_column(run.states);
    const Eigen::Map<const Eigen::VectorXd> y_all(targets.data(), Eigen::Index(targets.size()));
    const Eigen::VectorXd pred = predict(x, run.model);
    const auto n_train = Eigen::Index(parts.train);
    const auto n_test = Eigen::Index(parts.test);
    run.train_nmse = nmse(pred.head(n_train), y_all.head(n_train));
    run.test_nmse = nmse(pred.segment(n_train, n_test), y_all.segment(n_train, n_test));
    return run;
}

}  // namespace ringrc
