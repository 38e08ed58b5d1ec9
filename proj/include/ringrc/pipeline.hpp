#pragma once

#include <cstdint>
#include <vector>

#include "ringrc/feedback.hpp"
#include "ringrc/integrator.hpp"
#include "ringrc/physics.hpp"
#include "ringrc/readout.hpp"
#include "ringrc/tasks.hpp"
#include "ringrc/tdrc.hpp"

namespace ringrc {

struct TaskSizes {
    std::size_t warmup = 100;
    std::size_t train = 3000;
    std::size_t test = 1000;

    std::size_t total() const { return warmup + train + test; }
};

struct FeedbackConfig {
    double delay = 0.5e-9;  // s
    double phase = 0.0;     // rad
    double gain = 1.0;

    FeedbackLine line() const { return FeedbackLine(delay, phase, gain); }
};

struct ReadoutConfig {
    double lambda = 1e-6;
    bool search = true;
    // Drop powers are raw watts, so X^T X sits around 1e-5; the grid has to
    // reach far below the usual 1e-9 floor.
    std::vector<double> grid = decade_grid(-18, -1);
    double validation_fraction = 0.2;  // tail of the training split
};

/// Everything one reservoir evaluation needs, apart from the task seed.
struct PipelineConfig {
    MrrParams device;
    TdrcConfig tdrc;
    FeedbackConfig feedback;
    IntegratorConfig integrator;
    TaskSizes task;
    ReadoutConfig readout;

    /// Checks every section; throws ConfigError.
    void validate() const;
};

struct PipelineRun {
    TaskDataset data;
    StateMatrix states;  // rows aligned with y(warmup + r)
    ReadoutModel model;
    double train_nmse = 0.0;
    double test_nmse = 0.0;
    double modulation_index = 0.0;
};

/// NARMA-10 generation, reservoir simulation, ridge training and test
/// evaluation for one task seed.
PipelineRun run_pipeline(const PipelineConfig& cfg, std::uint64_t seed);

/// Ridge readout on a state matrix whose rows are aligned with `targets`.
/// Returns the model trained on the first `train` rows.
ReadoutModel train_readout(const StateMatrix& states, std::span<const double> targets, std::size_t train,
                           const ReadoutConfig& cfg);

}  // namespace ringrc
