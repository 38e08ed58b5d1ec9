#pragma once

#include <cstdint>
#include <filesystem>

#include "ringrc/kv_config.hpp"
#include "ringrc/pipeline.hpp"
#include "ringrc/sweep.hpp"

namespace ringrc {

/// Everything the command-line tool needs, assembled from a run file and
/// the device file it points to.
struct RunConfig {
    std::filesystem::path device_file;
    std::filesystem::path output_dir = "out";
    unsigned workers = 1;

    PipelineConfig pipeline;
    SweepGrid grid;

    // Single-run operating point for `simulate`.
    double detuning_ghz = -50.0;
    double pin_dbm = -5.0;
    std::uint64_t seed = 1;
};

/// Worker default: RING_RC_THREADS if set, else the hardware concurrency.
unsigned default_workers();

/// Builds the configuration from a parsed run file. Relative paths are
/// resolved against `base_dir`. Throws ConfigError on any invalid value,
/// before any computation.
RunConfig run_config_from(const KeyValueFile& file, const std::filesystem::path& base_dir);

RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace ringrc
