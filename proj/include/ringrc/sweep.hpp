#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ringrc/pipeline.hpp"

namespace ringrc {

struct GridPoint {
    double detuning_ghz = 0.0;  // delta_omega / 2 pi
    double pin_dbm = 0.0;
    double tau_fc = 10e-9;  // s
    double tau_th = 50e-9;  // s
};

/// Axes of a sweep. Points are ordered row-major with tau_fc outermost,
/// then tau_th, then power, with detuning varying fastest.
struct SweepGrid {
    std::vector<double> detuning_ghz;
    std::vector<double> pin_dbm;
    std::vector<double> tau_fc;
    std::vector<double> tau_th;
    std::vector<std::uint64_t> seeds;

    /// n evenly spaced values from lo to hi inclusive.
    static std::vector<double> linspace(double lo, double hi, std::size_t n);

    /// 41 x 41 over +-200 GHz and -20..+20 dBm, ten seeds 1..10.
    static SweepGrid standard(double tau_fc, double tau_th);

    /// Non-empty, strictly monotone axes and distinct seeds; throws ConfigError.
    void validate() const;

    std::size_t size() const { return detuning_ghz.size() * pin_dbm.size() * tau_fc.size() * tau_th.size(); }
    GridPoint point(std::size_t index) const;
};

struct SeedOutcome {
    std::uint64_t seed = 0;
    bool ok = false;
    double train_nmse = 0.0;
    double test_nmse = 0.0;
    double lambda = 0.0;
    std::string error;
};

struct SweepRecord {
    std::size_t index = 0;
    GridPoint point;
    std::vector<SeedOutcome> seeds;
    double nmse_mean = 0.0;    // over successful seeds; NaN if none
    double nmse_std = 0.0;     // sample standard deviation
    double nmse_stderr = 0.0;
    std::size_t failed_seeds = 0;
    double modulation_index = 0.0;
    double wall_s = 0.0;

    bool failed() const { return failed_seeds == seeds.size(); }
};

/// PipelineConfig with the grid point's detuning, power and lifetimes applied.
PipelineConfig configure_point(const GridPoint& point, const PipelineConfig& base);

/// Runs every seed at one grid point. Per-seed numerical failures are
/// recorded and excluded from the mean instead of aborting.
SweepRecord evaluate_point(const GridPoint& point, const PipelineConfig& base, std::span<const std::uint64_t> seeds);

struct SweepResult {
    std::vector<SweepRecord> records;  // grid order
    nlohmann::ordered_json manifest;
    std::size_t failed_points = 0;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total, const SweepRecord&)>;

/// Evaluates the whole grid on `workers` threads. Records come back in grid
/// order and do not depend on the worker count.
SweepResult run_sweep(const SweepGrid& grid, const PipelineConfig& base, unsigned workers,
                      const ProgressFn& progress = {});

/// Configuration echo used for the manifest and its hash.
nlohmann::ordered_json config_echo(const SweepGrid& grid, const PipelineConfig& base);
nlohmann::ordered_json config_echo(const PipelineConfig& base);

/// 64-bit FNV-1a of the compact JSON dump, as 16 hex digits.
std::string manifest_hash(const nlohmann::ordered_json& config);

/// Columns: detuning_ghz, pin_dbm, tau_fc_s, tau_th_s, seed_count, nmse_mean,
/// nmse_std, nmse_seed_0.., failed_seeds, mod_index, wall_s. The first line
/// is a `# manifest_hash=` comment.
void write_sweep_csv(std::ostream& out, const SweepResult& result, const SweepGrid& grid);

/// Version string embedded in manifests.
const char* code_version();

}  // namespace ringrc
