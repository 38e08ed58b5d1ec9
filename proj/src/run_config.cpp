#include "ringrc/run_config.hpp"

#include <cstdlib>
#include <thread>

#include "ringrc/device.hpp"
#include "ringrc/errors.hpp"

namespace ringrc {

namespace {

std::size_t count(const KeyValueFile& f, const std::string& key, std::size_t fallback) {
    const long long v = f.integer(key, static_cast<long long>(fallback));
    if (v < 0) throw ConfigError(f.origin() + ": key '" + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
}

std::vector<double> axis(const KeyValueFile& f, const std::string& name, double lo, double hi, std::size_t n) {
    if (f.contains("sweep." + name)) return f.numbers("sweep." + name, {});
    return SweepGrid::linspace(f.number("sweep." + name + "_min", lo), f.number("sweep." + name + "_max", hi),
                               count(f, "sweep." + name + "_points", n));
}

}  // namespace

unsigned default_workers() {
    if (const char* env = std::getenv("RING_RC_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
        throw ConfigError(std::string("RING_RC_THREADS must be a positive integer, got '") + env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

RunConfig run_config_from(const KeyValueFile& f, const std::filesystem::path& base_dir) {
    RunConfig rc;
    const std::string device = f.string("device_file", "");
    if (device.empty()) throw ConfigError(f.origin() + ": missing required key 'device_file'");
    rc.device_file = std::filesystem::path(device).is_absolute() ? std::filesystem::path(device) : base_dir / device;
    if (!std::filesystem::exists(rc.device_file)) {
        throw ConfigError("device file not found: " + rc.device_file.string());
    }
    rc.output_dir = f.string("output_dir", "out");
    const long long workers = f.integer("workers", 0);
    rc.workers = workers > 0 ? static_cast<unsigned>(workers) : default_workers();

    PipelineConfig& p = rc.pipeline;
    p.device = load_device(rc.device_file);

    p.tdrc.n_nodes = count(f, "tdrc.n_nodes", p.tdrc.n_nodes);
    p.tdrc.chip_duration = f.number("tdrc.chip_duration", p.tdrc.chip_duration);
    p.tdrc.symbol_duration = f.number("tdrc.symbol_duration", p.tdrc.symbol_duration);
    p.tdrc.bias_beta = f.number("tdrc.bias_beta", p.tdrc.bias_beta);
    p.tdrc.mask_seed = count(f, "tdrc.mask_seed", p.tdrc.mask_seed);
    const std::string encoding = f.string("tdrc.encoding", "power");
    if (encoding == "power") p.tdrc.encoding = Encoding::power;
    else if (encoding == "field") p.tdrc.encoding = Encoding::field;
    else throw ConfigError(f.origin() + ": tdrc.encoding must be \"power\" or \"field\"");

    p.feedback.delay = f.number("feedback.delay", p.feedback.delay);
    p.feedback.phase = f.number("feedback.phase", p.feedback.phase);
    p.feedback.gain = f.number("feedback.gain", p.feedback.gain);

    p.integrator.dt = f.number("integrator.dt", p.integrator.dt);
    p.integrator.record_stride = count(f, "integrator.record_stride", p.integrator.record_stride);

    p.task.warmup = count(f, "task.warmup", p.task.warmup);
    p.task.train = count(f, "task.train", p.task.train);
    p.task.test = count(f, "task.test", p.task.test);

    p.readout.lambda = f.number("readout.lambda", p.readout.lambda);
    p.readout.search = f.boolean("readout.search", p.readout.search);
    if (f.contains("readout.grid")) p.readout.grid = f.numbers("readout.grid", {});
    p.readout.validation_fraction = f.number("readout.validation_fraction", p.readout.validation_fraction);

    rc.detuning_ghz = f.number("simulate.detuning_ghz", rc.detuning_ghz);
    rc.pin_dbm = f.number("simulate.pin_dbm", rc.pin_dbm);
    rc.seed = count(f, "simulate.seed", rc.seed);

    SweepGrid& g = rc.grid;
    g.detuning_ghz = axis(f, "detuning_ghz", -200.0, 200.0, 41);
    g.pin_dbm = axis(f, "pin_dbm", -20.0, 20.0, 41);
    g.tau_fc = f.numbers("sweep.tau_fc", {p.device.tau_fc});
    g.tau_th = f.numbers("sweep.tau_th", {p.device.tau_th});
    for (double s : f.numbers("sweep.seeds", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10})) {
        if (s < 0 || s != std::floor(s)) throw ConfigError(f.origin() + ": sweep.seeds must be non-negative integers");
        g.seeds.push_back(static_cast<std::uint64_t>(s));
    }

    p.validate();
    g.validate();
    return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw ConfigError("config file not found: " + path.string());
    return run_config_from(KeyValueFile::load(path), path.parent_path());
}

}  // namespace ringrc
