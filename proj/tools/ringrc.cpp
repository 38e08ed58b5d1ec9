// ringrc: microring time-delay reservoir simulator.
//
//   ringrc simulate --config run.toml [--detuning-ghz X] [--pin-dbm P] [--seed S]
//   ringrc sweep    --config run.toml [--workers N] [axis overrides]
//   ringrc validate --config run.toml [--dt S]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 sweep finished with failed grid points.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "ringrc/errors.hpp"
#include "ringrc/integrator.hpp"
#include "ringrc/run_config.hpp"
#include "ringrc/sweep.hpp"
#include "ringrc/validate.hpp"

namespace fs = std::filesystem;
using namespace ringrc;

namespace {

enum ExitCode { ok = 0, config_error = 2, numerical_error = 3, partial_failure = 4 };

struct Overrides {
    std::string config;
    std::optional<std::string> out;
    std::optional<double> detuning_ghz, pin_dbm, dt, tau_fc_point, tau_th_point;
    std::optional<long long> seed, workers;
    std::optional<double> det_min, det_max, pin_min, pin_max;
    std::optional<long long> det_points, pin_points;
    std::vector<double> tau_fc, tau_th, seeds;
    bool trace = false;

    KeyValueFile apply() const {
        KeyValueFile f = KeyValueFile::load(config);
        if (out) f.set("output_dir", *out);
        if (workers) f.set("workers", double(*workers));
        if (dt) f.set("integrator.dt", *dt);
        if (detuning_ghz) f.set("simulate.detuning_ghz", *detuning_ghz);
        if (pin_dbm) f.set("simulate.pin_dbm", *pin_dbm);
        if (seed) f.set("simulate.seed", double(*seed));
        if (det_min) f.set("sweep.detuning_ghz_min", *det_min);
        if (det_max) f.set("sweep.detuning_ghz_max", *det_max);
        if (det_points) f.set("sweep.detuning_ghz_points", double(*det_points));
        if (pin_min) f.set("sweep.pin_dbm_min", *pin_min);
        if (pin_max) f.set("sweep.pin_dbm_max", *pin_max);
        if (pin_points) f.set("sweep.pin_dbm_points", double(*pin_points));
        if (!tau_fc.empty()) f.set("sweep.tau_fc", tau_fc);
        if (!tau_th.empty()) f.set("sweep.tau_th", tau_th);
        if (!seeds.empty()) f.set("sweep.seeds", seeds);
        return f;
    }

    RunConfig load() const {
        if (!fs::exists(config)) throw ConfigError("config file not found: " + config);
        KeyValueFile f = apply();
        // Range overrides replace explicit axis arrays from the file.
        if (det_min || det_max || det_points) f.erase("sweep.detuning_ghz");
        if (pin_min || pin_max || pin_points) f.erase("sweep.pin_dbm");
        RunConfig rc = run_config_from(f, fs::path(config).parent_path());
        if (tau_fc_point) {
            rc.pipeline.device.tau_fc = *tau_fc_point;
            if (tau_fc.empty()) rc.grid.tau_fc = {*tau_fc_point};
        }
        if (tau_th_point) {
            rc.pipeline.device.tau_th = *tau_th_point;
            if (tau_th.empty()) rc.grid.tau_th = {*tau_th_point};
        }
        rc.pipeline.validate();
        rc.grid.validate();
        return rc;
    }
};

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    return out;
}

int cmd_simulate(const Overrides& o) {
    const RunConfig rc = o.load();
    const GridPoint point{rc.detuning_ghz, rc.pin_dbm, rc.pipeline.device.tau_fc, rc.pipeline.device.tau_th};
    const PipelineConfig cfg = configure_point(point, rc.pipeline);
    auto echo = config_echo(cfg);
    echo["seed"] = rc.seed;
    const std::string hash = manifest_hash(echo);

    for (const auto& w : cfg.integrator.warnings(cfg.device, cfg.tdrc.chip_duration)) std::cerr << "warning: " << w << '\n';

    const PipelineRun run = run_pipeline(cfg, rc.seed);

    fs::create_directories(rc.output_dir);
    {
        auto out = open_output(rc.output_dir / "states.csv");
        out << "# manifest_hash=" << hash << '\n';
        write_state_csv(out, run.states);
    }
    {
        auto model = nlohmann::ordered_json::parse(model_to_json(run.model));
        model["manifest_hash"] = hash;
        open_output(rc.output_dir / "model.json") << model.dump(2) << '\n';
    }
    {
        auto out = open_output(rc.output_dir / "dataset.csv");
        out << "# manifest_hash=" << hash << '\n';
        write_dataset_csv(out, run.data);
    }
    nlohmann::ordered_json metrics;
    metrics["manifest_hash"] = hash;
    metrics["code_version"] = code_version();
    metrics["seed"] = rc.seed;
    metrics["detuning_ghz"] = point.detuning_ghz;
    metrics["pin_dbm"] = point.pin_dbm;
    metrics["tau_fc_s"] = point.tau_fc;
    metrics["tau_th_s"] = point.tau_th;
    metrics["lambda"] = run.model.lambda;
    metrics["train_nmse"] = run.train_nmse;
    metrics["test_nmse"] = run.test_nmse;
    metrics["mod_index"] = run.modulation_index;
    metrics["config"] = echo;
    open_output(rc.output_dir / "metrics.json") << metrics.dump(2) << '\n';

    if (o.trace) {
        const auto mask = generate_mask(cfg.tdrc.mask_seed, cfg.tdrc.n_nodes);
        const EncodedWaveform waveform = encode(run.data.u, mask, cfg.tdrc, cfg.integrator.dt);
        FeedbackLine line = cfg.feedback.line();
        const Trace trace = integrate(MrrState{}, waveform, cfg.device, cfg.integrator, &line);
        auto out = open_output(rc.output_dir / "trace.csv");
        out << "# manifest_hash=" << hash << '\n';
        write_trace_csv(out, trace);
    }

    std::printf("test NMSE %.6f  train NMSE %.6f  lambda %.1e  (detuning %.1f GHz, %.1f dBm, seed %llu)\n",
                run.test_nmse, run.train_nmse, run.model.lambda, point.detuning_ghz, point.pin_dbm,
                static_cast<unsigned long long>(rc.seed));
    std::printf("outputs written to %s\n", rc.output_dir.string().c_str());
    return ok;
}

int cmd_sweep(const Overrides& o) {
    const RunConfig rc = o.load();
    std::cerr << "sweep: " << rc.grid.size() << " points x " << rc.grid.seeds.size() << " seeds on " << rc.workers
              << " worker(s)\n";
    const SweepResult result =
        run_sweep(rc.grid, rc.pipeline, rc.workers, [](std::size_t done, std::size_t total, const SweepRecord& r) {
            std::fprintf(stderr, "[%zu/%zu] detuning %7.1f GHz  %6.1f dBm  NMSE %.4f%s\n", done, total,
                         r.point.detuning_ghz, r.point.pin_dbm, r.nmse_mean, r.failed_seeds ? "  (failed seeds)" : "");
        });

    fs::create_directories(rc.output_dir);
    {
        auto out = open_output(rc.output_dir / "sweep.csv");
        write_sweep_csv(out, result, rc.grid);
    }
    open_output(rc.output_dir / "sweep_manifest.json") << result.manifest.dump(2) << '\n';
    std::cerr << "wrote " << (rc.output_dir / "sweep.csv").string() << '\n';
    return result.failed_points ? partial_failure : ok;
}

int cmd_validate(const Overrides& o) {
    const RunConfig rc = o.load();
    const double dt = rc.pipeline.integrator.dt;
    bool all = true;
    std::printf("oracle battery at dt = %g s\n", dt);
    for (const auto& r : run_oracle_battery(rc.pipeline.device, dt)) {
        std::printf("%-4s %-28s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        all = all && r.passed;
    }
    return all ? ok : numerical_error;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Silicon microring time-delay reservoir simulator"};
    app.require_subcommand(1);
    Overrides o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", o.config, "Run configuration file")->required();
        sub->add_option("-o,--out", o.out, "Output directory");
        sub->add_option("--dt", o.dt, "Integrator step, s");
        sub->add_option("--tau-fc", o.tau_fc_point, "Free-carrier lifetime, s");
        sub->add_option("--tau-th", o.tau_th_point, "Thermal decay time, s");
    };

    auto* simulate = app.add_subcommand("simulate", "Run one operating point and write states, model and metrics");
    add_common(simulate);
    simulate->add_option("--detuning-ghz", o.detuning_ghz, "Pump detuning delta_omega / 2 pi, GHz");
    simulate->add_option("--pin-dbm", o.pin_dbm, "Average input power, dBm");
    simulate->add_option("--seed", o.seed, "NARMA-10 seed");
    simulate->add_flag("--trace", o.trace, "Also dump the full ring trace (large)");

    auto* sweep = app.add_subcommand("sweep", "Evaluate a detuning x power grid");
    add_common(sweep);
    sweep->add_option("-w,--workers", o.workers, "Worker threads (default RING_RC_THREADS or all cores)");
    sweep->add_option("--detuning-min", o.det_min, "GHz");
    sweep->add_option("--detuning-max", o.det_max, "GHz");
    sweep->add_option("--detuning-points", o.det_points);
    sweep->add_option("--pin-min", o.pin_min, "dBm");
    sweep->add_option("--pin-max", o.pin_max, "dBm");
    sweep->add_option("--pin-points", o.pin_points);
    sweep->add_option("--tau-fc-axis", o.tau_fc, "Free-carrier lifetimes to sweep, s");
    sweep->add_option("--tau-th-axis", o.tau_th, "Thermal times to sweep, s");
    sweep->add_option("--seeds", o.seeds, "Task seeds");

    auto* validate = app.add_subcommand("validate", "Run the analytic oracle battery");
    add_common(validate);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(o);
        if (sweep->parsed()) return cmd_sweep(o);
        return cmd_validate(o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return numerical_error;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    }
}
