#include "ringrc/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "ringrc/units.hpp"

#ifndef RINGRC_VERSION
#define RINGRC_VERSION "0.0.0"
#endif

namespace ringrc {

namespace {

void require_monotone(const std::vector<double>& axis, const char* name) {
    if (axis.empty()) throw ConfigError(std::string("sweep axis '") + name + "' is empty");
    for (double v : axis)
        if (!std::isfinite(v)) throw ConfigError(std::string("sweep axis '") + name + "' has a non-finite value");
    bool increasing = true;
    bool decreasing = true;
    for (std::size_t i = 1; i < axis.size(); ++i) {
        increasing = increasing && axis[i] > axis[i - 1];
        decreasing = decreasing && axis[i] < axis[i - 1];
    }
    if (!increasing && !decreasing) {
        throw ConfigError(std::string("sweep axis '") + name + "' must be strictly monotone");
    }
}

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

const char* code_version() { return RINGRC_VERSION; }

std::vector<double> SweepGrid::linspace(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return out;
}

SweepGrid SweepGrid::standard(double tau_fc, double tau_th) {
    SweepGrid g;
    g.detuning_ghz = linspace(-200.0, 200.0, 41);
    g.pin_dbm = linspace(-20.0, 20.0, 41);
    g.tau_fc = {tau_fc};
    g.tau_th = {tau_th};
    for (std::uint64_t s = 1; s <= 10; ++s) g.seeds.push_back(s);
    return g;
}

void SweepGrid::validate() const {
    require_monotone(detuning_ghz, "detuning_ghz");
    require_monotone(pin_dbm, "pin_dbm");
    require_monotone(tau_fc, "tau_fc");
    require_monotone(tau_th, "tau_th");
    for (double t : tau_fc)
        if (!(t > 0.0)) throw ConfigError("sweep tau_fc values must be positive");
    for (double t : tau_th)
        if (!(t > 0.0)) throw ConfigError("sweep tau_th values must be positive");
    if (seeds.empty()) throw ConfigError("sweep needs at least one seed");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
        throw ConfigError("sweep seeds must be distinct");
    }
}

GridPoint SweepGrid::point(std::size_t index) const {
    GridPoint p;
    p.detuning_ghz = detuning_ghz[index % detuning_ghz.size()];
    index /= detuning_ghz.size();
    p.pin_dbm = pin_dbm[index % pin_dbm.size()];
    index /= pin_dbm.size();
    p.tau_th = tau_th[index % tau_th.size()];
    index /= tau_th.size();
    p.tau_fc = tau_fc[index];
    return p;
}

PipelineConfig configure_point(const GridPoint& point, const PipelineConfig& base) {
    PipelineConfig cfg = base;
    cfg.device.delta_omega = ghz_to_angular(point.detuning_ghz);
    cfg.device.tau_fc = point.tau_fc;
    cfg.device.tau_th = point.tau_th;
    cfg.tdrc.p_in_avg = dbm_to_watt(point.pin_dbm);
    return cfg;
}

SweepRecord evaluate_point(const GridPoint& point, const PipelineConfig& base, std::span<const std::uint64_t> seeds) {
    const auto start = std::chrono::steady_clock::now();
    const PipelineConfig cfg = configure_point(point, base);
    cfg.validate();

    SweepRecord rec;
    rec.point = point;
    double sum = 0.0;
    std::vector<double> good;
    for (std::uint64_t seed : seeds) {
        SeedOutcome out;
        out.seed = seed;
        try {
            const PipelineRun run = run_pipeline(cfg, seed);
            out.ok = true;
            out.train_nmse = run.train_nmse;
            out.test_nmse = run.test_nmse;
            out.lambda = run.model.lambda;
            rec.modulation_index = run.modulation_index;
            good.push_back(run.test_nmse);
            sum += run.test_nmse;
        } catch (const Error& e) {
            out.error = e.what();
            ++rec.failed_seeds;
        }
        rec.seeds.push_back(std::move(out));
    }

    if (good.empty()) {
        rec.nmse_mean = rec.nmse_std = rec.nmse_stderr = NAN;
    } else {
        rec.nmse_mean = sum / double(good.size());
        double ss = 0.0;
        for (double v : good) ss += (v - rec.nmse_mean) * (v - rec.nmse_mean);
        rec.nmse_std = good.size() > 1 ? std::sqrt(ss / double(good.size() - 1)) : 0.0;
        rec.nmse_stderr = rec.nmse_std / std::sqrt(double(good.size()));
    }
    rec.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

SweepResult run_sweep(const SweepGrid& grid, const PipelineConfig& base, unsigned workers, const ProgressFn& progress) {
    grid.validate();
    base.validate();
    workers = std::max(1u, workers);

    SweepResult result;
    const std::string started = utc_now();
    const std::size_t total = grid.size();
    result.records.resize(total);

    std::atomic<std::size_t> next{0};
    std::size_t done = 0;
    std::mutex progress_mutex;

    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            SweepRecord rec = evaluate_point(grid.point(i), base, grid.seeds);
            rec.index = i;
            result.records[i] = std::move(rec);
            std::lock_guard lock(progress_mutex);
            ++done;
            if (progress) progress(done, total, result.records[i]);
        }
    };

    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < std::min<std::size_t>(workers, total); ++w) pool.emplace_back(work);
        work();
    }

    for (const auto& r : result.records)
        if (r.failed()) ++result.failed_points;

    const auto config = config_echo(grid, base);
    result.manifest["manifest_hash"] = manifest_hash(config);
    result.manifest["code_version"] = code_version();
    result.manifest["started_utc"] = started;
    result.manifest["finished_utc"] = utc_now();
    result.manifest["workers"] = workers;
    result.manifest["points"] = total;
    result.manifest["failed_points"] = result.failed_points;
    result.manifest["config"] = config;
    return result;
}

nlohmann::ordered_json config_echo(const PipelineConfig& c) {
    nlohmann::ordered_json j;
    const MrrParams& d = c.device;
    j["device"] = {{"omega_p", d.omega_p},
                   {"delta_omega", d.delta_omega},
                   {"tau_c", d.tau_c},
                   {"alpha", d.alpha},
                   {"tau_fc", d.tau_fc},
                   {"tau_th", d.tau_th},
                   {"n_si", d.n_si},
                   {"dn_dN", d.dn_dN},
                   {"dn_dT", d.dn_dT},
                   {"beta_tpa", d.beta_tpa},
                   {"sigma_fca", d.sigma_fca},
                   {"c_p", d.c_p},
                   {"mass", d.mass},
                   {"gamma_fca_conf", d.gamma_fca_conf},
                   {"gamma_tpa_conf", d.gamma_tpa_conf},
                   {"gamma_th_conf", d.gamma_th_conf},
                   {"v_fca", d.v_fca},
                   {"v_tpa", d.v_tpa},
                   {"absorption_fraction", d.absorption_fraction}};
    j["tdrc"] = {{"n_nodes", c.tdrc.n_nodes},
                 {"chip_duration", c.tdrc.chip_duration},
                 {"symbol_duration", c.tdrc.symbol_duration},
                 {"bias_beta", c.tdrc.bias_beta},
                 {"p_in_avg", c.tdrc.p_in_avg},
                 {"mask_seed", c.tdrc.mask_seed},
                 {"encoding", c.tdrc.encoding == Encoding::power ? "power" : "field"}};
    j["feedback"] = {{"delay", c.feedback.delay}, {"phase", c.feedback.phase}, {"gain", c.feedback.gain}};
    j["integrator"] = {{"dt", c.integrator.dt}, {"record_stride", c.integrator.record_stride}};
    j["task"] = {{"warmup", c.task.warmup}, {"train", c.task.train}, {"test", c.task.test}};
    j["readout"] = {{"lambda", c.readout.lambda},
                    {"search", c.readout.search},
                    {"grid", c.readout.grid},
                    {"validation_fraction", c.readout.validation_fraction}};
    return j;
}

nlohmann::ordered_json config_echo(const SweepGrid& grid, const PipelineConfig& base) {
    nlohmann::ordered_json j = config_echo(base);
    j["sweep"] = {{"detuning_ghz", grid.detuning_ghz},
                  {"pin_dbm", grid.pin_dbm},
                  {"tau_fc", grid.tau_fc},
                  {"tau_th", grid.tau_th},
                  {"seeds", grid.seeds}};
    return j;
}

std::string manifest_hash(const nlohmann::ordered_json& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, const SweepGrid& grid) {
    out << "# manifest_hash=" << result.manifest.value("manifest_hash", std::string{}) << '\n';
    out << "detuning_ghz,pin_dbm,tau_fc_s,tau_th_s,seed_count,nmse_mean,nmse_std";
    for (std::size_t s = 0; s < grid.seeds.size(); ++s) out << ",nmse_seed_" << s;
    out << ",failed_seeds,mod_index,wall_s\n";
    out.precision(17);
    for (const auto& r : result.records) {
        out << r.point.detuning_ghz << ',' << r.point.pin_dbm << ',' << r.point.tau_fc << ',' << r.point.tau_th << ','
            << r.seeds.size() - r.failed_seeds << ',' << r.nmse_mean << ',' << r.nmse_std;
        for (const auto& s : r.seeds) {
            out << ',';
            if (s.ok) out << s.test_nmse;
            else out << "nan";
        }
        out << ',' << r.failed_seeds << ',' << r.modulation_index << ',' << r.wall_s << '\n';
    }
}

}  // namespace ringrc
