// Acceptance suite: one PASS/FAIL line per criterion on stdout, heatmaps
// and timings on stderr.
//
// Criteria 8 and 9 depend on the device constants, which are a
// transcription rather than ground truth. They run at full size and report
// honestly, but only the unconditional criteria decide the exit status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ringrc/run_config.hpp"
#include "ringrc/sweep.hpp"
#include "ringrc/tasks.hpp"
#include "ringrc/validate.hpp"

using namespace ringrc;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
    bool passed = false;
    std::string detail;
};

int unconditional_failures = 0;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void report(int id, const char* name, bool conditional, const std::function<Verdict()>& body) {
    const auto start = Clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double wall = seconds_since(start);
    std::printf("%s [%2d] %-34s %s (%.2f s)%s\n", v.passed ? "PASS" : "FAIL", id, name, v.detail.c_str(), wall,
                conditional ? " [conditional on device constants]" : "");
    std::fflush(stdout);
    if (!v.passed && !conditional) ++unconditional_failures;
}

std::string csv_without_wall_time(const SweepResult& r, const SweepGrid& g) {
    std::ostringstream out;
    write_sweep_csv(out, r, g);
    std::istringstream in(out.str());
    std::string line, body;
    while (std::getline(in, line)) body += line.substr(0, line.rfind(',')) + '\n';
    return body;
}

// Ten-seed mean NMSE map over a detuning x power grid for one lifetime pair.
struct Map {
    const char* label;
    SweepGrid grid;
    SweepResult result;

    double at(std::size_t i_pin, std::size_t i_det) const {
        return result.records[i_pin * grid.detuning_ghz.size() + i_det].nmse_mean;
    }

    void print() const {
        std::fprintf(stderr, "\n%s: mean test NMSE (rows dBm, columns GHz; nan = every seed failed)\n%8s", label, "");
        for (double d : grid.detuning_ghz) std::fprintf(stderr, "%8.0f", d);
        std::fprintf(stderr, "\n");
        for (std::size_t p = 0; p < grid.pin_dbm.size(); ++p) {
            std::fprintf(stderr, "%8.1f", grid.pin_dbm[p]);
            for (std::size_t d = 0; d < grid.detuning_ghz.size(); ++d) std::fprintf(stderr, "%8.3f", at(p, d));
            std::fprintf(stderr, "\n");
        }
    }

    // Largest 4-connected set of cells with mean NMSE above the threshold.
    std::size_t largest_region_above(double threshold) const {
        const std::size_t nd = grid.detuning_ghz.size();
        const std::size_t np = grid.pin_dbm.size();
        std::vector<char> seen(nd * np, 0);
        std::size_t best = 0;
        for (std::size_t start = 0; start < nd * np; ++start) {
            if (seen[start] || !(result.records[start].nmse_mean > threshold)) continue;
            std::size_t size = 0;
            std::vector<std::size_t> stack{start};
            seen[start] = 1;
            while (!stack.empty()) {
                const std::size_t c = stack.back();
                stack.pop_back();
                ++size;
                const std::size_t p = c / nd, d = c % nd;
                const std::size_t nbr[4] = {p > 0 ? c - nd : c, p + 1 < np ? c + nd : c, d > 0 ? c - 1 : c,
                                            d + 1 < nd ? c + 1 : c};
                for (std::size_t n : nbr) {
                    if (n != c && !seen[n] && result.records[n].nmse_mean > threshold) {
                        seen[n] = 1;
                        stack.push_back(n);
                    }
                }
            }
            best = std::max(best, size);
        }
        return best;
    }

    const SweepRecord& worst() const {
        const SweepRecord* w = nullptr;
        for (const auto& r : result.records)
            if (std::isfinite(r.nmse_mean) && (!w || r.nmse_mean > w->nmse_mean)) w = &r;
        if (!w) throw Error(std::string(label) + ": every grid point failed");
        return *w;
    }
};

Map sweep_map(const char* label, double tau_fc, double tau_th, const PipelineConfig& base, unsigned workers) {
    Map m{label, SweepGrid::standard(tau_fc, tau_th), {}};
    m.grid.detuning_ghz = SweepGrid::linspace(-200.0, 200.0, 9);
    m.grid.pin_dbm = SweepGrid::linspace(-20.0, 20.0, 9);
    m.result = run_sweep(m.grid, base, workers);
    m.print();
    return m;
}

}  // namespace

int main() {
    const PipelineConfig base;  // dt = 1 ps, 100/3000/1000 symbols, 50 nodes
    const MrrParams device = base.device;
    const unsigned workers = default_workers();
    std::fprintf(stderr, "acceptance: %u worker thread(s) for sweeps\n", workers);

    report(1, "RK4 order", false, [] {
        const auto start = Clock::now();
        const OracleResult r = rk4_order_oracle(1e-12);
        const double wall = seconds_since(start);
        return Verdict{r.passed && wall < 1.0, fmt("error ratio %.3f in [12, 20], runtime %.3f s < 1 s", r.measured, wall)};
    });

    report(2, "relaxation oracles", false, [&] {
        const auto start = Clock::now();
        const OracleResult n = carrier_decay_oracle(device, device.tau_fc / 100.0, 1e-6);
        const OracleResult t = thermal_decay_oracle(device, device.tau_th / 100.0, 1e-6);
        const double wall = seconds_since(start);
        return Verdict{n.passed && t.passed && wall < 1.0,
                       fmt("carrier %.2e, thermal %.2e relative (<= 1e-6), runtime %.3f s < 1 s", n.measured,
                           t.measured, wall)};
    });

    report(3, "Lorentzian steady state", false, [&] {
        const auto start = Clock::now();
        double worst = 0.0;
        bool ok = true;
        for (double k : {-1.0, 0.0, 1.0}) {
            const OracleResult r = lorentzian_oracle(device, 1e-12, k, 5e-3);
            ok = ok && r.passed;
            worst = std::max(worst, r.measured);
        }
        const double wall = seconds_since(start);
        return Verdict{ok && wall < 5.0, fmt("worst error %.2e (<= 5e-3) at -g, 0, +g, runtime %.3f s < 5 s", worst, wall)};
    });

    report(4, "ridge oracle", false, [] {
        const auto start = Clock::now();
        const OracleResult r = ridge_oracle(100, 200, 51, 1e-10);
        const double wall = seconds_since(start);
        return Verdict{r.passed && wall < 5.0,
                       fmt("100 systems 200x51, worst %.2e relative (<= 1e-10), runtime %.3f s < 5 s", r.measured, wall)};
    });

    report(5, "NMSE definition", false, [] {
        const OracleResult r = nmse_definition_oracle();
        return Verdict{r.passed, fmt("mean predictor 1, hand case 0.2, deviation %.1e (<= 1e-12)", r.measured)};
    });

    report(6, "NARMA-10", false, [] {
        const OracleResult r = narma_fixed_point_oracle(1e-6);
        bool same = true;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const TaskDataset a = narma10(seed, 4100);
            const TaskDataset b = narma10(seed, 4100);
            same = same && a.u == b.u && a.y == b.y;
        }
        return Verdict{r.passed && same, fmt("fixed point error %.1e at step 200 (<= 1e-6), seeds 1-10 %s", r.measured,
                                             same ? "bit-identical" : "NOT reproducible")};
    });

    report(7, "determinism under parallelism", false, [&] {
        SweepGrid g = SweepGrid::standard(device.tau_fc, device.tau_th);
        g.detuning_ghz = SweepGrid::linspace(-200.0, 200.0, 5);
        g.pin_dbm = SweepGrid::linspace(-20.0, 20.0, 5);
        auto start = Clock::now();
        const SweepResult one = run_sweep(g, base, 1);
        const double t1 = seconds_since(start);
        start = Clock::now();
        const SweepResult eight = run_sweep(g, base, 8);
        const double t8 = seconds_since(start);
        const bool same = csv_without_wall_time(one, g) == csv_without_wall_time(eight, g);
        return Verdict{same && t1 + t8 < 20 * 60.0,
                       fmt("5x5 x 10 seeds, CSV bodies %s (wall_s excluded); 1 worker %.0f s, 8 workers %.0f s, < 20 min",
                           same ? "byte-identical" : "DIFFER", t1, t8)};
    });

    report(8, "low-error regime near -50 GHz/-5 dBm", true, [&] {
        // Carrier-dominated preset: tau_fc raised tenfold, tau_th = 50 ns.
        SweepGrid g = SweepGrid::standard(100e-9, 50e-9);
        g.detuning_ghz = {-75.0, -50.0, -25.0};
        g.pin_dbm = {-10.0, -5.0, 0.0};
        const SweepResult r = run_sweep(g, base, workers);
        const SweepRecord* best = nullptr;
        for (const auto& rec : r.records)
            if (std::isfinite(rec.nmse_mean) && (!best || rec.nmse_mean < best->nmse_mean)) best = &rec;
        if (!best) return Verdict{false, "every neighbourhood point failed"};
        return Verdict{best->nmse_mean < 0.05,
                       fmt("best ten-seed mean NMSE %.4f +- %.4f at %.0f GHz/%.0f dBm (tau_fc 100 ns), need < 0.05",
                           best->nmse_mean, best->nmse_stderr, best->point.detuning_ghz, best->point.pin_dbm)};
    });

    report(9, "region phenomenology", true, [&] {
        const Map thermal = sweep_map("thermal preset (tau_fc 10 ns, tau_th 500 ns)", 10e-9, 500e-9, base, workers);
        const Map carrier = sweep_map("carrier preset (tau_fc 100 ns, tau_th 50 ns)", 100e-9, 50e-9, base, workers);
        const Map baseline = sweep_map("baseline (tau_fc 10 ns, tau_th 50 ns)", 10e-9, 50e-9, base, workers);
        std::size_t region = 0;
        for (const Map* m : {&thermal, &carrier, &baseline}) region = std::max(region, m->largest_region_above(1.0));
        const double d_thermal = thermal.worst().point.detuning_ghz;
        const double d_carrier = carrier.worst().point.detuning_ghz;
        const bool flips = d_thermal < 0.0 && d_carrier > 0.0;
        return Verdict{region >= 2 && flips,
                       fmt("largest NMSE>1 region %zu cells (need >= 2); worst detuning thermal %+.0f GHz "
                           "(NMSE %.3f), carrier %+.0f GHz (NMSE %.3f), need - then +",
                           region, d_thermal, thermal.worst().nmse_mean, d_carrier, carrier.worst().nmse_mean)};
    });

    report(10, "single grid point runtime", false, [&] {
        const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        const auto start = Clock::now();
        const SweepRecord rec = evaluate_point({-50.0, -5.0, device.tau_fc, device.tau_th}, base, seeds);
        const double wall = seconds_since(start);
        // 1681 points spread over eight cores.
        const double overnight_h = wall * 41 * 41 / 8.0 / 3600.0;
        return Verdict{wall < 60.0 && rec.failed_seeds == 0 && overnight_h < 12.0,
                       fmt("10 seeds x 4100 symbols in %.1f s (< 60 s, one core); 41x41 sweep ~%.1f h on 8 cores",
                           wall, overnight_h)};
    });

    std::printf("%s: %d unconditional criterion failure(s)\n", unconditional_failures ? "FAILED" : "OK",
                unconditional_failures);
    return unconditional_failures ? 1 : 0;
}
