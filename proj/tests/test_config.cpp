#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "ringrc/device.hpp"
#include "ringrc/errors.hpp"
#include "ringrc/kv_config.hpp"
#include "ringrc/run_config.hpp"

using namespace ringrc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("ringrc_cfg_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return path / name;
    }
};

}  // namespace

TEST_CASE("key-value parsing") {
    const auto f = KeyValueFile::parse(R"(
top = 3   # trailing comment
name = "a # not a comment"

[device]
tau_c = 20e-12
flag = true
list = [1, 2.5, -3e-9]
big = 1_000
)");
    CHECK(f.number("top") == 3.0);
    CHECK(f.string("name", "") == "a # not a comment");
    CHECK(f.number("device.tau_c") == 20e-12);
    CHECK(f.boolean("device.flag", false));
    CHECK(f.numbers("device.list", {}) == std::vector<double>{1.0, 2.5, -3e-9});
    CHECK(f.integer("device.big", 0) == 1000);
    CHECK(f.number("device.missing", 7.0) == 7.0);
    CHECK_FALSE(f.contains("tau_c"));
}

TEST_CASE("key-value errors name the line") {
    CHECK_THROWS_WITH_AS(KeyValueFile::parse("a = 1\nb 2\n", "x.toml"), doctest::Contains("x.toml:2"), ConfigError);
    CHECK_THROWS_AS(KeyValueFile::parse("[sec\n"), ConfigError);
    CHECK_THROWS_AS(KeyValueFile::parse("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(KeyValueFile::parse("a = [1, x]\n"), ConfigError);
    CHECK_THROWS_AS(KeyValueFile::parse("a = \"open\n"), ConfigError);
    CHECK_THROWS_AS(KeyValueFile::parse("a = 1.5.2\n"), ConfigError);
    const auto f = KeyValueFile::parse("a = \"s\"\nb = 1.5\n");
    CHECK_THROWS_AS(f.number("a"), ConfigError);
    CHECK_THROWS_AS(f.integer("b", 0), ConfigError);
    CHECK_THROWS_AS(f.number("nope"), ConfigError);
}

TEST_CASE("device file round trip") {
    MrrParams p;
    p.tau_c = 15e-12;
    p.delta_omega = -3e11;
    p.absorption_fraction = 0.4;
    const MrrParams q = device_from(KeyValueFile::parse(device_to_toml(p)));
    CHECK(q.tau_c == p.tau_c);
    CHECK(q.delta_omega == p.delta_omega);
    CHECK(q.absorption_fraction == p.absorption_fraction);
    CHECK(q.mass == p.mass);
    CHECK(q.dn_dN == p.dn_dN);
}

TEST_CASE("shipped device file") {
    const MrrParams p = load_device(fs::path(RINGRC_SOURCE_DIR) / "config/device.toml");
    const MrrParams defaults;
    CHECK(p.n_si == defaults.n_si);
    CHECK(p.tau_c == defaults.tau_c);
    CHECK(p.tau_fc == defaults.tau_fc);
    CHECK(p.tau_th == defaults.tau_th);
    CHECK(p.omega_p == doctest::Approx(defaults.omega_p).epsilon(1e-12));
}

TEST_CASE("device file requires every physical key") {
    std::string text = device_to_toml(MrrParams{});
    const auto pos = text.find("mass");
    text.erase(pos, text.find('\n', pos) - pos);
    CHECK_THROWS_WITH_AS(device_from(KeyValueFile::parse(text)), doctest::Contains("mass"), ConfigError);

    std::string bad = device_to_toml(MrrParams{});
    const auto tau = bad.find("tau_fc = ");
    bad.replace(tau, bad.find('\n', tau) - tau, "tau_fc = -1");
    CHECK_THROWS_WITH_AS(device_from(KeyValueFile::parse(bad)), doctest::Contains("tau_fc"), ConfigError);
}

TEST_CASE("run configuration") {
    TempDir dir;
    dir.write("dev.toml", device_to_toml(MrrParams{}));

    SUBCASE("defaults and ranges") {
        const auto path = dir.write("run.toml", R"(
device_file = "dev.toml"
workers = 3
[sweep]
detuning_ghz_min = -10
detuning_ghz_max = 10
detuning_ghz_points = 5
pin_dbm = [0, 5]
seeds = [4, 9]
)");
        const RunConfig rc = load_run_config(path);
        CHECK(rc.workers == 3);
        CHECK(rc.grid.detuning_ghz == std::vector<double>{-10, -5, 0, 5, 10});
        CHECK(rc.grid.pin_dbm == std::vector<double>{0, 5});
        CHECK(rc.grid.seeds == std::vector<std::uint64_t>{4, 9});
        CHECK(rc.pipeline.task.train == 3000);
        CHECK(rc.device_file == dir.path / "dev.toml");
    }
    SUBCASE("missing device file names the path") {
        const auto path = dir.write("run.toml", "device_file = \"nowhere.toml\"\n");
        CHECK_THROWS_WITH_AS(load_run_config(path), doctest::Contains("nowhere.toml"), ConfigError);
    }
    SUBCASE("invalid values fail before any computation") {
        const auto path = dir.write("run.toml", "device_file = \"dev.toml\"\n[tdrc]\nn_nodes = 40\n");
        CHECK_THROWS_AS(load_run_config(path), ConfigError);
        const auto enc = dir.write("run2.toml", "device_file = \"dev.toml\"\n[tdrc]\nencoding = \"phase\"\n");
        CHECK_THROWS_AS(load_run_config(enc), ConfigError);
        const auto axis = dir.write("run3.toml", "device_file = \"dev.toml\"\n[sweep]\npin_dbm = [1, 1]\n");
        CHECK_THROWS_AS(load_run_config(axis), ConfigError);
    }
    SUBCASE("shipped run file") {
        const RunConfig rc = load_run_config(fs::path(RINGRC_SOURCE_DIR) / "config/run.toml");
        CHECK(rc.grid.size() == 41 * 41);
        CHECK(rc.grid.seeds.size() == 10);
        CHECK(rc.detuning_ghz == -50.0);
        CHECK(rc.pin_dbm == -5.0);
    }
}

TEST_CASE("worker count from the environment") {
    ::setenv("RING_RC_THREADS", "6", 1);
    CHECK(default_workers() == 6);
    ::setenv("RING_RC_THREADS", "zero", 1);
    CHECK_THROWS_AS(default_workers(), ConfigError);
    ::unsetenv("RING_RC_THREADS");
    CHECK(default_workers() >= 1);
}
