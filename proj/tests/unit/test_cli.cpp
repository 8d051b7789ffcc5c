#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <doctest.h>

#include "cli.hpp"
#include "dtc/io/csv.hpp"
#include "dtc/io/manifest.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "dtc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = dtc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dtc-cli-" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("simulate writes a strictly alternating trajectory") {
    const auto dir = scratch("simulate");
    const auto r = run({"simulate", "--variant", "original", "-L", "8", "--eps", "0", "--delta", "0", "--v", "0",
                        "--t2", "10", "--nf", "50", "-o", dir.string()});
    REQUIRE(r.code == dtc::cli::kOk);
    std::istringstream in(dtc::io::read_file((dir / "simulate.csv").string()));
    const auto t = dtc::io::read_trajectory(in);
    REQUIRE(t.p.size() == 51);
    for (std::size_t n = 0; n < t.p.size(); ++n) CHECK(std::abs(t.p[n] - (n % 2 ? 1.0 : -1.0)) < 1e-10);
    CHECK(fs::exists(dir / "simulate.svg"));
    CHECK(dtc::io::verify_manifest((dir / "simulate.manifest.json").string()).ok);
    CHECK(run({"verify", (dir / "simulate.manifest.json").string()}).code == 0);
  }

  TEST_CASE("exit codes") {
    const auto dir = scratch("codes");
    CHECK(run({"simulate", "--variant", "sideways", "-o", dir.string()}).code == dtc::cli::kConfigError);
    CHECK(run({"simulate", "-L", "40", "-o", dir.string()}).code == dtc::cli::kConfigError);
    CHECK(run({"simulate", "--nf", "0", "-o", dir.string()}).code == dtc::cli::kConfigError);
    CHECK(run({"bogus"}).code == dtc::cli::kConfigError);
    CHECK(run({"dissipative", "-L", "2", "--gamma", "0.01", "-o", dir.string()}).code == dtc::cli::kConfigError);
    // four envelope points are too few to fit
    CHECK(run({"dissipative", "-L", "1", "--gamma", "1kHz", "--nf", "10", "--fit-start", "4", "-o", dir.string()})
              .code == dtc::cli::kNumericError);
    CHECK(run({"--help"}).code == dtc::cli::kOk);
  }

  TEST_CASE("config file with flags winning") {
    const auto dir = scratch("config");
    fs::create_directories(dir);
    dtc::io::write_file((dir / "cfg.json").string(),
                        R"({"params": {"L": 3, "epsilon": "0.1MHz", "v": 0.0}, "nf": 40})");
    const auto r = run({"simulate", "--config", (dir / "cfg.json").string(), "--nf", "20", "-o", dir.string()});
    REQUIRE(r.code == 0);
    std::istringstream in(dtc::io::read_file((dir / "simulate.csv").string()));
    const auto t = dtc::io::read_trajectory(in);
    CHECK(t.n_f == 20);
    CHECK(t.params.atoms == 3);
    CHECK(t.params.epsilon == 0.1);
  }

  TEST_CASE("output directory from the environment") {
    const auto dir = scratch("env");
    ::setenv("DTC_OUTPUT_DIR", dir.string().c_str(), 1);
    const auto r = run({"simulate", "-L", "2", "--nf", "4", "--no-svg"});
    ::unsetenv("DTC_OUTPUT_DIR");
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "simulate.csv"));
    CHECK_FALSE(fs::exists(dir / "simulate.svg"));
  }

  TEST_CASE("scan output is byte-identical across thread counts") {
    const auto a = scratch("scan-a");
    const auto b = scratch("scan-b");
    const std::vector<std::string> common = {"scan", "-L", "4", "--eps", "0.2", "--v", "0.1", "--t2", "15",
                                             "--axis", "delta", "--grid", "-0.3:0.3:0.1", "--budget", "300",
                                             "--deterministic"};
    auto args_a = common;
    args_a.insert(args_a.end(), {"--threads", "1", "-o", a.string()});
    auto args_b = common;
    args_b.insert(args_b.end(), {"--threads", "3", "-o", b.string()});
    REQUIRE(run(args_a).code == 0);
    REQUIRE(run(args_b).code == 0);
    for (const char* f : {"scan.csv", "scan.svg", "scan.json"}) {
      CHECK(dtc::io::read_file((a / f).string()) == dtc::io::read_file((b / f).string()));
    }
  }

  TEST_CASE("spectrum, phase diagram and oracle commands") {
    const auto dir = scratch("misc");
    const auto s = run({"spectrum", "-L", "1", "--eps", "0", "--nf", "64", "-o", dir.string()});
    CHECK(s.code == 0);
    CHECK(s.out.find("peak nu=0.5") != std::string::npos);
    const auto p = run({"phase-diagram", "--variant", "simplified", "--v", "0.1", "--eps-grid", "-0.2:0.2:0.2",
                        "--L", "2:4", "--budget", "200", "-o", dir.string()});
    CHECK(p.code == 0);
    std::istringstream in(dtc::io::read_file((dir / "phase-diagram.csv").string()));
    CHECK(dtc::io::read_phase(in).size() == 6);
    const auto o = run({"oracle-check", "--draws", "3", "--seed", "1", "-o", dir.string()});
    CHECK((o.code == dtc::cli::kOk || o.code == dtc::cli::kCheckFailed));
    CHECK(o.out.find("/3 matched") != std::string::npos);
  }
}
