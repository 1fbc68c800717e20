#include "aigw/cli.hpp"
#include "aigw/io.hpp"
#include "aigw/simd/kernels.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

using namespace aigw;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("aigw_cli_" + std::to_string(std::random_device{}()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string &name) const { return (path / name).string(); }
};

// Rows of a CSV body, skipping comments and the header.
std::vector<std::vector<double>> rows(const std::string &csv) {
  std::vector<std::vector<double>> out;
  std::istringstream in(csv);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    if (!header) {
      header = true;
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ','))
      row.push_back(std::stod(cell));
    out.push_back(row);
  }
  return out;
}

} // namespace

TEST_CASE("requirements for the single loop list the reference tolerances") {
  const auto r = run({"requirements", "--geometry", "sl"});
  REQUIRE(r.code == 0);
  for (const char *v : {"4.328e-10", "1.665e-09", "5.646e-12"})
    CHECK(r.out.find(v) != std::string::npos);

  const auto j = run({"requirements", "--geometry", "sl", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["schema_version"] == 1);
  for (const auto &e : doc["entries"])
    if (e["name"] == "sl.sagnac_velocity")
      CHECK(e["tolerance"].get<double>() == doctest::Approx(5.6e-12).epsilon(0.05));
}

TEST_CASE("response below band rolls off") {
  const auto r = run({"response", "--geometry", "ftl", "--f", "1e-6", "--f", "1e-5"});
  REQUIRE(r.code == 0);
  const auto data = rows(r.out);
  REQUIRE(data.size() == 2);
  CHECK(data[0][1] < 1e-8);
  CHECK(data[1][1] / data[0][1] == doctest::Approx(1e4).epsilon(1e-6));
}

TEST_CASE("interleaved sensitivity with defaults") {
  const auto r = run({"sensitivity", "--interleave", "--f-min", "0.3", "--f-max", "5"});
  REQUIRE(r.code == 0);
  double lo = INFINITY;
  for (const auto &row : rows(r.out)) {
    CHECK(std::isfinite(row.back()));
    lo = std::min(lo, row.back());
  }
  CHECK(lo > 5e-22);
  CHECK(lo < 5e-21);
}

TEST_CASE("default sensitivity grid is truncated at Nyquist") {
  const auto r = run({"sensitivity"});
  REQUIRE(r.code == 0);
  const auto data = rows(r.out);
  CHECK(data.front()[0] == doctest::Approx(0.01));
  CHECK(data.back()[0] <= 5.0);
  CHECK(data.size() < 2000);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::usage_error);
  CHECK(run({"frobnicate"}).code == cli::usage_error);
  CHECK(run({"response", "--nope"}).code == cli::usage_error);
  CHECK(run({"response", "--geometry", "mz"}).code == cli::usage_error);
  CHECK(run({"response", "--f-min", "2", "--f-max", "1"}).code == cli::validation_error);
  CHECK(run({"response", "--points", "1"}).code == cli::validation_error);
  CHECK(run({"response", "--config", "/nonexistent/aigw.cfg"}).code == cli::io_error);
  CHECK(run({"response", "--output", "/nonexistent/dir/out.csv"}).code == cli::io_error);
  CHECK(run({"sensitivity", "--f-min", "6", "--f-max", "9"}).code == cli::validation_error);

  TempDir dir;
  io::write_text(dir / "bad.cfg", "arm_length_m = -1\nfoo = 2\n");
  const auto bad = run({"requirements", "--config", dir / "bad.cfg"});
  CHECK(bad.code == cli::validation_error);
  CHECK(bad.err.find("arm_length_m") != std::string::npos);
  CHECK(bad.err.find("foo") != std::string::npos);

  io::write_text(dir / "iso.csv", "# units: strain_per_rtHz\nfrequency_hz,asd\n0.001,1\n100,1\n");
  CHECK(run({"sensitivity", "--isolation", dir / "iso.csv"}).code == cli::validation_error);
}

TEST_CASE("help documents units") {
  for (const char *sub : {"response", "sensitivity", "budget", "requirements", "trajectory", "resonant"}) {
    const auto r = run({sub, "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--config") != std::string::npos);
    CHECK(r.out.find("[s]") != std::string::npos);
  }
  CHECK(run({"response", "--help"}).out.find("[Hz]") != std::string::npos);
}

TEST_CASE("budget subcommand") {
  TempDir dir;
  io::write_text(dir / "off.txt", "position_m = 4.3e-10\n");
  const auto r = run({"budget", "--geometry", "sl", "--offsets", dir / "off.txt"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("sl.gravity_gradient_position,dy,4.3000000000000001e-10,m,9.93") != std::string::npos);
  CHECK(run({"budget"}).code == cli::usage_error);
  CHECK(run({"budget", "--offsets", dir / "missing.txt"}).code == cli::io_error);
}

TEST_CASE("trajectory subcommand") {
  const auto r = run({"trajectory", "--tilt2", "1e-9", "--dtau2", "1e-8", "--samples", "11"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# timing_error_phase_rad: 1.28") != std::string::npos);
  CHECK(r.out.find("# trajectory_phase_rad: 1.28") != std::string::npos);
  CHECK(rows(r.out).size() == 11);
}

TEST_CASE("resonant subcommand") {
  TempDir dir;
  const auto r = run({"resonant", "--loops", "3", "--f-min", "0.3", "--f-max", "5", "--output", dir / "res.csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("resonance_frequency_hz = 1.25") != std::string::npos);
  const auto text = io::read_text(dir / "res.csv");
  CHECK(text.find("# resonance_frequency_hz: 1.25") != std::string::npos);
  CHECK(io::parse_curve(text, "res").label() == "resonant_n3");
}

TEST_CASE("sensitivity with mirror, Newtonian and overlay curves") {
  TempDir dir;
  io::write_text(dir / "iso.csv", "# units: m_per_rtHz\nfrequency_hz,asd\n0.001,1e-10\n100,1e-22\n");
  io::write_text(dir / "nn.csv", "# units: strain_per_rtHz\nfrequency_hz,asd\n0.001,1e-15\n100,1e-25\n");
  io::write_text(dir / "sig.csv", "# units: strain_per_rtHz\n# label: signal\nfrequency_hz,asd\n0.1,1e-20\n1,1e-21\n");
  const std::vector<std::string> base{"sensitivity", "--isolation", dir / "iso.csv", "--overlay", dir / "sig.csv",
                                      "--reproducible"};
  auto args = base;
  args.insert(args.end(), {"--newtonian", dir / "nn.csv", "--output", dir / "full.csv"});
  REQUIRE(run(args).code == 0);
  const auto text = io::read_text(dir / "full.csv");
  CHECK(text.find("frequency_hz,intrinsic_folded_triple_loop,mirror_vibration,newtonian,total") != std::string::npos);
  CHECK(io::read_curve(dir / "full.csv.overlay1.csv") == io::read_curve(dir / "sig.csv"));
  const auto meta = nlohmann::json::parse(io::read_text(dir / "full.csv.json"));
  CHECK(meta["timestamp"] == "1970-01-01T00:00:00Z");
  CHECK(meta["omissions"].empty());

  args = base;
  args.insert(args.end(), {"--newtonian", dir / "absent.csv", "--output", dir / "partial.csv"});
  const auto r = run(args);
  REQUIRE(r.code == 0);
  CHECK(r.err.find("omitted") != std::string::npos);
  const auto meta2 = nlohmann::json::parse(io::read_text(dir / "partial.csv.json"));
  CHECK(meta2["omissions"].size() == 1);
  CHECK(io::read_text(dir / "partial.csv").find("newtonian") == std::string::npos);
}

TEST_CASE("scalar and wide kernels give the same sensitivity to 1e-12") {
  const auto before = simd::active();
  const auto a = rows(run({"sensitivity", "--interleave", "--isa", "scalar"}).out);
  const auto b = rows(run({"sensitivity", "--interleave"}).out);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].back() == doctest::Approx(b[i].back()).epsilon(1e-12));
  CHECK(simd::active() == before);
}
