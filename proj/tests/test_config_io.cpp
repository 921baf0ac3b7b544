#include <unistd.h>

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>

#include "catch_amalgamated.hpp"
#include "support.hpp"
#include "thermo/config.hpp"
#include "thermo/error.hpp"
#include "thermo/io.hpp"

using namespace thermo;
namespace fs = std::filesystem;
using thermo::testing::random_config;
using thermo::testing::random_records;
using thermo::testing::random_snapshot;
using thermo::testing::same_bits;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("thermo-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("parse a partial config", "[config]") {
  const auto c = parse_config("mu = 0.5\nd = 2\nn = 32\n");
  CHECK(c.mu == 0.5);
  CHECK(c.scenario.d == 2);
  CHECK(c.scenario.n == 32);
  RunConfig defaults;
  defaults.mu = 0.5;
  CHECK(c == defaults);

  const auto commented = parse_config("# header\n\n  dt = 2e-3   # smaller\nscenario = lame-mixed\ndealias = false\n");
  CHECK(commented.stepper.dt == 2e-3);
  CHECK(!commented.stepper.dealias);
  CHECK(commented.model_params().kind == OperatorKind::Lame);
  CHECK(parse_config("") == RunConfig{});
}

TEST_CASE("config errors carry line numbers", "[config]") {
  CHECK(error_line("mu = -1\n") == 1);
  CHECK_THROWS_WITH(parse_config("mu = -1"), Catch::Matchers::ContainsSubstring("mu must be > 0"));
  CHECK(error_line("d = 2\nnot_a_key = 3\n") == 2);
  CHECK(error_line("d = 2\n\nd = 3\n") == 3);
  CHECK(error_line("n = 7\n") == 1);
  CHECK(error_line("n = 32.5\n") == 1);
  CHECK(error_line("dt = fast\n") == 1);
  CHECK(error_line("dealias = maybe\n") == 1);
  CHECK(error_line("mu = 1\njust words\n") == 2);
  CHECK(error_line("scenario = tornado\n") == 1);
  CHECK(error_line("operator = cubic\n") == 1);
  // Cross-key constraint: reported at the last line read.
  CHECK(error_line("epsilon = 2\ntheta_baseline = 1\n") == 2);
  CHECK(error_line("scenario = lame-mixed\nzeta = 1\nlambda = -1\n") == 3);
}

TEST_CASE("config round trip", "[config]") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const auto c = random_config(rng);
    REQUIRE_NOTHROW(c.validate());
    const auto text = serialize_config(c);
    const auto back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize_config(back) == text);
  }
  CHECK(config_keys().size() == 25);
}

TEST_CASE("overrides and micro step default", "[config]") {
  RunConfig c;
  apply_setting(c, "t_end", "3.5");
  CHECK(c.stepper.t_end == 3.5);
  CHECK_THROWS_AS(apply_setting(c, "bogus", "1"), ConfigError);
  c.stepper.dt = 4e-3;
  CHECK(c.recorder_options().dt_micro == Catch::Approx(4e-4));
  c.dt_micro = 1e-5;
  CHECK(c.recorder_options().dt_micro == 1e-5);
}

TEST_CASE("time series", "[io]") {
  const std::vector<DiagnosticsRecord> none;
  const auto header = format_timeseries(none);
  CHECK(std::count(header.begin(), header.end(), '\n') == 1);
  CHECK(header.rfind("t,energy,", 0) == 0);
  CHECK(parse_timeseries(header).empty());

  std::mt19937_64 rng(7);
  const auto one = random_records(rng, 1);
  const auto text = format_timeseries(one);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.find('\r') == std::string::npos);
  const auto back = parse_timeseries(text);
  REQUIRE(back.size() == 1);
  CHECK(same_bits(back[0], one[0]));

  std::vector<DiagnosticsRecord> many(1000);
  for (std::size_t i = 0; i < many.size(); ++i) many[i].t = 1e-3 * static_cast<double>(i);
  many[5].fisher_identity_residual = std::nan("");
  const auto dir = scratch_dir("csv");
  const auto path = (dir / "series.csv").string();
  write_timeseries(many, path);
  const auto read = read_timeseries(path);
  REQUIRE(read.size() == 1000);
  for (std::size_t i = 1; i < read.size(); ++i) CHECK(read[i].t > read[i - 1].t);
  CHECK(std::isnan(read[5].fisher_identity_residual));
  fs::remove_all(dir);

  CHECK_THROWS_AS(parse_timeseries("t,energy\n1,2\n"), FormatError);
  CHECK_THROWS_AS(parse_timeseries(header + "1,2,3\n"), FormatError);
  CHECK_THROWS_AS(read_timeseries("/nonexistent/x.csv"), IoError);
}

TEST_CASE("time series round trip on random records", "[io]") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto recs = random_records(rng, 3);
    const auto back = parse_timeseries(format_timeseries(recs));
    REQUIRE(back.size() == recs.size());
    for (std::size_t r = 0; r < recs.size(); ++r) CHECK(same_bits(back[r], recs[r]));
  }
}

TEST_CASE("snapshot layout", "[io]") {
  auto g = make_uniform_grid(2, 8);
  const auto f = ScalarField::from_function(g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });
  const auto bytes = encode_snapshot(make_snapshot(f, 0.25));
  const auto nl = bytes.find('\n');
  CHECK(bytes.substr(0, 6) == "TEFLD1");
  CHECK(bytes.substr(6, nl - 6) == "d=2 n=8,8 len=6.2831853071795862,6.2831853071795862 t=0.25 kind=scalar comps=1");
  CHECK(bytes.size() == nl + 1 + 512);

  const VectorField v(g, 1.0);
  const auto vb = encode_snapshot(make_snapshot(v));
  CHECK(vb.size() - vb.find('\n') - 1 == 1024);

  // Little-endian payload: the first value of a unit field is 0x3FF0000000000000.
  const unsigned char expect[8] = {0, 0, 0, 0, 0, 0, 0xF0, 0x3F};
  CHECK(std::memcmp(vb.data() + vb.find('\n') + 1, expect, 8) == 0);

  const auto snap = decode_snapshot(bytes);
  CHECK(snap.t == 0.25);
  CHECK(thermo::testing::max_diff(snap.to_scalar(g), f) == 0.0);
  CHECK_THROWS_AS(snap.to_vector(g), GridMismatch);
  CHECK_THROWS_AS(snap.to_scalar(make_uniform_grid(2, 16)), GridMismatch);
  CHECK_THROWS_AS(snap.to_scalar(make_uniform_grid(2, 8, 1.0)), GridMismatch);
}

TEST_CASE("snapshot errors", "[io]") {
  auto g = make_uniform_grid(2, 8);
  const auto bytes = encode_snapshot(make_snapshot(ScalarField(g, 2.0)));
  CHECK_THROWS_AS(decode_snapshot("TEFLD2" + bytes.substr(6)), FormatError);
  CHECK_THROWS_AS(decode_snapshot(bytes.substr(0, bytes.size() - 8)), FormatError);
  CHECK_THROWS_AS(decode_snapshot(bytes + "x"), FormatError);
  CHECK_THROWS_AS(decode_snapshot("TEFLD1d=2 n=8,8"), FormatError);
  CHECK_THROWS_AS(decode_snapshot("TEFLD1d=2 n=8,8 len=1,1 t=0 kind=tensor comps=1\n"), FormatError);
  CHECK_THROWS_AS(read_snapshot("/nonexistent/f.tefld"), IoError);
}

TEST_CASE("snapshot round trip on random fields", "[io]") {
  std::mt19937_64 rng(31);
  const auto dir = scratch_dir("snap");
  for (int i = 0; i < 100; ++i) {
    const auto s = random_snapshot(rng);
    const auto bytes = encode_snapshot(s);
    CHECK(same_bits(decode_snapshot(bytes), s));
    CHECK(encode_snapshot(decode_snapshot(bytes)) == bytes);
    if (i % 10 == 0) {
      const auto path = (dir / ("s" + std::to_string(i) + ".tefld")).string();
      write_snapshot(s, path);
      CHECK(same_bits(read_snapshot(path), s));
    }
  }
  // Atomic writes leave no temporaries behind.
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() == ".tefld");
  fs::remove_all(dir);
}

TEST_CASE("field snapshots", "[io]") {
  std::mt19937_64 rng(4);
  auto g = make_uniform_grid(3, 8, 3.0);
  const auto v = thermo::testing::random_vector_field(g, rng, 2);
  const auto dir = scratch_dir("field");
  const auto path = (dir / "v.tefld").string();
  write_snapshot(v, path, 1.5);
  const auto s = read_snapshot(path);
  CHECK(s.vector);
  CHECK(s.t == 1.5);
  CHECK(thermo::testing::max_diff(s.to_vector(g), v) == 0.0);
  CHECK(same_grid(*s.make_grid(), *g));
  fs::remove_all(dir);
}
