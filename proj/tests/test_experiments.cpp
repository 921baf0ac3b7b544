#include <unistd.h>

#include <filesystem>
#include <string>

#include "catch_amalgamated.hpp"
#include "thermo/error.hpp"
#include "thermo/experiments.hpp"
#include "thermo/io.hpp"

using namespace thermo;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("thermo-exp-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("experiment catalogue", "[experiments]") {
  CHECK(experiment_names().size() == 6);
  for (const auto& n : experiment_names()) CHECK_NOTHROW(experiment_config(n).validate());
  CHECK(experiment_config("attractor").stepper.t_end == 50.0);
  CHECK(experiment_config("lame-asymptotics").model_params().kind == OperatorKind::Lame);
  CHECK(experiment_config("oscillation").scenario.name == "small-div-free");
  CHECK_THROWS_AS(experiment_config("nope"), InvalidArgument);
  CHECK_THROWS_AS(run_experiment("bounds", {{"no_such_key", "1"}}), ConfigError);
}

TEST_CASE("amplitude for a smallness budget", "[experiments]") {
  ScenarioSpec spec;
  const auto p = ModelParams::laplacian(1.0);
  const double eps = epsilon_for_smallness(spec, p, 1e-2);
  spec.epsilon = eps;
  CHECK(make_scenario(spec, p).smallness <= 1e-2);
  spec.epsilon = eps * 1.001;
  CHECK(make_scenario(spec, p).smallness > 1e-2);
  // A budget above every admissible amplitude returns the cap.
  CHECK(epsilon_for_smallness(spec, p, 1e9) == Catch::Approx(0.999));
}

TEST_CASE("simulate and artifacts", "[experiments]") {
  RunConfig cfg;
  cfg.scenario.n = 16;
  cfg.stepper.t_end = 0.05;
  cfg.stepper.dt = 1e-2;
  const auto r = simulate(cfg);
  CHECK(r.completed());
  CHECK(r.records.size() == 6);
  CHECK(r.final_state.t == Catch::Approx(0.05));
  CHECK(r.smallness > 0.0);

  const auto dir = scratch_dir("run");
  write_run_artifacts(r, dir.string(), "run");
  const auto recs = read_timeseries((dir / "run.csv").string());
  CHECK(recs.size() == r.records.size());
  const auto theta = read_snapshot((dir / "run-theta.tefld").string());
  CHECK(!theta.vector);
  CHECK(theta.t == r.final_state.t);
  CHECK(read_snapshot((dir / "run-u.tefld").string()).vector);
  CHECK(fs::exists(dir / "run-v.tefld"));
  fs::remove_all(dir);
  CHECK_NOTHROW(write_run_artifacts(r, "", "run"));
}

TEST_CASE("breakdown is reported, not thrown", "[experiments]") {
  RunConfig cfg;
  cfg.scenario.n = 16;
  cfg.stepper.t_end = 0.1;
  cfg.stepper.positivity_floor = 0.995;
  const auto r = simulate(cfg);
  CHECK(!r.completed());
  CHECK(r.failure.find("temperature") != std::string::npos);
}

TEST_CASE("short experiments", "[experiments]") {
  const auto dir = scratch_dir("bounds");
  const auto rep = run_experiment("bounds", {{"t_end", "0.2"}, {"n", "16"}, {"output_dir", dir.string()}});
  CHECK(rep.pass());
  CHECK(rep.verdicts.size() >= 3);
  CHECK(fs::exists(dir / "bounds.csv"));
  CHECK(fs::exists(dir / "bounds.verdicts"));
  CHECK(parse_config(read_file((dir / "bounds.cfg").string())) == rep.config);
  fs::remove_all(dir);

  const auto osc = run_experiment("oscillation", {{"t_end", "12"}, {"n", "16"}, {"dt", "1e-2"}});
  CHECK(osc.pass());
}

TEST_CASE("oracle comparison run", "[experiments]") {
  RunConfig cfg;
  cfg.scenario.n = 16;
  cfg.stepper.t_end = 0.2;
  cfg.stepper.record_every = 50;
  const auto r = run_oracle_comparison(cfg);
  CHECK(r.spectral.size() == r.oracle.states.size());
  CHECK(r.comparison.samples.size() == 5);
  CHECK(r.comparison.pass());
}
