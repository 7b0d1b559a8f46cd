// simulate: average-latency sweeps for the pinching-antenna downlink.
//
//   simulate --config scenario.json --sweep power_budget_dbm=15,17,19 --out fig1.csv

#include <omp.h>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pinch/csv.hpp"
#include "pinch/sweep.hpp"

namespace {

std::vector<pinch::SchemeId> parse_scheme_list(const std::string& text) {
  std::vector<pinch::SchemeId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(pinch::parse_scheme(item));
  if (out.empty()) throw std::invalid_argument("--schemes needs at least one scheme");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Average content-delivery latency sweeps for a pinching-antenna downlink"};
  app.set_version_flag("--version", "simulate 1.0");

  std::string config_path;
  std::string sweep_text;
  std::string schemes_text;
  std::string out_path;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t layouts = 0;
  int threads = 0;
  bool timing = false;
  bool serial = false;

  app.add_option("--config", config_path, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
  auto* sweep_opt = app.add_option("--sweep", sweep_text, "<param>=<v1,v2,...>");
  auto* schemes_opt = app.add_option("--schemes", schemes_text, "Comma-separated scheme list");
  auto* seed_opt = app.add_option("--seed", seed, "Master seed");
  app.add_option("--out", out_path, "CSV output path (stdout when omitted)");
  auto* samples_opt = app.add_option("--samples", samples, "Monte Carlo samples per layout")
                          ->check(CLI::PositiveNumber);
  auto* layouts_opt = app.add_option("--layouts", layouts, "User layouts to average over")
                          ->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", timing, "Record wall time per row (output is then not reproducible)");
  app.add_flag("--serial", serial, "Use the serial reference kernel");

  CLI11_PARSE(app, argc, argv);

  try {
    pinch::ScenarioConfig cfg = pinch::load_config(config_path);
    if (*seed_opt) cfg.seed = seed;
    if (*samples_opt) {
      cfg.samples = samples;
      if (cfg.sampling_mode == pinch::SamplingMode::automatic) {
        cfg.sampling_mode = pinch::SamplingMode::monte_carlo;
      }
    }
    if (*layouts_opt) cfg.layouts = layouts;
    if (*schemes_opt) cfg.schemes = parse_scheme_list(schemes_text);
    cfg.validate();

    pinch::SweepSpec sweep;
    if (*sweep_opt) {
      sweep = pinch::parse_sweep(sweep_text);
    } else {
      sweep.parameter = pinch::SweepParam::power_budget_dbm;
      sweep.values = {cfg.power_budget_dbm};
    }

    if (threads > 0) omp_set_num_threads(threads);
    pinch::SweepOptions opts;
    opts.parallel = !serial;
    opts.record_timing = timing;
    const std::vector<pinch::SweepRow> rows = pinch::run_sweep(cfg, sweep, opts);

    if (out_path.empty()) {
      std::cout << pinch::format_csv(rows);
    } else {
      pinch::write_csv(rows, out_path);
    }
  } catch (const pinch::InfeasibleStateError& e) {
    std::cerr << "simulate: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "simulate: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
