#pragma once

// configuration-driven experiment runner: builds a model, installs a
// correction strategy, sweeps one parameter, and emits deterministic CSV.

#include "mqc/core.hpp"
#include "mqc/model_transmon.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mqc {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Model { stirap_const, stirap_gauss, transmon, mlz };
enum class RunStrategy {
  none,
  w1,
  w1w2,
  w2_optimal,
  satd,
  td,
  drag_baseline,
  constrained_magnus,
  ideal_magnus,
};

std::string to_string(Model m);
std::string to_string(RunStrategy s);
Model model_from_string(const std::string& s);
RunStrategy strategy_from_string(const std::string& s);
bool strategy_valid_for(Model m, RunStrategy s);

struct RunConfig {
  Model model = Model::stirap_const;
  std::vector<RunStrategy> strategies;
  std::string sweep_param; // nu, kappa0_over_delta, eta
  std::vector<double> grid;
  std::vector<double> pulse_points; // parameter points for pulse traces
  double tol = 1e-11;
  unsigned seed = 0;
  std::map<std::string, double> model_params; // overrides, flat keys
  std::optional<DragBaselineConfig> drag;
  std::string raw_text; // hashed into the CSV preamble

  void validate() const; // throws std::invalid_argument with a diagnostic
};

// flat key/value config with [section] headers, '#' comments; unknown keys
// are rejected
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

struct SweepRecord {
  double param = 0.0;
  std::vector<double> infidelity; // one per configured strategy, same order
  double max_amp = 0.0;           // max pulse amplitude over channels
  double certificate = 0.0;       // \int ||V_I|| dt of the uncorrected problem
  double wall_ms = 0.0;           // not serialized (determinism)
  bool ok = true;
  std::string error;
};

// one model + strategy + parameter evaluation (the CLI is a thin shell on this)
double evaluate_infidelity(const RunConfig& cfg, RunStrategy strategy, double value);

std::vector<SweepRecord> run_sweep(const RunConfig& cfg, int threads = 1);

std::uint64_t config_hash(const std::string& raw_text);
std::string sweep_csv(const RunConfig& cfg, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> parse_sweep_csv(const std::string& csv,
                                         std::size_t n_strategies);

// uniform-grid time series of every physical control channel at one sweep point
std::string pulses_csv(const RunConfig& cfg, RunStrategy strategy, double value,
                       int n_samples = 401);

// determinism + round-trip checks on a miniature sweep; returns 0 on success
int run_check(int threads);

} // namespace mqc
