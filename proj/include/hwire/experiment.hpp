#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hwire/transforms.hpp"

namespace hwire {

struct ExperimentRow {
  int n = 0;
  int d = 0;
  std::uint64_t seed = 0;
  int alpha = 0;
  int r = 0;
  int attempts = 0;
  int load = 0;
  std::int64_t vol_stage1 = 0;
  std::int64_t diam_stage1 = 0;
  DiameterMode diam_stage1_mode = DiameterMode::proxy;
  int k = 0;
  std::optional<std::int64_t> vol_final;
  std::optional<std::int64_t> diam_final;
  std::optional<DiameterMode> diam_final_mode;
  bool verify_ok = false;
  std::int64_t elapsed_ms = 0;
  std::string error;  // non-empty when the row failed; sweep continues
};

/// Least-squares fit of ln(value) against ln(n).
struct FitResult {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root-mean-square residual
  std::pair<int, int> window{0, 0};
  bool sufficient = false;  // needs >= 2 distinct n values
};

FitResult fit_loglog(const std::vector<std::pair<double, double>>& n_value);

struct ExperimentConfig {
  std::vector<int> ns;
  int degree = 3;
  int seeds = 5;              // rows use base_seed + 0 .. base_seed + seeds-1
  std::uint64_t base_seed = 0;
  int alpha = 4;
  double load_threshold_constant = 3.0;
  int max_attempts = 200;
  int relief_factor = 1000;
  bool full_pipeline = false;  // run all stages, not just the random wiring
  /// elapsed_ms is 0 unless timing is on; byte-identical reruns need it off.
  bool timing = false;
  int jobs = 1;
  std::size_t ball_cap = kDefaultBallCap;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // sorted by (n, seed)
  FitResult stage1_fit;             // ln(vol_stage1) vs ln(n)
  /// ln(vol_final / ln^2(1+n)) vs ln(n); present with full_pipeline.
  std::optional<FitResult> final_fit;
};

/// The target generating set only matters with full_pipeline; stage 1 always
/// samples over {x,y}.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const GeneratingSet& target);

/// Fixed header, fixed row order; no floating-point cells, so identical
/// seeds and flags give byte-identical output.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

std::string fit_to_json(const std::string& name, const FitResult& fit);

}  // namespace hwire
