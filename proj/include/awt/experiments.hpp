// Monte Carlo harness: convergence-rate and deviation experiments over
// seeded trials, CSV/SVG reporting.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "awt/models.hpp"
#include "awt/nested.hpp"

namespace awt {

enum class GridChoice { Uniform, NonUniform, None };

const char* grid_choice_name(GridChoice g);
GridChoice parse_grid_choice(const std::string& name);

// Reference measure an estimated tree is compared against: the model's own
// finite tree, or an adapted empirical tree from an independent sample of
// size proxy_m on a grid tuned to proxy_m.
struct Reference {
  enum class Kind { GroundTruth, Proxy };
  Kind kind = Kind::Proxy;
  std::int64_t proxy_m = 0;

  static Reference truth() { return {Kind::GroundTruth, 0}; }
  static Reference proxy(std::int64_t m) { return {Kind::Proxy, m}; }
};
Reference parse_reference(const std::string& text);
std::string reference_name(const Reference& ref);

// Rate-exponent correction: d+1 for d in {1,2}, d for d >= 3.
int dimension_correction(int d);

struct ExperimentOptions {
  int threads = 1;
  std::int64_t pair_budget = 20'000'000;
  // w_flat audit (per-trial error >= 0 and flat <= adapted) runs on every
  // audit_stride-th trial whose leaf-pair product fits audit_cap.
  int audit_stride = 20;
  std::int64_t audit_cap = 8'000'000;
};

struct RateReport {
  std::string model_id;
  GridChoice grid = GridChoice::Uniform;
  std::string reference_id;
  std::vector<std::int64_t> n_list;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> mean_err;                 // per N
  std::vector<double> std_err;                  // per N, sample std
  std::vector<std::vector<double>> trial_errors;  // per N, per trial
  double slope = 0.0;          // least squares on (log N, log mean)
  double slope_stderr = 0.0;
  double theory_slope = 0.0;   // -1 / (D(d) * T)
  int audits_run = 0;
  int audits_passed = 0;
  int audits_skipped = 0;
};

RateReport rate_experiment(const ModelSpec& model, GridChoice grid,
                           const std::vector<std::int64_t>& n_list, int trials,
                           std::uint64_t seed, const Reference& ref,
                           const ExperimentOptions& opt = {});

struct DeviationReport {
  std::string model_id;
  GridChoice grid = GridChoice::Uniform;
  std::string reference_id;
  std::int64_t n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double mean_err = 0.0;
  std::vector<double> errors;  // per trial
  std::vector<double> xs;      // deviation grid
  std::vector<double> tail;    // P[err >= mean + x]
};

// xs: explicit deviation grid, or empty to use x_count points spanning
// [0, max error - mean].
DeviationReport deviation_experiment(const ModelSpec& model, GridChoice grid,
                                     std::int64_t n, int trials,
                                     std::uint64_t seed, const Reference& ref,
                                     std::vector<double> xs = {},
                                     int x_count = 24,
                                     const ExperimentOptions& opt = {});

struct GapReport {
  double epsilon = 0.0;
  double w = 0.0;
  double aw = 0.0;
  double gap() const { return aw - w; }
};

GapReport gap_demo(double epsilon);

// Deterministic CSV/SVG writers (17 significant digits, fixed layout).
void write_rate_csv(const RateReport& report, const std::string& path);
void write_trials_csv(const RateReport& report, const std::string& path);
void write_tail_csv(const DeviationReport& report, const std::string& path);
void write_rate_svg(const RateReport& report, const std::string& path);

}  // namespace awt
