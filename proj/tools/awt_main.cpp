// Command-line front end: sampling, grid projection, discrete OT, nested
// distance, and the Monte Carlo experiment harness.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "awt/experiments.hpp"
#include "awt/io.hpp"
#include "awt/models.hpp"
#include "awt/nested.hpp"
#include "awt/ot.hpp"

namespace {

struct ModelFlags {
  std::string model = "gauss-walk";
  int d = 1;
  int T = 2;
  double dt = 0.01;
  int sde_preset = 0;
  double ar_a = 0.5;
  double radius = 1.0;
  std::string tree = "coin2";

  awt::ModelSpec to_spec() const {
    awt::ModelSpec spec;
    spec.kind = awt::parse_model_kind(model);
    spec.dims = awt::Dims(d, T);
    spec.dt = dt;
    spec.sde_preset = sde_preset;
    spec.ar_coeff = ar_a;
    spec.cube_radius = radius;
    spec.tree = tree;
    return awt::with_default_metadata(spec);
  }
};

void add_model_flags(CLI::App* cmd, ModelFlags& mf) {
  cmd->add_option("--model", mf.model,
                  "model kind: bs|sde|gauss-walk|ar1|uniform-cube|tree");
  cmd->add_option("--d", mf.d, "state dimension");
  cmd->add_option("--T", mf.T, "time steps (>= 2)");
  cmd->add_option("--dt", mf.dt, "time increment (bs/sde)");
  cmd->add_option("--sde-preset", mf.sde_preset,
                  "0: (0.1x, 0.2x), 1: (sin x, 1+0.5 cos x)");
  cmd->add_option("--ar-a", mf.ar_a, "AR(1) coefficient");
  cmd->add_option("--radius", mf.radius, "uniform cube radius");
  cmd->add_option("--tree", mf.tree, "tree preset name or dump file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adapted Wasserstein toolkit"};
  app.require_subcommand(1);

  // --- sample
  auto* sample_cmd =
      app.add_subcommand("sample", "draw seeded paths, write a CSV");
  ModelFlags sample_mf;
  add_model_flags(sample_cmd, sample_mf);
  std::int64_t sample_n = 16;
  std::uint64_t sample_seed = 1;
  std::string sample_out = "sample.csv";
  sample_cmd->add_option("--n", sample_n, "number of paths")->required();
  sample_cmd->add_option("--seed", sample_seed, "RNG seed");
  sample_cmd->add_option("--out", sample_out, "output CSV path");

  // --- project
  auto* project_cmd = app.add_subcommand(
      "project", "midpoint-project a path sample onto a grid");
  std::string project_in, project_out = "projected.csv",
              project_cells = "cells.csv";
  std::string project_grid = "uniform";
  std::int64_t n_override = 0;
  project_cmd->add_option("--in", project_in, "input path CSV")->required();
  project_cmd->add_option("--grid", project_grid, "uniform|nonuniform");
  project_cmd->add_option("--n-override", n_override,
                          "tune the grid to this sample size instead");
  project_cmd->add_option("--out", project_out, "projected CSV");
  project_cmd->add_option("--cells-out", project_cells, "cell-id sidecar CSV");

  // --- w1
  auto* w1_cmd =
      app.add_subcommand("w1", "Wasserstein distance of two measure CSVs");
  std::string w1_a, w1_b, w1_plan_out;
  double w1_p = 1.0;
  w1_cmd->add_option("a", w1_a, "first measure CSV")->required();
  w1_cmd->add_option("b", w1_b, "second measure CSV")->required();
  w1_cmd->add_option("--p", w1_p, "order p >= 1");
  w1_cmd->add_option("--plan-out", w1_plan_out, "write the plan as CSV");

  // --- aw
  auto* aw_cmd = app.add_subcommand(
      "aw", "adapted (nested) distance of two tree dumps");
  std::string aw_a, aw_b;
  double aw_p = 1.0;
  bool aw_oracle = false;
  aw_cmd->add_option("a", aw_a, "first tree dump")->required();
  aw_cmd->add_option("b", aw_b, "second tree dump")->required();
  aw_cmd->add_option("--p", aw_p, "order p >= 1");
  aw_cmd->add_flag("--oracle", aw_oracle,
                   "also solve the bicausal LP and report the discrepancy");

  // --- rate
  auto* rate_cmd = app.add_subcommand(
      "rate", "Monte Carlo convergence-rate experiment");
  ModelFlags rate_mf;
  add_model_flags(rate_cmd, rate_mf);
  std::vector<std::int64_t> rate_ns = {64, 256, 1024};
  int rate_trials = 8;
  std::uint64_t rate_seed = 1;
  std::string rate_grid = "uniform", rate_ref = "proxy:0", rate_out = "out";
  int rate_threads = 1;
  bool rate_plot = false;
  rate_cmd->add_option("--n-list", rate_ns, "sample sizes, increasing")
      ->delimiter(',');
  rate_cmd->add_option("--trials", rate_trials, "trials per N");
  rate_cmd->add_option("--seed", rate_seed, "master seed");
  rate_cmd->add_option("--grid", rate_grid, "uniform|nonuniform|none");
  rate_cmd->add_option("--reference", rate_ref, "truth or proxy:M");
  rate_cmd->add_option("--out", rate_out, "output directory");
  rate_cmd->add_option("--threads", rate_threads, "worker pool width");
  rate_cmd->add_flag("--plot", rate_plot, "also write plot.svg");

  // --- deviate
  auto* dev_cmd = app.add_subcommand(
      "deviate", "Monte Carlo deviation (tail) experiment");
  ModelFlags dev_mf;
  add_model_flags(dev_cmd, dev_mf);
  std::int64_t dev_n = 256;
  int dev_trials = 500;
  std::uint64_t dev_seed = 1;
  std::string dev_grid = "uniform", dev_ref = "proxy:0", dev_out = "out";
  int dev_threads = 1, dev_xcount = 24;
  dev_cmd->add_option("--n", dev_n, "sample size");
  dev_cmd->add_option("--trials", dev_trials, "number of trials (>= 200)");
  dev_cmd->add_option("--seed", dev_seed, "master seed");
  dev_cmd->add_option("--grid", dev_grid, "uniform|nonuniform|none");
  dev_cmd->add_option("--reference", dev_ref,
                      "truth or proxy:M (proxy:0 uses M = 8N)");
  dev_cmd->add_option("--out", dev_out, "output directory");
  dev_cmd->add_option("--threads", dev_threads, "worker pool width");
  dev_cmd->add_option("--x-count", dev_xcount, "deviation grid size");

  // --- gap-demo
  auto* gap_cmd = app.add_subcommand(
      "gap-demo", "flat vs adapted distance on the two-atom example");
  double gap_eps = 0.25;
  gap_cmd->add_option("--epsilon", gap_eps, "split size in (0,1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sample_cmd->parsed()) {
      const awt::ModelSpec spec = sample_mf.to_spec();
      const awt::PathSample sample =
          awt::draw_paths(spec, sample_n, sample_seed);
      awt::write_path_sample_csv_file(sample, sample_out);
      std::cout << "wrote " << sample.n << " paths (d=" << spec.dims.d
                << ", T=" << spec.dims.T << ") to " << sample_out << "\n";
    } else if (project_cmd->parsed()) {
      const awt::PathSample sample =
          awt::read_path_sample_csv_file(project_in);
      const std::int64_t n = n_override > 0 ? n_override : sample.n;
      const awt::GridKind kind = project_grid == "nonuniform"
                                     ? awt::GridKind::NonUniform
                                     : awt::GridKind::Uniform;
      if (project_grid != "uniform" && project_grid != "nonuniform")
        throw std::invalid_argument("project: --grid must be uniform|nonuniform");
      const awt::GridSpec spec = awt::GridSpec::make(kind, sample.dims, n);
      awt::PathSample projected = sample;
      std::ofstream cells(project_cells, std::ios::binary);
      if (!cells)
        throw std::runtime_error("cannot open for write: " + project_cells);
      cells << "ring";
      for (int k = 0; k < sample.dims.flat(); ++k) cells << ",z" << k;
      cells << '\n';
      for (std::int64_t i = 0; i < sample.n; ++i) {
        auto [cell, mid] = awt::project_path(spec, sample.path(i));
        std::copy(mid.begin(), mid.end(),
                  projected.data.begin() + i * sample.dims.flat());
        cells << cell.ring;
        for (const std::int64_t z : cell.index) cells << ',' << z;
        cells << '\n';
      }
      awt::write_path_sample_csv_file(projected, project_out);
      std::cout << "projected " << sample.n << " paths on the "
                << project_grid << " grid (m=" << spec.m << ", delta="
                << awt::format_double17(spec.delta) << ")\n";
    } else if (w1_cmd->parsed()) {
      const awt::DiscreteMeasure mu = awt::read_discrete_measure_csv_file(w1_a);
      const awt::DiscreteMeasure nu = awt::read_discrete_measure_csv_file(w1_b);
      const awt::WpResult res = awt::wp_discrete(mu, nu, w1_p);
      std::cout << "w" << w1_p << " = " << awt::format_double17(res.value)
                << (res.exact ? "" : "  (real-weight fallback)") << "\n";
      if (!w1_plan_out.empty()) {
        std::ofstream os(w1_plan_out, std::ios::binary);
        if (!os)
          throw std::runtime_error("cannot open for write: " + w1_plan_out);
        os << "i,j,mass\n";
        for (const auto& e : res.plan.entries)
          os << e.i << ',' << e.j << ',' << awt::format_double17(e.mass)
             << '\n';
      }
    } else if (aw_cmd->parsed()) {
      const awt::PathMeasureTree mu = awt::read_tree_file(aw_a);
      const awt::PathMeasureTree nu = awt::read_tree_file(aw_b);
      awt::AwOptions opt;
      opt.p = aw_p;
      opt.keep_tables = false;
      const double value = awt::aw_nested(mu, nu, opt).value;
      std::cout << "aw = " << awt::format_double17(value) << "\n";
      if (aw_oracle) {
        const double oracle = awt::bicausal_lp_oracle(mu, nu, aw_p);
        std::cout << "oracle = " << awt::format_double17(oracle) << "\n"
                  << "discrepancy = "
                  << awt::format_double17(std::fabs(value - oracle)) << "\n";
      }
    } else if (rate_cmd->parsed()) {
      const awt::ModelSpec spec = rate_mf.to_spec();
      awt::ExperimentOptions opt;
      opt.threads = rate_threads;
      const awt::RateReport report = awt::rate_experiment(
          spec, awt::parse_grid_choice(rate_grid), rate_ns, rate_trials,
          rate_seed, awt::parse_reference(rate_ref), opt);
      std::filesystem::create_directories(rate_out);
      awt::write_rate_csv(report, rate_out + "/rate.csv");
      awt::write_trials_csv(report, rate_out + "/trials.csv");
      if (rate_plot) awt::write_rate_svg(report, rate_out + "/plot.svg");
      std::cout << "slope = " << awt::format_double17(report.slope)
                << " (theory " << awt::format_double17(report.theory_slope)
                << "), audits " << report.audits_passed << "/"
                << report.audits_run << " passed, " << report.audits_skipped
                << " skipped\n";
    } else if (dev_cmd->parsed()) {
      const awt::ModelSpec spec = dev_mf.to_spec();
      awt::ExperimentOptions opt;
      opt.threads = dev_threads;
      const awt::DeviationReport report = awt::deviation_experiment(
          spec, awt::parse_grid_choice(dev_grid), dev_n, dev_trials, dev_seed,
          awt::parse_reference(dev_ref), {}, dev_xcount, opt);
      std::filesystem::create_directories(dev_out);
      awt::write_tail_csv(report, dev_out + "/tail.csv");
      std::cout << "mean error = " << awt::format_double17(report.mean_err)
                << " over " << report.trials << " trials\n";
    } else if (gap_cmd->parsed()) {
      const awt::GapReport report = awt::gap_demo(gap_eps);
      std::cout << "epsilon = " << awt::format_double17(report.epsilon)
                << "\nw       = " << awt::format_double17(report.w)
                << "\naw      = " << awt::format_double17(report.aw)
                << "\ngap     = " << awt::format_double17(report.gap())
                << "\n";
    }
  } catch (const awt::BudgetExceeded& e) {
    std::cerr << "budget abort: " << e.what() << " (required "
              << e.required << ", budget " << e.budget << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
