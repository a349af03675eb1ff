#include "awt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "awt/io.hpp"
#include "awt/parallel.hpp"
#include "awt/rng.hpp"

namespace awt {

const char* grid_choice_name(GridChoice g) {
  switch (g) {
    case GridChoice::Uniform: return "uniform";
    case GridChoice::NonUniform: return "nonuniform";
    case GridChoice::None: return "none";
  }
  return "?";
}

GridChoice parse_grid_choice(const std::string& name) {
  if (name == "uniform") return GridChoice::Uniform;
  if (name == "nonuniform") return GridChoice::NonUniform;
  if (name == "none") return GridChoice::None;
  throw std::invalid_argument("unknown grid choice: " + name);
}

Reference parse_reference(const std::string& text) {
  if (text == "truth") return Reference::truth();
  if (text.rfind("proxy:", 0) == 0)
    return Reference::proxy(std::stoll(text.substr(6)));
  throw std::invalid_argument("unknown reference: " + text);
}

std::string reference_name(const Reference& ref) {
  if (ref.kind == Reference::Kind::GroundTruth) return "truth";
  return "proxy:" + std::to_string(ref.proxy_m);
}

int dimension_correction(int d) { return d <= 2 ? d + 1 : d; }

namespace {

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};

Fit fit_loglog(const std::vector<std::int64_t>& ns,
               const std::vector<double>& means) {
  const std::size_t k = ns.size();
  Fit fit;
  if (k < 2) return fit;
  double sx = 0, sy = 0;
  std::vector<double> xs(k), ys(k);
  for (std::size_t i = 0; i < k; ++i) {
    xs[i] = std::log(static_cast<double>(ns[i]));
    ys[i] = std::log(std::max(means[i], 1e-300));
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (k > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const double resid = ys[i] - fit.intercept - fit.slope * xs[i];
      rss += resid * resid;
    }
    fit.stderr_slope = std::sqrt(rss / (k - 2) / sxx);
  }
  return fit;
}

PathMeasureTree build_estimate(const ModelSpec& model, GridChoice grid,
                               std::int64_t n, std::uint64_t seed) {
  const PathSample sample = draw_paths(model, n, seed);
  switch (grid) {
    case GridChoice::Uniform:
      return adapted_empirical_tree(
          sample, GridSpec::make(GridKind::Uniform, model.dims, n));
    case GridChoice::NonUniform:
      return adapted_empirical_tree(
          sample, GridSpec::make(GridKind::NonUniform, model.dims, n));
    case GridChoice::None:
      return empirical_tree(sample);
  }
  throw std::logic_error("bad grid choice");
}

PathMeasureTree build_reference(const ModelSpec& model, GridChoice grid,
                                const Reference& ref, std::int64_t max_n,
                                std::uint64_t seed) {
  if (ref.kind == Reference::Kind::GroundTruth) {
    if (model.kind != ModelKind::CustomTree)
      throw std::invalid_argument(
          "truth reference requires a finite-tree model");
    return ground_truth_tree(model.tree);
  }
  if (ref.proxy_m < 8 * max_n)
    throw std::invalid_argument("proxy reference requires M >= 8 * max(N)");
  const PathSample sample =
      draw_paths(model, ref.proxy_m, derive_seed(seed, 0x9ffe, 0, 0));
  const GridKind kind = grid == GridChoice::NonUniform ? GridKind::NonUniform
                                                       : GridKind::Uniform;
  return adapted_empirical_tree(
      sample, GridSpec::make(kind, model.dims, ref.proxy_m));
}

}  // namespace

RateReport rate_experiment(const ModelSpec& model, GridChoice grid,
                           const std::vector<std::int64_t>& n_list, int trials,
                           std::uint64_t seed, const Reference& ref,
                           const ExperimentOptions& opt) {
  if (n_list.empty()) throw std::invalid_argument("rate: empty N list");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("rate: N list must be strictly increasing");
  if (trials < 1) throw std::invalid_argument("rate: trials must be >= 1");

  RateReport report;
  report.model_id = model_kind_name(model.kind);
  report.grid = grid;
  report.reference_id = reference_name(ref);
  report.n_list = n_list;
  report.trials = trials;
  report.seed = seed;
  report.theory_slope =
      -1.0 / (dimension_correction(model.dims.d) * model.dims.T);

  const PathMeasureTree reference =
      build_reference(model, grid, ref, n_list.back(), seed);

  report.trial_errors.assign(n_list.size(),
                             std::vector<double>(trials, 0.0));
  std::atomic<int> audits_run{0}, audits_passed{0}, audits_skipped{0};

  const std::int64_t jobs =
      static_cast<std::int64_t>(n_list.size()) * trials;
  parallel_for(jobs, opt.threads, [&](std::int64_t job) {
    const std::size_t ni = static_cast<std::size_t>(job / trials);
    const int trial = static_cast<int>(job % trials);
    const std::int64_t n = n_list[ni];
    const std::uint64_t trial_seed =
        derive_seed(seed, 1, static_cast<std::uint64_t>(n),
                    static_cast<std::uint64_t>(trial));
    const PathMeasureTree estimate =
        build_estimate(model, grid, n, trial_seed);
    AwOptions aw_opt;
    aw_opt.pair_budget = opt.pair_budget;
    aw_opt.keep_tables = false;
    const double err = aw_nested(estimate, reference, aw_opt).value;
    report.trial_errors[ni][trial] = err;
    if (opt.audit_stride > 0 && trial % opt.audit_stride == 0) {
      const std::int64_t product =
          static_cast<std::int64_t>(estimate.leaf_count()) *
          static_cast<std::int64_t>(reference.leaf_count());
      if (product <= opt.audit_cap) {
        audits_run.fetch_add(1);
        const double flat = w_flat(estimate, reference, 1.0, opt.audit_cap);
        if (err >= 0.0 && flat <= err + 1e-9) audits_passed.fetch_add(1);
      } else {
        audits_skipped.fetch_add(1);
      }
    }
  });

  report.mean_err.resize(n_list.size());
  report.std_err.resize(n_list.size());
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const auto& errs = report.trial_errors[ni];
    double mean = 0.0;
    for (const double e : errs) mean += e;
    mean /= trials;
    double var = 0.0;
    for (const double e : errs) var += (e - mean) * (e - mean);
    report.mean_err[ni] = mean;
    report.std_err[ni] = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
  }
  const Fit fit = fit_loglog(n_list, report.mean_err);
  report.slope = fit.slope;
  report.slope_stderr = fit.stderr_slope;
  report.audits_run = audits_run.load();
  report.audits_passed = audits_passed.load();
  report.audits_skipped = audits_skipped.load();
  return report;
}

DeviationReport deviation_experiment(const ModelSpec& model, GridChoice grid,
                                     std::int64_t n, int trials,
                                     std::uint64_t seed, const Reference& ref,
                                     std::vector<double> xs, int x_count,
                                     const ExperimentOptions& opt) {
  if (trials < 1) throw std::invalid_argument("deviate: trials must be >= 1");
  Reference use_ref = ref;
  if (use_ref.kind == Reference::Kind::Proxy && use_ref.proxy_m == 0)
    use_ref.proxy_m = 8 * n;

  DeviationReport report;
  report.model_id = model_kind_name(model.kind);
  report.grid = grid;
  report.reference_id = reference_name(use_ref);
  report.n = n;
  report.trials = trials;
  report.seed = seed;

  const PathMeasureTree reference =
      build_reference(model, grid, use_ref, n, seed);
  report.errors.assign(trials, 0.0);
  parallel_for(trials, opt.threads, [&](std::int64_t trial) {
    const std::uint64_t trial_seed =
        derive_seed(seed, 2, static_cast<std::uint64_t>(n),
                    static_cast<std::uint64_t>(trial));
    const PathMeasureTree estimate =
        build_estimate(model, grid, n, trial_seed);
    AwOptions aw_opt;
    aw_opt.pair_budget = opt.pair_budget;
    aw_opt.keep_tables = false;
    report.errors[trial] = aw_nested(estimate, reference, aw_opt).value;
  });

  double mean = 0.0, maxerr = 0.0;
  for (const double e : report.errors) {
    mean += e;
    maxerr = std::max(maxerr, e);
  }
  mean /= trials;
  report.mean_err = mean;

  if (xs.empty()) {
    const double span = std::max(maxerr - mean, 0.0);
    const int k = std::max(x_count, 1);
    xs.resize(k);
    for (int i = 0; i < k; ++i)
      xs[i] = k == 1 ? 0.0 : span * i / (k - 1);
  }
  report.xs = std::move(xs);
  report.tail.resize(report.xs.size());
  for (std::size_t i = 0; i < report.xs.size(); ++i) {
    int hits = 0;
    for (const double e : report.errors)
      if (e >= mean + report.xs[i]) ++hits;
    report.tail[i] = static_cast<double>(hits) / trials;
  }
  return report;
}

GapReport gap_demo(double epsilon) {
  const auto [mu, nu] = gap_example_pair(epsilon);
  GapReport report;
  report.epsilon = epsilon;
  report.w = w_flat(mu, nu, 1.0);
  report.aw = aw_nested(mu, nu).value;
  return report;
}

void write_rate_csv(const RateReport& report, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  os << "model,grid,reference,seed,N,trials,mean_err,std_err,slope,"
        "slope_stderr,theory_slope\n";
  for (std::size_t i = 0; i < report.n_list.size(); ++i) {
    os << report.model_id << ',' << grid_choice_name(report.grid) << ','
       << report.reference_id << ',' << report.seed << ','
       << report.n_list[i] << ',' << report.trials << ','
       << format_double17(report.mean_err[i]) << ','
       << format_double17(report.std_err[i]) << ','
       << format_double17(report.slope) << ','
       << format_double17(report.slope_stderr) << ','
       << format_double17(report.theory_slope) << '\n';
  }
}

void write_trials_csv(const RateReport& report, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  os << "model,grid,reference,seed,N,trial,error\n";
  for (std::size_t i = 0; i < report.n_list.size(); ++i)
    for (int k = 0; k < report.trials; ++k)
      os << report.model_id << ',' << grid_choice_name(report.grid) << ','
         << report.reference_id << ',' << report.seed << ','
         << report.n_list[i] << ',' << k << ','
         << format_double17(report.trial_errors[i][k]) << '\n';
}

void write_tail_csv(const DeviationReport& report, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  os << "model,grid,reference,seed,N,trials,x,tail,n_x_sq,log_tail\n";
  for (std::size_t i = 0; i < report.xs.size(); ++i) {
    const double x = report.xs[i];
    const double tail = report.tail[i];
    os << report.model_id << ',' << grid_choice_name(report.grid) << ','
       << report.reference_id << ',' << report.seed << ',' << report.n << ','
       << report.trials << ',' << format_double17(x) << ','
       << format_double17(tail) << ','
       << format_double17(static_cast<double>(report.n) * x * x) << ','
       << (tail > 0.0 ? format_double17(std::log(tail)) : "-inf") << '\n';
  }
}

void write_rate_svg(const RateReport& report, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  const double W = 640, H = 480, ml = 70, mr = 20, mt = 30, mb = 50;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < report.n_list.size(); ++i) {
    xs.push_back(std::log10(static_cast<double>(report.n_list[i])));
    ys.push_back(std::log10(std::max(report.mean_err[i], 1e-300)));
  }
  double xmin = xs.front(), xmax = xs.back();
  double ymin = ys[0], ymax = ys[0];
  for (const double y : ys) {
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax - xmin < 1e-9) xmax = xmin + 1;
  if (ymax - ymin < 1e-9) ymax = ymin + 1;
  const auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  const auto py = [&](double y) {
    return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb);
  };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
     << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
     << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
  // Fitted line in natural-log space, drawn across the N range.
  const Fit fit = fit_loglog(report.n_list, report.mean_err);
  const double lx0 = xs.front(), lx1 = xs.back();
  const double ln10 = std::log(10.0);
  const double fy0 = (fit.intercept + fit.slope * lx0 * ln10) / ln10;
  const double fy1 = (fit.intercept + fit.slope * lx1 * ln10) / ln10;
  os << "<line x1=\"" << px(lx0) << "\" y1=\"" << py(fy0) << "\" x2=\""
     << px(lx1) << "\" y2=\"" << py(fy1)
     << "\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    os << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(ys[i])
       << "\" r=\"4\" fill=\"crimson\"/>\n";
  os << "<text x=\"" << (W / 2) << "\" y=\"" << (H - 12)
     << "\" text-anchor=\"middle\" font-size=\"13\">log10 N</text>\n";
  os << "<text x=\"16\" y=\"" << (H / 2)
     << "\" transform=\"rotate(-90 16 " << (H / 2)
     << ")\" text-anchor=\"middle\" font-size=\"13\">log10 mean error"
        "</text>\n";
  os << "<text x=\"" << (W / 2) << "\" y=\"18\" text-anchor=\"middle\" "
        "font-size=\"13\">"
     << report.model_id << " / " << grid_choice_name(report.grid)
     << "  slope=" << format_double17(report.slope) << "</text>\n";
  os << "</svg>\n";
}

}  // namespace awt
