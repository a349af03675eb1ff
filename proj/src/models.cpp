#include "awt/models.hpp"

#include <cmath>
#include <stdexcept>

#include "awt/rng.hpp"

namespace awt {

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::BlackScholesDisc: return "bs";
    case ModelKind::SdeDisc: return "sde";
    case ModelKind::GaussianWalk: return "gauss-walk";
    case ModelKind::ArOne: return "ar1";
    case ModelKind::UniformCube: return "uniform-cube";
    case ModelKind::CustomTree: return "tree";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "bs") return ModelKind::BlackScholesDisc;
  if (name == "sde") return ModelKind::SdeDisc;
  if (name == "gauss-walk") return ModelKind::GaussianWalk;
  if (name == "ar1") return ModelKind::ArOne;
  if (name == "uniform-cube") return ModelKind::UniformCube;
  if (name == "tree") return ModelKind::CustomTree;
  throw std::invalid_argument("unknown model kind: " + name);
}

ModelSpec with_default_metadata(ModelSpec spec) {
  const double d = static_cast<double>(spec.dims.d);
  ModelMetadata& md = spec.metadata;
  switch (spec.kind) {
    case ModelKind::BlackScholesDisc:
      // Kernels x_t + sqrt(dt)*x_t.*eps: Lipschitz (1+d*dt)^(1/2), noise
      // scale grows linearly in the state.
      md.lipschitz_L = std::sqrt(1.0 + d * spec.dt);
      md.growth_r = 1.0;
      md.moment_p = 2.0;
      md.moment_q = 10.0;
      break;
    case ModelKind::SdeDisc:
      md.lipschitz_L =
          spec.sde_preset == 0
              ? std::sqrt((1.0 + 0.1 * spec.dt) * (1.0 + 0.1 * spec.dt) +
                          0.04 * d * spec.dt)
              : std::sqrt((1.0 + spec.dt) * (1.0 + spec.dt) +
                          0.25 * d * spec.dt);
      md.growth_r = 1.0;
      md.exp_alpha = 2.0;
      md.exp_gamma = 0.25;
      break;
    case ModelKind::GaussianWalk:
      md.lipschitz_L = 1.0;
      md.growth_r = 0.0;
      md.exp_alpha = 2.0;
      md.exp_gamma = 0.25;
      break;
    case ModelKind::ArOne:
      md.lipschitz_L = std::fabs(spec.ar_coeff);
      md.growth_r = 0.0;
      md.exp_alpha = 2.0;
      md.exp_gamma = 0.25;
      break;
    case ModelKind::UniformCube:
      md.lipschitz_L = 0.0;  // product law: kernels do not depend on the past
      md.growth_r = 0.0;
      md.moment_p = 2.0;
      md.moment_q = 10.0;
      break;
    case ModelKind::CustomTree:
      md.moment_q = 10.0;
      break;
  }
  return spec;
}

namespace {

void validate(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::BlackScholesDisc:
    case ModelKind::SdeDisc:
      if (!(spec.dt >= 0.0) || !std::isfinite(spec.dt))
        throw std::invalid_argument("model: dt must be >= 0");
      if (spec.kind == ModelKind::SdeDisc &&
          (spec.sde_preset < 0 || spec.sde_preset > 1))
        throw std::invalid_argument("model: unknown sde preset");
      break;
    case ModelKind::ArOne:
      if (!std::isfinite(spec.ar_coeff))
        throw std::invalid_argument("model: bad AR coefficient");
      break;
    case ModelKind::UniformCube:
      if (!(spec.cube_radius > 0.0))
        throw std::invalid_argument("model: cube radius must be > 0");
      break;
    default:
      break;
  }
}

// Exact inverse-CDF walk down a finite tree.
void sample_tree_path(const PathMeasureTree& tree, Rng& rng, double* out) {
  const int d = tree.dims().d;
  const int T = tree.dims().T;
  std::size_t node = 0;
  std::int32_t lo = 0, hi = 0;
  for (int t = 1; t <= T; ++t) {
    const auto& lvl = tree.level(t);
    if (t == 1) {
      lo = 0;
      hi = static_cast<std::int32_t>(lvl.node_count());
    }
    const std::int64_t total =
        t == 1 ? tree.total() : tree.level(t - 1).counts[node];
    const double target = rng.uniform01() * static_cast<double>(total);
    std::int64_t cum = 0;
    std::int32_t pick = hi - 1;
    for (std::int32_t k = lo; k < hi; ++k) {
      cum += lvl.counts[k];
      if (target < static_cast<double>(cum)) {
        pick = k;
        break;
      }
    }
    const auto pt = tree.node_point(t, pick);
    for (int c = 0; c < d; ++c) out[(t - 1) * d + c] = pt[c];
    if (t < T) {
      lo = lvl.child_begin[pick];
      hi = lvl.child_end[pick];
      node = pick;
    }
  }
}

}  // namespace

PathSample draw_paths(const ModelSpec& spec, std::int64_t n,
                      std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("draw_paths: n must be >= 1");
  validate(spec);
  const int d = spec.dims.d;
  const int T = spec.dims.T;
  std::vector<double> data(static_cast<std::size_t>(n) * spec.dims.flat());
  Rng rng(seed);

  if (spec.kind == ModelKind::CustomTree) {
    const PathMeasureTree tree = ground_truth_tree(spec.tree);
    if (!(tree.dims() == spec.dims))
      throw std::invalid_argument("draw_paths: tree dims mismatch");
    for (std::int64_t i = 0; i < n; ++i)
      sample_tree_path(tree, rng, data.data() + i * spec.dims.flat());
    return make_path_sample(spec.dims, n, seed, std::move(data));
  }

  const double sqdt = std::sqrt(spec.dt);
  for (std::int64_t i = 0; i < n; ++i) {
    double* path = data.data() + i * spec.dims.flat();
    switch (spec.kind) {
      case ModelKind::BlackScholesDisc:
        for (int c = 0; c < d; ++c) path[c] = 1.0;
        for (int t = 1; t < T; ++t)
          for (int c = 0; c < d; ++c) {
            const double prev = path[(t - 1) * d + c];
            path[t * d + c] = prev + sqdt * prev * rng.normal();
          }
        break;
      case ModelKind::SdeDisc:
        for (int c = 0; c < d; ++c) path[c] = 1.0;
        for (int t = 1; t < T; ++t)
          for (int c = 0; c < d; ++c) {
            const double prev = path[(t - 1) * d + c];
            double drift, vol;
            if (spec.sde_preset == 0) {
              drift = 0.1 * prev;
              vol = 0.2 * prev;
            } else {
              drift = std::sin(prev);
              vol = 1.0 + 0.5 * std::cos(prev);
            }
            path[t * d + c] = prev + drift * spec.dt + vol * sqdt * rng.normal();
          }
        break;
      case ModelKind::GaussianWalk:
        for (int c = 0; c < d; ++c) path[c] = 0.0;
        for (int t = 1; t < T; ++t)
          for (int c = 0; c < d; ++c)
            path[t * d + c] = path[(t - 1) * d + c] + rng.normal();
        break;
      case ModelKind::ArOne:
        for (int c = 0; c < d; ++c) path[c] = 0.0;
        for (int t = 1; t < T; ++t)
          for (int c = 0; c < d; ++c)
            path[t * d + c] =
                spec.ar_coeff * path[(t - 1) * d + c] + rng.normal();
        break;
      case ModelKind::UniformCube:
        for (int k = 0; k < spec.dims.flat(); ++k)
          path[k] = rng.uniform(-spec.cube_radius, spec.cube_radius);
        break;
      case ModelKind::CustomTree:
        break;  // handled above
    }
  }
  return make_path_sample(spec.dims, n, seed, std::move(data));
}

std::pair<PathMeasureTree, PathMeasureTree> gap_example_pair(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("gap_example_pair: epsilon must be in (0,1)");
  const Dims dims(1, 2);
  std::vector<double> mu_paths = {0.0, 1.0, 0.0, -1.0};
  std::vector<double> nu_paths = {epsilon, 1.0, -epsilon, -1.0};
  std::vector<std::int64_t> counts = {1, 1};
  return {PathMeasureTree(dims, std::move(mu_paths), counts),
          PathMeasureTree(dims, std::move(nu_paths), counts)};
}

PathMeasureTree ground_truth_tree(const std::string& preset_or_path) {
  if (preset_or_path == "coin2") {
    std::vector<double> paths = {1, 1, 1, -1, -1, 1, -1, -1};
    return PathMeasureTree(Dims(1, 2), std::move(paths), {1, 1, 1, 1});
  }
  if (preset_or_path == "coin2_b75") {
    // P(+1) = 3/4 independently at each of the two steps.
    std::vector<double> paths = {1, 1, 1, -1, -1, 1, -1, -1};
    return PathMeasureTree(Dims(1, 2), std::move(paths), {9, 3, 3, 1});
  }
  if (preset_or_path == "walk3") {
    // +-1 random walk started at 0, three time points.
    std::vector<double> paths = {0, 1, 2,  0, 1, 0,  0, -1, 0,  0, -1, -2};
    return PathMeasureTree(Dims(1, 3), std::move(paths), {1, 1, 1, 1});
  }
  return read_tree_file(preset_or_path);
}

}  // namespace awt
