// Seeded samplers for benchmark processes and small exact trees used as
// ground truth in distance tests.
#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "awt/core.hpp"
#include "awt/measure.hpp"

namespace awt {

enum class ModelKind {
  BlackScholesDisc,  // X_1 = 1, X_{t+1} = X_t + sqrt(dt) * X_t .* eps_t
  SdeDisc,           // Euler step with preset Lipschitz drift/vol
  GaussianWalk,      // X_1 = 0, X_{t+1} = X_t + eps_t
  ArOne,             // X_1 = 0, X_{t+1} = a * X_t + eps_t
  UniformCube,       // coordinates i.i.d. uniform on [-radius, radius]
  CustomTree,        // finitely supported law loaded from a tree dump/preset
};

const char* model_kind_name(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

struct ModelSpec {
  ModelKind kind = ModelKind::GaussianWalk;
  Dims dims;
  double dt = 0.01;        // BlackScholesDisc, SdeDisc
  int sde_preset = 0;      // 0: (0.1*x, 0.2*x); 1: (sin x, 1 + 0.5*cos x)
  double ar_coeff = 0.5;   // ArOne
  double cube_radius = 1.0;
  std::string tree = "coin2";  // CustomTree: preset name or dump-file path
  ModelMetadata metadata;
};

// Fills in the declared regularity metadata for the preset (never estimated).
ModelSpec with_default_metadata(ModelSpec spec);

// Deterministic in (spec, n, seed); one mt19937_64 stream, paths in order.
PathSample draw_paths(const ModelSpec& spec, std::int64_t n,
                      std::uint64_t seed);

// The classic two-atom pair with a small first-step split: mu has leaves
// (0,1),(0,-1), nu has leaves (eps,1),(-eps,-1), weights 1/2. Their flat
// distance is eps while the adapted distance is 1 + eps.
std::pair<PathMeasureTree, PathMeasureTree> gap_example_pair(double epsilon);

// Presets: "coin2" (iid uniform +-1, T=2), "coin2_b75" (P(+1)=3/4, T=2),
// "walk3" (+-1 random walk from 0, T=3). Anything else is read as a
// tree-dump file path.
PathMeasureTree ground_truth_tree(const std::string& preset_or_path);

}  // namespace awt
