#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ier/eigen.hpp"
#include "ier/ensembles.hpp"
#include "ier/kernels.hpp"
#include "ier/stieltjes.hpp"

namespace ier {

struct SpectrumOptions {
  EigenBackend backend = EigenBackend::automatic;
  std::optional<std::size_t> bins;
  int max_moment = 8;
  int replicates = 1;
};

enum class DensityMethod { sparse, dense };

struct DensityOptions {
  double x_min = -3.0;
  double x_max = 3.0;
  int points = 600;
  double eta = 0.05;
  DensityMethod method = DensityMethod::sparse;
};

/// Everything a subcommand may need, parsed from one JSON document.
///
///   {
///     "kernel":   {"variant": "constant", "value": 1},
///     "weights":  {"law": "dirac", "value": 1},
///     "ensemble": {"n": 4000, "lambda": 10, "variant": "homogeneous", "seed": 1},
///     "solver":   {"z": [0, 2], "lambda": 10, "panels": 32},
///     "moments":  {"k_max": 8},
///     "spectrum": {"backend": "auto", "bins": 80, "max_moment": 8, "replicates": 1},
///     "density":  {"x_min": -3, "x_max": 3, "points": 600, "eta": 0.05, "method": "sparse"}
///   }
///
/// Every section is optional. Unknown keys anywhere are a ConfigError.
/// The ensemble uses the same kernel and weights as the limiting computations.
/// solver.lambda defaults to ensemble.lambda when only the latter is given.
struct ExperimentConfig {
  Kernel kernel = Kernel::constant(1.0);
  WeightModel weights = WeightModel::dirac(1.0);
  EnsembleConfig ensemble;
  SolverConfig solver;
  int k_max = 8;
  SpectrumOptions spectrum;
  DensityOptions density;
  /// Compact dump of the parsed document with sorted keys.
  std::string canonical;
};

/// Relative paths (tabulated kernel CSV) resolve against base_dir.
ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);
/// Defaults only; canonical is "{}".
ExperimentConfig default_config();

/// 16 hex digits of FNV-1a over the canonical text.
std::string config_hash(const ExperimentConfig& config);

}  // namespace ier
