#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ier/kernels.hpp"
#include "ier/linalg.hpp"

namespace ier {

enum class ModelVariant { generic_ier, homogeneous, chung_lu, grg, norros_riettu };

std::string_view to_string(ModelVariant v);
/// Throws ConfigError for unknown names.
ModelVariant parse_model_variant(std::string_view name);

/// How the adjacency matrix is normalised before spectral analysis.
enum class Scaling {
  sparse,  // M / sqrt(lambda), lambda = N eps
  dense,   // M / sqrt(N eps (1 - eps))
};

/// Recipe for one random graph. Vertex indices are 0-based throughout.
struct EnsembleConfig {
  std::size_t n = 0;
  /// Exactly one of lambda (eps = lambda / N) or epsilon must be set for the
  /// generic and homogeneous variants; degree-based variants derive both.
  std::optional<double> lambda;
  std::optional<double> epsilon;
  ModelVariant variant = ModelVariant::homogeneous;
  Kernel kernel = Kernel::constant(1.0);
  /// Empirical weights of length n are used as given; any other law is
  /// sampled i.i.d. per vertex from the seed.
  WeightModel weights = WeightModel::dirac(1.0);
  /// Degree sequence for chung_lu, grg and norros_riettu. Empty means i.i.d.
  /// uniform integers in [degree_min, degree_max] drawn from the seed.
  std::vector<double> degrees;
  int degree_min = 1;
  int degree_max = 5;
  std::uint64_t seed = 0;
  bool zero_diagonal = false;
  Scaling scaling = Scaling::sparse;
};

/// An EnsembleConfig with all random and derived quantities fixed.
struct ResolvedEnsemble {
  std::size_t n = 0;
  ModelVariant variant = ModelVariant::homogeneous;
  Kernel kernel = Kernel::constant(1.0);
  double epsilon = 0.0;
  double lambda = 0.0;         // realised N eps
  std::vector<double> weights;  // per vertex; d_i / m_inf for degree variants
  std::vector<double> degrees;  // degree variants only
  double m1 = 0.0;              // sum of degrees
  double m_inf = 0.0;           // max degree
  bool zero_diagonal = false;
  Scaling scaling = Scaling::sparse;
  std::uint64_t seed = 0;

  /// p_ij, clipped to [0, 1]. i == j gives the self-loop probability.
  double probability(std::size_t i, std::size_t j) const;
};

/// Validates the config and fixes weights and degrees. DomainError for
/// inconsistent input (missing sparsity, wrong weight length, m1 = 0, ...).
ResolvedEnsemble resolve(const EnsembleConfig& config);

/// p_ij for 0-based vertices i, j.
double edge_probability(const EnsembleConfig& config, std::size_t i, std::size_t j);

/// Symmetric 0/1 matrix stored as its sorted upper-triangle edge list.
struct Adjacency {
  std::size_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // i <= j, lexicographic
  bool zero_diagonal = false;

  std::size_t edge_count() const noexcept { return edges.size(); }
  std::size_t self_loop_count() const noexcept;
  /// Edges i <= j present in exactly one of a and b (symmetric difference).
  static std::vector<std::pair<std::uint32_t, std::uint32_t>> difference(const Adjacency& a, const Adjacency& b);
};

/// Independent Bernoulli(p_ij) for i < j (and i == j unless zero_diagonal).
/// Edge (i, j) of replicate r is decided by the counter uniform
/// U(seed, r, i, j), so results do not depend on the worker count.
Adjacency sample_adjacency(const ResolvedEnsemble& ensemble, std::uint64_t replicate = 0);
Adjacency sample_adjacency(const EnsembleConfig& config, std::uint64_t replicate = 0);

/// Scaled adjacency A = M / scale.
struct ScaledMatrix {
  SparseSymmetric matrix;
  double scale = 1.0;
  Scaling scaling = Scaling::sparse;
};

/// sqrt(lambda) or sqrt(N eps (1 - eps)); DomainError when zero.
double matrix_scale(const ResolvedEnsemble& ensemble);
ScaledMatrix scale_matrix(const Adjacency& a, const ResolvedEnsemble& ensemble);

/// Maximal coupling of several ensembles on the same vertex set: both configs
/// are resolved with `seed` (so degree draws coincide) and every edge is
/// decided for all ensembles by one shared uniform, X_m = [U < p_m].
std::vector<Adjacency> coupled_samples(const std::vector<EnsembleConfig>& configs, std::uint64_t seed,
                                       std::uint64_t replicate = 0);
std::pair<Adjacency, Adjacency> coupled_sample(const EnsembleConfig& a, const EnsembleConfig& b, std::uint64_t seed,
                                               std::uint64_t replicate = 0);

}  // namespace ier
