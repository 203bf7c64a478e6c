#include "ier/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ier/errors.hpp"
#include "ier/parallel.hpp"
#include "ier/rng.hpp"

namespace ier {

namespace {

bool degree_based(ModelVariant v) {
  return v == ModelVariant::chung_lu || v == ModelVariant::grg || v == ModelVariant::norros_riettu;
}

std::uint64_t edge_stream(std::uint64_t replicate) { return mix64(streams::edges + replicate); }

using EdgeList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// Rows are split into interleaved chunks so each worker gets a similar share
// of the triangle; chunk outputs are concatenated in row order.
template <class Decide>
std::vector<EdgeList> sample_rows(std::size_t n, bool zero_diagonal, std::size_t outputs, Decide&& decide) {
  constexpr std::size_t kChunk = 64;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<EdgeList>> per_chunk(chunks, std::vector<EdgeList>(outputs));
  parallel_for(chunks, [&](std::size_t c) {
    auto& out = per_chunk[c];
    for (std::size_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i)
      for (std::size_t j = zero_diagonal ? i + 1 : i; j < n; ++j) decide(i, j, out);
  });
  std::vector<EdgeList> result(outputs);
  for (auto& chunk : per_chunk)
    for (std::size_t m = 0; m < outputs; ++m) result[m].insert(result[m].end(), chunk[m].begin(), chunk[m].end());
  return result;
}

}  // namespace

std::string_view to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::generic_ier:
      return "generic_ier";
    case ModelVariant::homogeneous:
      return "homogeneous";
    case ModelVariant::chung_lu:
      return "chung_lu";
    case ModelVariant::grg:
      return "grg";
    case ModelVariant::norros_riettu:
      return "norros_riettu";
  }
  return "unknown";
}

ModelVariant parse_model_variant(std::string_view name) {
  for (auto v : {ModelVariant::generic_ier, ModelVariant::homogeneous, ModelVariant::chung_lu, ModelVariant::grg,
                 ModelVariant::norros_riettu})
    if (to_string(v) == name) return v;
  throw ConfigError("unknown model variant '" + std::string(name) + "'");
}

double ResolvedEnsemble::probability(std::size_t i, std::size_t j) const {
  switch (variant) {
    case ModelVariant::homogeneous:
      return std::min(epsilon, 1.0);
    case ModelVariant::generic_ier:
      return std::min(epsilon * kernel(weights[i], weights[j]), 1.0);
    case ModelVariant::chung_lu:
      return std::min(degrees[i] * degrees[j] / m1, 1.0);
    case ModelVariant::grg: {
      const double dd = degrees[i] * degrees[j];
      return dd / (m1 + dd);
    }
    case ModelVariant::norros_riettu:
      return -std::expm1(-degrees[i] * degrees[j] / m1);
  }
  return 0.0;
}

ResolvedEnsemble resolve(const EnsembleConfig& config) {
  if (config.n == 0) throw DomainError("ensemble: N must be positive");
  if (config.n > std::numeric_limits<std::uint32_t>::max()) throw ResourceError("ensemble: N exceeds 2^32 - 1");
  const double n = static_cast<double>(config.n);

  ResolvedEnsemble r;
  r.n = config.n;
  r.variant = config.variant;
  r.kernel = config.kernel;
  r.zero_diagonal = config.zero_diagonal;
  r.scaling = config.scaling;
  r.seed = config.seed;

  if (degree_based(config.variant)) {
    if (config.degrees.empty()) {
      if (config.degree_min < 0 || config.degree_max < config.degree_min)
        throw DomainError("ensemble: invalid degree range");
      const auto span = static_cast<double>(config.degree_max - config.degree_min + 1);
      r.degrees.resize(config.n);
      for (std::size_t i = 0; i < config.n; ++i)
        r.degrees[i] = config.degree_min +
                       std::floor(span * counter_uniform(config.seed, streams::degrees, i, 0));
    } else {
      if (config.degrees.size() != config.n) throw DomainError("ensemble: degree vector length differs from N");
      r.degrees = config.degrees;
    }
    for (double d : r.degrees)
      if (!(d >= 0.0) || !std::isfinite(d)) throw DomainError("ensemble: degrees must be finite and >= 0");
    r.m1 = std::accumulate(r.degrees.begin(), r.degrees.end(), 0.0);
    r.m_inf = *std::max_element(r.degrees.begin(), r.degrees.end());
    if (!(r.m1 > 0.0)) throw DomainError("ensemble: degree sum m1 must be positive");
    r.epsilon = r.m_inf * r.m_inf / r.m1;
    r.lambda = n * r.epsilon;
    r.weights.resize(config.n);
    for (std::size_t i = 0; i < config.n; ++i) r.weights[i] = r.degrees[i] / r.m_inf;
    return r;
  }

  if (config.lambda.has_value() == config.epsilon.has_value())
    throw DomainError("ensemble: set exactly one of lambda and epsilon");
  if (config.lambda) {
    if (!(*config.lambda >= 0.0)) throw DomainError("ensemble: lambda must be >= 0");
    r.epsilon = *config.lambda / n;
  } else {
    if (!(*config.epsilon >= 0.0)) throw DomainError("ensemble: epsilon must be >= 0");
    r.epsilon = *config.epsilon;
  }
  r.lambda = n * r.epsilon;

  if (config.variant == ModelVariant::generic_ier) {
    const auto& mu = config.weights;
    if (mu.kind() == WeightModel::Kind::empirical) {
      if (mu.nodes().size() != config.n)
        throw DomainError("ensemble: empirical weight vector length differs from N");
      r.weights = mu.nodes();
    } else {
      r.weights.resize(config.n);
      for (std::size_t i = 0; i < config.n; ++i)
        r.weights[i] = mu.sample(counter_uniform(config.seed, streams::weights, i, 0));
    }
  } else {
    r.weights.assign(config.n, 1.0);
  }
  return r;
}

double edge_probability(const EnsembleConfig& config, std::size_t i, std::size_t j) {
  if (i >= config.n || j >= config.n) throw DomainError("edge_probability: vertex index out of range");
  return resolve(config).probability(i, j);
}

std::size_t Adjacency::self_loop_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const auto& e) { return e.first == e.second; }));
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Adjacency::difference(const Adjacency& a, const Adjacency& b) {
  if (a.n != b.n) throw DomainError("Adjacency::difference: size mismatch");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  std::set_symmetric_difference(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
                                std::back_inserter(out));
  return out;
}

Adjacency sample_adjacency(const ResolvedEnsemble& e, std::uint64_t replicate) {
  const std::uint64_t stream = edge_stream(replicate);
  auto lists = sample_rows(e.n, e.zero_diagonal, 1, [&](std::size_t i, std::size_t j, std::vector<EdgeList>& out) {
    if (counter_uniform(e.seed, stream, i, j) < e.probability(i, j))
      out[0].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  });
  return Adjacency{e.n, std::move(lists[0]), e.zero_diagonal};
}

Adjacency sample_adjacency(const EnsembleConfig& config, std::uint64_t replicate) {
  return sample_adjacency(resolve(config), replicate);
}

double matrix_scale(const ResolvedEnsemble& e) {
  const double s = e.scaling == Scaling::sparse
                       ? std::sqrt(e.lambda)
                       : std::sqrt(static_cast<double>(e.n) * e.epsilon * (1.0 - e.epsilon));
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("scale_matrix: normalising scale is zero");
  return s;
}

ScaledMatrix scale_matrix(const Adjacency& a, const ResolvedEnsemble& e) {
  if (a.n != e.n) throw DomainError("scale_matrix: adjacency and ensemble sizes differ");
  const double s = matrix_scale(e);
  return ScaledMatrix{SparseSymmetric::from_upper(a.n, a.edges, 1.0 / s), s, e.scaling};
}

std::vector<Adjacency> coupled_samples(const std::vector<EnsembleConfig>& configs, std::uint64_t seed,
                                       std::uint64_t replicate) {
  if (configs.empty()) return {};
  std::vector<ResolvedEnsemble> ens;
  for (auto c : configs) {
    if (c.n != configs.front().n) throw DomainError("coupled_sample: ensembles differ in N");
    c.seed = seed;
    ens.push_back(resolve(c));
  }
  const bool zero_diagonal = std::all_of(ens.begin(), ens.end(), [](const auto& e) { return e.zero_diagonal; });
  const std::uint64_t stream = edge_stream(replicate);
  auto lists = sample_rows(ens.front().n, zero_diagonal, ens.size(),
                           [&](std::size_t i, std::size_t j, std::vector<EdgeList>& out) {
                             const double u = counter_uniform(seed, stream, i, j);
                             for (std::size_t m = 0; m < ens.size(); ++m) {
                               if (i == j && ens[m].zero_diagonal) continue;
                               if (u < ens[m].probability(i, j))
                                 out[m].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
                             }
                           });
  std::vector<Adjacency> result;
  for (std::size_t m = 0; m < ens.size(); ++m)
    result.push_back(Adjacency{ens[m].n, std::move(lists[m]), ens[m].zero_diagonal});
  return result;
}

std::pair<Adjacency, Adjacency> coupled_sample(const EnsembleConfig& a, const EnsembleConfig& b, std::uint64_t seed,
                                               std::uint64_t replicate) {
  auto v = coupled_samples({a, b}, seed, replicate);
  return {std::move(v[0]), std::move(v[1])};
}

}  // namespace ier
