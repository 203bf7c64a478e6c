#include "ier/moments.hpp"

#include <cmath>
#include <string>

#include "ier/errors.hpp"
#include "ier/parallel.hpp"

namespace ier {

namespace {

void check_order(int k, const char* what) {
  if (k < 0) throw DomainError(std::string(what) + ": moment order must be >= 0");
  if (k > kMaxMomentOrder)
    throw ResourceError(std::string(what) + ": moment order " + std::to_string(k) + " exceeds the cap " +
                        std::to_string(kMaxMomentOrder));
}

double lambda_power(double lambda, int exponent) {
  if (exponent == 0) return 1.0;
  if (std::isinf(lambda)) return 0.0;
  return std::pow(lambda, exponent);
}

}  // namespace

MomentReport limiting_moment(int k, double lambda, const Kernel& f, const WeightModel& mu) {
  check_order(k, "limiting_moment");
  if (!(lambda > 0.0)) throw DomainError("limiting_moment: lambda must be > 0");

  MomentReport report;
  report.k = k;
  report.lambda = lambda;
  if (k == 0) {
    report.value = report.nc2_part = 1.0;
    return report;
  }
  if (k % 2 == 1) return report;

  const auto ss = enumerate_ss(k);
  report.per_partition.resize(ss.size());
  parallel_for(ss.size(), [&](std::size_t i) {
    const auto graph = build_partition_graph(ss[i]);
    auto& c = report.per_partition[i];
    c.partition = ss[i];
    c.gamma_blocks = static_cast<int>(graph.vertex_count());
    c.exponent = c.gamma_blocks - 1 - k / 2;
    c.density = homomorphism_density(graph, f, mu);
  });
  for (const auto& c : report.per_partition) {
    const double term = lambda_power(lambda, c.exponent) * c.density;
    (c.exponent == 0 ? report.nc2_part : report.remainder) += term;
    report.value += term;
  }
  return report;
}

double dense_moment(int k, const Kernel& f, const WeightModel& mu) {
  check_order(k, "dense_moment");
  if (k == 0) return 1.0;
  double sum = 0.0;
  for (const auto& p : enumerate_nc2(k)) sum += homomorphism_density(build_partition_graph(p), f, mu);
  return sum;
}

double free_mult_semicircle_moment(int k, const WeightModel& mu) {
  check_order(k, "free_mult_semicircle_moment");
  if (k % 2 == 1) throw DomainError("free_mult_semicircle_moment: moment order must be even");
  if (k == 0) return 1.0;
  std::vector<double> power_moment(k + 1);
  for (int j = 0; j <= k; ++j) power_moment[j] = mu.integrate([&](double x) { return std::pow(x, j); });
  double sum = 0.0;
  for (const auto& p : enumerate_nc2(k)) {
    double term = 1.0;
    for (int size : kreweras_complement(p).block_sizes()) term *= power_moment[size];
    sum += term;
  }
  return sum;
}

}  // namespace ier
