#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ier/partitions.hpp"

namespace ier {

/// Nonnegative scalar profile r used to build rank-one and finite-rank kernels.
struct ScalarFunction {
  enum class Kind { constant, linear, saturating, power };

  Kind kind = Kind::constant;
  double scale = 1.0;     // a
  double exponent = 1.0;  // b: rate for saturating, power for power

  static ScalarFunction constant(double a) { return {Kind::constant, a, 1.0}; }
  /// a * x
  static ScalarFunction linear(double a = 1.0) { return {Kind::linear, a, 1.0}; }
  /// a * x / (1 + b x)
  static ScalarFunction saturating(double a = 1.0, double b = 1.0) { return {Kind::saturating, a, b}; }
  /// a * x^b
  static ScalarFunction power(double a, double b) { return {Kind::power, a, b}; }

  double operator()(double x) const;
  double sup(double support_max) const;
  double lipschitz(double support_max) const;
  std::string describe() const;
};

/// Symmetric connectivity function f on [0, inf)^2.
class Kernel {
 public:
  struct Constant {
    double value;
  };
  struct Rank1 {
    ScalarFunction r;
  };
  struct FiniteRank {
    std::vector<ScalarFunction> terms;
  };
  struct ChungLu {};
  struct Grg {};
  struct NorrosRiettu {};
  struct Tabulated {
    std::vector<double> grid;    // shared, strictly increasing axis
    std::vector<double> values;  // row-major grid.size() x grid.size(), symmetrised
    double declared_bound;
  };
  using Variant = std::variant<Constant, Rank1, FiniteRank, ChungLu, Grg, NorrosRiettu, Tabulated>;

  static Kernel constant(double c);
  static Kernel rank1(ScalarFunction r);
  static Kernel finite_rank(std::vector<ScalarFunction> terms);
  /// min(xy, 1)
  static Kernel chung_lu();
  /// xy / (1 + xy)
  static Kernel grg();
  /// 1 - exp(-xy)
  static Kernel norros_riettu();
  /// Bilinear interpolation of values on grid x grid; (values + values^T)/2 is
  /// stored. Evaluation outside the grid rectangle is a domain error.
  static Kernel tabulated(std::vector<double> grid, std::vector<double> values, double declared_bound);
  /// Reads `x,y,value` rows (optional header). The x and y values must form a
  /// full tensor grid over one common axis.
  static Kernel tabulated_from_csv(const std::string& path, double declared_bound);

  /// f(x, y). Throws DomainError for negative or non-finite arguments.
  double operator()(double x, double y) const;

  /// C_f: sup of f over [0, support_max]^2 (declared for tabulated kernels).
  double bound(double support_max) const;
  /// C_L: Lipschitz constant in one coordinate over [0, support_max]^2.
  double lipschitz(double support_max) const;

  std::string_view variant_name() const;
  std::string describe() const;
  const Variant& variant() const noexcept { return v_; }

  /// True when f does not depend on its arguments.
  bool is_constant() const noexcept { return std::holds_alternative<Constant>(v_); }

 private:
  explicit Kernel(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Samples `samples` points of [0, support_max]^2 and checks symmetry, the
/// range [0, C_f] and the Lipschitz bound. Throws ConfigError on violation.
void spot_check(const Kernel& f, double support_max, std::uint64_t seed = 0x5eed, int samples = 10000);

/// Law of the vertex weights.
class WeightModel {
 public:
  enum class Kind { empirical, discrete, uniform01 };

  static constexpr int kDefaultUniformResolution = 64;

  /// Uniform law on the given per-vertex weights (duplicates allowed).
  static WeightModel empirical(std::vector<double> weights);
  /// Atoms with probabilities; probabilities must sum to 1 within 1e-12.
  static WeightModel discrete(std::vector<double> atoms, std::vector<double> probs);
  /// Lebesgue measure on [0, 1], integrated with a fixed Gauss-Legendre rule.
  static WeightModel uniform01(int resolution = kDefaultUniformResolution);
  /// Point mass at c.
  static WeightModel dirac(double c) { return discrete({c}, {1.0}); }

  Kind kind() const noexcept { return kind_; }
  /// Integration nodes: weights in input order, atoms, or quadrature nodes.
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  /// Probability attached to each node.
  const std::vector<double>& masses() const noexcept { return masses_; }
  double support_max() const noexcept { return support_max_; }
  int resolution() const noexcept { return resolution_; }

  /// Equal nodes merged (masses added), sorted ascending. Identity for
  /// uniform01.
  WeightModel compressed() const;

  /// Draws a weight given a uniform variate u in [0, 1).
  double sample(double u) const;

  /// Sum of g(x) over the nodes weighted by their masses.
  template <class F>
  double integrate(F&& g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) s += masses_[i] * g(nodes_[i]);
    return s;
  }

  std::string describe() const;

 private:
  WeightModel() = default;

  Kind kind_ = Kind::discrete;
  std::vector<double> nodes_;
  std::vector<double> masses_;
  double support_max_ = 0.0;
  int resolution_ = 0;
};

/// d_f(y) = integral of f(x, y) mu(dx). For empirical laws this is
/// (1/N) sum_k f(w_k, y), summed in input order.
double mean_degree_function(const Kernel& f, const WeightModel& mu, double y);

/// Maximum number of weight assignments enumerated for graphs with cycles.
inline constexpr double kMaxDensityAssignments = 1e7;

/// t(H, f, mu): integral over the vertex weights of the product of f over the
/// distinct edges of H (self-loops contribute f(w, w)). Trees are evaluated
/// exactly by dynamic programming; other graphs by enumeration, refused with
/// ResourceError beyond kMaxDensityAssignments assignments.
double homomorphism_density(const PartitionGraph& h, const Kernel& f, const WeightModel& mu);

struct DensityEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

/// Monte Carlo estimate of t(H, f, mu) from i.i.d. weight draws.
DensityEstimate homomorphism_density_mc(const PartitionGraph& h, const Kernel& f, const WeightModel& mu,
                                        std::size_t samples, std::uint64_t seed);

}  // namespace ier
