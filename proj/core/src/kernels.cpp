#include "ier/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "ier/errors.hpp"
#include "ier/quadrature.hpp"
#include "ier/rng.hpp"

namespace ier {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError(std::string(what) + ": argument must be finite and >= 0");
}

}  // namespace

// ---------------------------------------------------------------------------
// ScalarFunction

double ScalarFunction::operator()(double x) const {
  switch (kind) {
    case Kind::constant:
      return scale;
    case Kind::linear:
      return scale * x;
    case Kind::saturating:
      return scale * x / (1.0 + exponent * x);
    case Kind::power:
      return scale * std::pow(x, exponent);
  }
  return 0.0;
}

double ScalarFunction::sup(double s) const {
  switch (kind) {
    case Kind::constant:
      return std::abs(scale);
    case Kind::linear:
      return std::abs(scale) * s;
    case Kind::saturating:
      return std::abs(scale) * s / (1.0 + exponent * s);
    case Kind::power:
      return exponent >= 0.0 ? std::abs(scale) * std::pow(s, exponent) : std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

double ScalarFunction::lipschitz(double s) const {
  switch (kind) {
    case Kind::constant:
      return 0.0;
    case Kind::linear:
    case Kind::saturating:
      return std::abs(scale);
    case Kind::power:
      if (exponent == 0.0) return 0.0;
      if (exponent < 1.0) return std::numeric_limits<double>::infinity();
      return std::abs(scale) * exponent * std::pow(s, exponent - 1.0);
  }
  return 0.0;
}

std::string ScalarFunction::describe() const {
  switch (kind) {
    case Kind::constant:
      return fmt(scale);
    case Kind::linear:
      return fmt(scale) + "*x";
    case Kind::saturating:
      return fmt(scale) + "*x/(1+" + fmt(exponent) + "*x)";
    case Kind::power:
      return fmt(scale) + "*x^" + fmt(exponent);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Kernel

Kernel Kernel::constant(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("constant kernel: value must be finite and >= 0");
  return Kernel(Constant{c});
}

Kernel Kernel::rank1(ScalarFunction r) {
  if (r.scale < 0.0) throw DomainError("rank1 kernel: profile scale must be >= 0");
  return Kernel(Rank1{r});
}

Kernel Kernel::finite_rank(std::vector<ScalarFunction> terms) {
  if (terms.empty()) throw DomainError("finite_rank kernel: need at least one term");
  for (const auto& r : terms)
    if (r.scale < 0.0) throw DomainError("finite_rank kernel: profile scales must be >= 0");
  return Kernel(FiniteRank{std::move(terms)});
}

Kernel Kernel::chung_lu() { return Kernel(ChungLu{}); }
Kernel Kernel::grg() { return Kernel(Grg{}); }
Kernel Kernel::norros_riettu() { return Kernel(NorrosRiettu{}); }

Kernel Kernel::tabulated(std::vector<double> grid, std::vector<double> values, double declared_bound) {
  const std::size_t n = grid.size();
  if (n < 2) throw ConfigError("tabulated kernel: need at least two grid points");
  if (values.size() != n * n) throw ConfigError("tabulated kernel: value table must be grid.size()^2");
  for (std::size_t i = 1; i < n; ++i)
    if (!(grid[i] > grid[i - 1])) throw ConfigError("tabulated kernel: grid must be strictly increasing");
  if (grid.front() < 0.0) throw ConfigError("tabulated kernel: grid must lie in [0, inf)");
  if (!(declared_bound > 0.0)) throw ConfigError("tabulated kernel: declared bound must be > 0");

  std::vector<double> sym(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double a = values[i * n + j];
      const double b = values[j * n + i];
      if (!std::isfinite(a)) throw ConfigError("tabulated kernel: non-finite value");
      sym[i * n + j] = 0.5 * (a + b);
    }
  for (double v : sym)
    if (v < 0.0 || v > declared_bound)
      throw ConfigError("tabulated kernel: value " + fmt(v) + " outside [0, declared bound " + fmt(declared_bound) + "]");
  return Kernel(Tabulated{std::move(grid), std::move(sym), declared_bound});
}

Kernel Kernel::tabulated_from_csv(const std::string& path, double declared_bound) {
  std::ifstream in(path);
  if (!in) throw ConfigError("tabulated kernel: cannot open " + path);
  std::map<std::pair<double, double>, double> table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x = 0, y = 0, v = 0;
    if (!(row >> x >> y >> v)) {
      if (lineno == 1) continue;  // header
      throw ConfigError("tabulated kernel: malformed row " + std::to_string(lineno) + " in " + path);
    }
    table[{x, y}] = v;
  }
  std::vector<double> axis;
  for (const auto& [key, _] : table) axis.push_back(key.first);
  for (const auto& [key, _] : table) axis.push_back(key.second);
  std::sort(axis.begin(), axis.end());
  axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  const std::size_t n = axis.size();
  std::vector<double> values(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto it = table.find({axis[i], axis[j]});
      if (it == table.end()) it = table.find({axis[j], axis[i]});
      if (it == table.end())
        throw ConfigError("tabulated kernel: missing grid point (" + fmt(axis[i]) + ", " + fmt(axis[j]) + ")");
      values[i * n + j] = it->second;
    }
  return tabulated(std::move(axis), std::move(values), declared_bound);
}

double Kernel::operator()(double x, double y) const {
  require_nonnegative(x, "kernel");
  require_nonnegative(y, "kernel");
  return std::visit(
      Overloaded{
          [](const Constant& c) { return c.value; },
          [&](const Rank1& k) { return k.r(x) * k.r(y); },
          [&](const FiniteRank& k) {
            double s = 0.0;
            for (const auto& r : k.terms) s += r(x) * r(y);
            return s;
          },
          [&](const ChungLu&) { return std::min(x * y, 1.0); },
          [&](const Grg&) { return x * y / (1.0 + x * y); },
          [&](const NorrosRiettu&) { return -std::expm1(-x * y); },
          [&](const Tabulated& t) {
            const auto& g = t.grid;
            const std::size_t n = g.size();
            if (x < g.front() || x > g.back() || y < g.front() || y > g.back())
              throw DomainError("tabulated kernel: (" + fmt(x) + ", " + fmt(y) + ") outside the table [" +
                                fmt(g.front()) + ", " + fmt(g.back()) + "]^2");
            auto cell = [&](double v) {
              std::size_t i = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), v) - g.begin());
              return std::min(std::max<std::size_t>(i, 1), n - 1) - 1;
            };
            const std::size_t i = cell(x), j = cell(y);
            const double tx = (x - g[i]) / (g[i + 1] - g[i]);
            const double ty = (y - g[j]) / (g[j + 1] - g[j]);
            const auto v = [&](std::size_t a, std::size_t b) { return t.values[a * n + b]; };
            return (1 - tx) * (1 - ty) * v(i, j) + tx * (1 - ty) * v(i + 1, j) + (1 - tx) * ty * v(i, j + 1) +
                   tx * ty * v(i + 1, j + 1);
          },
      },
      v_);
}

double Kernel::bound(double s) const {
  return std::visit(Overloaded{
                        [](const Constant& c) { return c.value; },
                        [&](const Rank1& k) { return k.r.sup(s) * k.r.sup(s); },
                        [&](const FiniteRank& k) {
                          double b = 0.0;
                          for (const auto& r : k.terms) b += r.sup(s) * r.sup(s);
                          return b;
                        },
                        [&](const ChungLu&) { return std::min(s * s, 1.0); },
                        [&](const Grg&) { return s * s / (1.0 + s * s); },
                        [&](const NorrosRiettu&) { return -std::expm1(-s * s); },
                        [](const Tabulated& t) { return t.declared_bound; },
                    },
                    v_);
}

double Kernel::lipschitz(double s) const {
  return std::visit(Overloaded{
                        [](const Constant&) { return 0.0; },
                        [&](const Rank1& k) { return k.r.lipschitz(s) * k.r.sup(s); },
                        [&](const FiniteRank& k) {
                          double b = 0.0;
                          for (const auto& r : k.terms) b += r.lipschitz(s) * r.sup(s);
                          return b;
                        },
                        // d/dx of each profile is at most y <= s
                        [&](const ChungLu&) { return s; },
                        [&](const Grg&) { return s; },
                        [&](const NorrosRiettu&) { return s; },
                        [](const Tabulated& t) {
                          const std::size_t n = t.grid.size();
                          double l = 0.0;
                          for (std::size_t i = 0; i + 1 < n; ++i)
                            for (std::size_t j = 0; j < n; ++j)
                              l = std::max(l, std::abs(t.values[(i + 1) * n + j] - t.values[i * n + j]) /
                                                  (t.grid[i + 1] - t.grid[i]));
                          return l;
                        },
                    },
                    v_);
}

std::string_view Kernel::variant_name() const {
  return std::visit(Overloaded{
                        [](const Constant&) { return std::string_view("constant"); },
                        [](const Rank1&) { return std::string_view("rank1"); },
                        [](const FiniteRank&) { return std::string_view("finite_rank"); },
                        [](const ChungLu&) { return std::string_view("chung_lu"); },
                        [](const Grg&) { return std::string_view("grg"); },
                        [](const NorrosRiettu&) { return std::string_view("norros_riettu"); },
                        [](const Tabulated&) { return std::string_view("tabulated"); },
                    },
                    v_);
}

std::string Kernel::describe() const {
  return std::visit(Overloaded{
                        [](const Constant& c) { return "constant(" + fmt(c.value) + ")"; },
                        [](const Rank1& k) { return "rank1(" + k.r.describe() + ")"; },
                        [](const FiniteRank& k) {
                          std::string s = "finite_rank(";
                          for (std::size_t i = 0; i < k.terms.size(); ++i)
                            s += (i ? ", " : "") + k.terms[i].describe();
                          return s + ")";
                        },
                        [](const ChungLu&) { return std::string("chung_lu"); },
                        [](const Grg&) { return std::string("grg"); },
                        [](const NorrosRiettu&) { return std::string("norros_riettu"); },
                        [](const Tabulated& t) {
                          return "tabulated(" + std::to_string(t.grid.size()) + "x" + std::to_string(t.grid.size()) +
                                 ")";
                        },
                    },
                    v_);
}

void spot_check(const Kernel& f, double support_max, std::uint64_t seed, int samples) {
  double lo = 0.0, hi = support_max;
  if (const auto* t = std::get_if<Kernel::Tabulated>(&f.variant())) {
    lo = std::max(lo, t->grid.front());
    hi = std::min(hi, t->grid.back());
  }
  const double cf = f.bound(support_max);
  const double cl = f.lipschitz(support_max);
  CounterRng rng(seed, streams::checks);
  auto draw = [&] { return lo + (hi - lo) * rng.uniform(); };
  for (int s = 0; s < samples; ++s) {
    const double x1 = draw(), x2 = draw(), y = draw();
    const double a = f(x1, y);
    const double b = f(y, x1);
    const double tol = 1e-12 * std::max(1.0, std::abs(a));
    if (std::abs(a - b) > tol)
      throw ConfigError("kernel " + f.describe() + " is not symmetric at (" + fmt(x1) + ", " + fmt(y) + ")");
    if (a < -tol || a > cf + tol)
      throw ConfigError("kernel " + f.describe() + " value " + fmt(a) + " outside [0, " + fmt(cf) + "]");
    const double c = f(x2, y);
    if (std::abs(a - c) > cl * std::abs(x1 - x2) * (1.0 + 1e-9) + tol)
      throw ConfigError("kernel " + f.describe() + " violates its Lipschitz constant " + fmt(cl));
  }
}

// ---------------------------------------------------------------------------
// WeightModel

WeightModel WeightModel::empirical(std::vector<double> weights) {
  if (weights.empty()) throw DomainError("empirical weights: need at least one weight");
  WeightModel m;
  m.kind_ = Kind::empirical;
  for (double w : weights) require_nonnegative(w, "empirical weights");
  m.support_max_ = *std::max_element(weights.begin(), weights.end());
  m.masses_.assign(weights.size(), 1.0 / static_cast<double>(weights.size()));
  m.nodes_ = std::move(weights);
  return m;
}

WeightModel WeightModel::discrete(std::vector<double> atoms, std::vector<double> probs) {
  if (atoms.empty() || atoms.size() != probs.size())
    throw DomainError("discrete weights: atoms and probabilities must be non-empty and of equal length");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("discrete weights: probabilities must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("discrete weights: probabilities sum to " + fmt(total));
  for (double a : atoms) require_nonnegative(a, "discrete weights");
  WeightModel m;
  m.kind_ = Kind::discrete;
  m.support_max_ = *std::max_element(atoms.begin(), atoms.end());
  m.nodes_ = std::move(atoms);
  m.masses_ = std::move(probs);
  return m;
}

WeightModel WeightModel::uniform01(int resolution) {
  if (resolution < 1) throw DomainError("uniform01 weights: resolution must be >= 1");
  auto rule = gauss_legendre(resolution, 0.0, 1.0);
  WeightModel m;
  m.kind_ = Kind::uniform01;
  m.support_max_ = 1.0;
  m.resolution_ = resolution;
  m.nodes_ = std::move(rule.nodes);
  m.masses_ = std::move(rule.weights);
  return m;
}

WeightModel WeightModel::compressed() const {
  if (kind_ == Kind::uniform01) return *this;
  std::vector<std::size_t> order(nodes_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nodes_[a] < nodes_[b]; });
  WeightModel m;
  m.kind_ = Kind::discrete;
  m.support_max_ = support_max_;
  for (std::size_t idx : order) {
    if (!m.nodes_.empty() && m.nodes_.back() == nodes_[idx]) {
      m.masses_.back() += masses_[idx];
    } else {
      m.nodes_.push_back(nodes_[idx]);
      m.masses_.push_back(masses_[idx]);
    }
  }
  return m;
}

double WeightModel::sample(double u) const {
  switch (kind_) {
    case Kind::uniform01:
      return u;
    case Kind::empirical: {
      const auto i = std::min(nodes_.size() - 1, static_cast<std::size_t>(u * static_cast<double>(nodes_.size())));
      return nodes_[i];
    }
    case Kind::discrete: {
      double acc = 0.0;
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        acc += masses_[i];
        if (u < acc) return nodes_[i];
      }
      return nodes_.back();
    }
  }
  return 0.0;
}

std::string WeightModel::describe() const {
  switch (kind_) {
    case Kind::uniform01:
      return "uniform01(" + std::to_string(resolution_) + ")";
    case Kind::empirical:
      return "empirical(" + std::to_string(nodes_.size()) + ")";
    case Kind::discrete:
      return "discrete(" + std::to_string(nodes_.size()) + " atoms)";
  }
  return {};
}

double mean_degree_function(const Kernel& f, const WeightModel& mu, double y) {
  if (mu.kind() == WeightModel::Kind::empirical) {
    double s = 0.0;
    for (double w : mu.nodes()) s += f(w, y);
    return s / static_cast<double>(mu.nodes().size());
  }
  return mu.integrate([&](double x) { return f(x, y); });
}

// ---------------------------------------------------------------------------
// Homomorphism densities

namespace {

struct DensityGraph {
  int v = 0;
  std::vector<std::pair<int, int>> edges;  // distinct non-loop edges
  std::vector<int> loops;                  // vertices carrying a self-loop
};

DensityGraph simplify(const PartitionGraph& h) {
  DensityGraph g;
  g.v = static_cast<int>(h.vertex_count());
  for (const auto& e : h.edges) {
    if (e.a == e.b)
      g.loops.push_back(e.a);
    else
      g.edges.emplace_back(e.a, e.b);
  }
  return g;
}

// f on the node grid; tabulated up front unless the grid is large.
class NodeKernel {
 public:
  static constexpr std::size_t kMaxTabulated = 2048;

  NodeKernel(const Kernel& f, const std::vector<double>& x) : f_(f), x_(x), n_(x.size()) {
    if (n_ > kMaxTabulated) return;
    table_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) table_[i * n_ + j] = table_[j * n_ + i] = f(x[i], x[j]);
  }

  double operator()(std::size_t i, std::size_t j) const {
    return table_.empty() ? f_(x_[i], x_[j]) : table_[i * n_ + j];
  }

 private:
  const Kernel& f_;
  const std::vector<double>& x_;
  std::size_t n_;
  std::vector<double> table_;
};

}  // namespace

double homomorphism_density(const PartitionGraph& h, const Kernel& f, const WeightModel& mu) {
  const DensityGraph g = simplify(h);
  if (g.v == 0) return 1.0;
  const WeightModel w = mu.compressed();
  const auto& x = w.nodes();
  const auto& p = w.masses();
  const std::size_t n = x.size();
  const NodeKernel fm(f, x);

  std::vector<double> vertex_factor(static_cast<std::size_t>(g.v) * n, 1.0);
  for (int a : g.loops)
    for (std::size_t i = 0; i < n; ++i) vertex_factor[a * n + i] *= fm(i, i);

  std::vector<std::vector<int>> adj(g.v);
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  // Forest test: count components by DFS and compare edge count.
  std::vector<int> component(g.v, -1);
  int components = 0;
  std::vector<int> order, parent(g.v, -1);
  for (int s = 0; s < g.v; ++s) {
    if (component[s] >= 0) continue;
    std::vector<int> stack{s};
    component[s] = components;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      order.push_back(a);
      for (int b : adj[a])
        if (component[b] < 0) {
          component[b] = components;
          parent[b] = a;
          stack.push_back(b);
        }
    }
    ++components;
  }

  if (static_cast<int>(g.edges.size()) == g.v - components) {
    // Leaves first: fold each vertex's table into its parent.
    std::vector<double> table = vertex_factor;
    double result = 1.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int a = *it;
      const double* ta = &table[a * n];
      if (parent[a] < 0) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += p[i] * ta[i];
        result *= s;
        continue;
      }
      double* tp = &table[parent[a] * n];
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += p[j] * fm(i, j) * ta[j];
        tp[i] *= s;
      }
    }
    return result;
  }

  const double assignments = std::pow(static_cast<double>(n), g.v);
  if (assignments > kMaxDensityAssignments)
    throw ResourceError("homomorphism_density: " + fmt(assignments) + " weight assignments exceed the cap " +
                        fmt(kMaxDensityAssignments) + "; use homomorphism_density_mc for a Monte Carlo estimate");

  std::vector<std::size_t> idx(g.v, 0);
  double total = 0.0;
  while (true) {
    double term = 1.0;
    for (int a = 0; a < g.v; ++a) term *= p[idx[a]] * vertex_factor[a * n + idx[a]];
    for (auto [a, b] : g.edges) term *= fm(idx[a], idx[b]);
    total += term;
    int pos = g.v - 1;
    while (pos >= 0 && ++idx[pos] == n) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return total;
}

DensityEstimate homomorphism_density_mc(const PartitionGraph& h, const Kernel& f, const WeightModel& mu,
                                        std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw DomainError("homomorphism_density_mc: need at least two samples");
  const DensityGraph g = simplify(h);
  CounterRng rng(seed, streams::monte_carlo);
  std::vector<double> w(g.v);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& wi : w) wi = mu.sample(rng.uniform());
    double term = 1.0;
    for (auto [a, b] : g.edges) term *= f(w[a], w[b]);
    for (int a : g.loops) term *= f(w[a], w[a]);
    const double delta = term - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (term - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {mean, std::sqrt(var / static_cast<double>(samples)), samples};
}

}  // namespace ier
