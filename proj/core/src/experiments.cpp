#include "ier/experiments.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "ier/errors.hpp"
#include "ier/format.hpp"
#include "ier/stieltjes.hpp"

namespace ier {

namespace {

using json = nlohmann::json;

std::vector<double> linspace(double a, double b, int points) {
  std::vector<double> x(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) x[static_cast<std::size_t>(i)] = a + (b - a) * i / (points - 1);
  return x;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

struct FigurePlan {
  std::vector<std::pair<std::string, EnsembleConfig>> panels;
  bool coupled = false;
  Kernel limit_kernel = Kernel::constant(1.0);
  WeightModel limit_weights = WeightModel::dirac(1.0);
};

FigurePlan plan_figure(std::string_view name, const FigureOptions& o) {
  FigurePlan plan;
  EnsembleConfig base;
  base.n = o.n;
  base.seed = o.seed;
  if (name == "errg_lam5" || name == "errg_lam10") {
    base.variant = ModelVariant::homogeneous;
    base.lambda = name == "errg_lam5" ? 5.0 : 10.0;
    plan.panels.emplace_back(std::string(name), base);
    return plan;
  }
  if (name == "cl_grg_nr") {
    plan.coupled = true;
    for (auto v : {ModelVariant::chung_lu, ModelVariant::grg, ModelVariant::norros_riettu}) {
      base.variant = v;
      plan.panels.emplace_back(std::string(to_string(v)), base);
    }
    // all three are eps * x y + O(eps^2) in the rescaled degrees d_i / m_inf
    const auto resolved = resolve(plan.panels.front().second);
    plan.limit_kernel = Kernel::rank1(ScalarFunction::linear());
    plan.limit_weights = WeightModel::empirical(resolved.weights).compressed();
    return plan;
  }
  if (name == "irg_lam5" || name == "irg_lam10") {
    base.variant = ModelVariant::generic_ier;
    base.lambda = name == "irg_lam5" ? 5.0 : 10.0;
    base.kernel = Kernel::finite_rank({ScalarFunction::saturating(1.0, 1.0), ScalarFunction::linear()});
    std::vector<double> w(o.n);
    for (std::size_t i = 0; i < o.n; ++i) w[i] = static_cast<double>(i + 1) / static_cast<double>(o.n);
    base.weights = WeightModel::empirical(std::move(w));
    plan.panels.emplace_back(std::string(name), base);
    plan.limit_kernel = base.kernel;
    plan.limit_weights = WeightModel::uniform01();
    return plan;
  }
  throw ConfigError("unknown figure '" + std::string(name) + "'");
}

}  // namespace

DensityCurve density_curve(const Kernel& f, const WeightModel& mu, const SolverConfig& solver,
                           const DensityOptions& options) {
  if (!(options.eta > 0.0)) throw DomainError("density_curve: eta must be > 0");
  if (options.points < 2 || !(options.x_max > options.x_min))
    throw DomainError("density_curve: need x_max > x_min and at least 2 points");
  DensityCurve curve;
  curve.x = linspace(options.x_min, options.x_max, options.points);
  curve.density.resize(curve.x.size());
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    const cplx z{curve.x[i], options.eta};
    try {
      cplx st;
      if (options.method == DensityMethod::dense) {
        st = stieltjes_dense(z, f, mu).value;
      } else {
        SolverConfig c = solver;
        c.z = z;
        if (c.v_max * options.eta < 30.0) c.v_max = 0.0;
        st = stieltjes_sparse(c, f, mu);
      }
      curve.density[i] = st.imag() / std::numbers::pi;
    } catch (const ConvergenceError&) {
      curve.density[i] = std::numeric_limits<double>::quiet_NaN();
      ++curve.failures;
    }
  }
  return curve;
}

SpectralReport sample_spectrum(const EnsembleConfig& config, std::uint64_t replicate, const SpectrumOptions& options,
                               const std::string& config_hash) {
  const auto resolved = resolve(config);
  const auto scaled = scale_matrix(sample_adjacency(resolved, replicate), resolved);
  auto values = eigenvalues_symmetric(scaled.matrix, options.backend);
  return make_report(std::move(values), {config_hash, config.seed, scaled.scale}, options.max_moment, options.bins);
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"errg_lam5", "errg_lam10", "cl_grg_nr", "irg_lam5", "irg_lam10"};
  return names;
}

FigureResult run_figure(std::string_view name, const FigureOptions& o) {
  const auto plan = plan_figure(name, o);

  FigureResult result;
  result.name = std::string(name);
  json key{{"figure", result.name}, {"n", o.n},       {"seed", o.seed},       {"eta", o.eta},
           {"x_min", o.x_min},      {"x_max", o.x_max}, {"points", o.overlay_points}};
  if (o.bins) key["bins"] = *o.bins;
  result.config_hash = hex64(fnv1a(key.dump()));

  SpectrumOptions spectrum;
  spectrum.backend = o.backend;
  spectrum.bins = o.bins;

  std::vector<Adjacency> coupled;
  if (plan.coupled) {
    std::vector<EnsembleConfig> configs;
    for (const auto& [label, cfg] : plan.panels) configs.push_back(cfg);
    coupled = coupled_samples(configs, o.seed);
  }
  for (std::size_t p = 0; p < plan.panels.size(); ++p) {
    const auto& [label, cfg] = plan.panels[p];
    const auto resolved = resolve(cfg);
    FigurePanel panel{label, resolved.lambda, {}};
    if (plan.coupled) {
      const auto scaled = scale_matrix(coupled[p], resolved);
      panel.report = make_report(eigenvalues_symmetric(scaled.matrix, o.backend),
                                 {result.config_hash, o.seed, scaled.scale}, spectrum.max_moment, o.bins);
    } else {
      panel.report = sample_spectrum(cfg, 0, spectrum, result.config_hash);
    }
    result.panels.push_back(std::move(panel));
  }
  for (std::size_t a = 0; a < result.panels.size(); ++a)
    for (std::size_t b = a + 1; b < result.panels.size(); ++b)
      result.pairwise_levy.push_back(levy_distance(result.panels[a].report, result.panels[b].report));

  if (o.overlay) {
    // realised lambda of the first panel; the coupled panels share it
    SolverConfig solver;
    solver.lambda = result.panels.front().lambda;
    solver.damping = 0.5;
    solver.max_iter = 2000;
    DensityOptions d;
    d.x_min = o.x_min;
    d.x_max = o.x_max;
    d.points = o.overlay_points;
    d.eta = o.eta;
    result.overlay = density_curve(plan.limit_kernel, plan.limit_weights, solver, d);
  }

  if (!o.out_dir.empty()) {
    std::filesystem::create_directories(o.out_dir);
    for (const auto& panel : result.panels) {
      const auto path = o.out_dir / (result.name == panel.label ? result.name + "_hist.csv"
                                                                 : result.name + "_" + panel.label + "_hist.csv");
      auto out = open_output(path);
      HeaderFields h{{"figure", result.name},
                     {"panel", panel.label},
                     {"config_hash", result.config_hash},
                     {"seed", std::to_string(o.seed)},
                     {"n", std::to_string(o.n)},
                     {"lambda", format_double(panel.lambda)},
                     {"scale", format_double(panel.report.metadata.scale)}};
      for (const auto& [k, m] : panel.report.moments) h.emplace_back("m" + std::to_string(k), format_double(m));
      write_comment_header(out, h);
      write_histogram_csv(out, panel.report.histogram, panel.report.size());
      result.files.push_back(path);
    }
    if (o.overlay) {
      const auto path = o.out_dir / (result.name + "_overlay.csv");
      auto out = open_output(path);
      write_comment_header(out, {{"figure", result.name},
                                 {"config_hash", result.config_hash},
                                 {"seed", std::to_string(o.seed)},
                                 {"eta", format_double(o.eta)},
                                 {"lambda", format_double(result.panels.front().lambda)},
                                 {"limit_kernel", plan.limit_kernel.describe()},
                                 {"limit_weights", plan.limit_weights.describe()},
                                 {"failures", std::to_string(result.overlay.failures)}});
      write_columns_csv(out, {"x", "density"}, {result.overlay.x, result.overlay.density});
      result.files.push_back(path);
    }
  }
  return result;
}

std::string CompareReport::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows)
    rows_json.push_back({{"seed", r.seed},
                         {"levy", r.levy},
                         {"hw_bound", r.hw},
                         {"levy_cubed", r.levy * r.levy * r.levy},
                         {"violation", r.violation},
                         {"differing_edges", r.differing_edges}});
  json doc{{"n", n}, {"rows", rows_json}, {"violations", violations}, {"mean_levy", mean_levy}, {"mean_hw_bound", mean_hw}};
  return doc.dump(2);
}

CompareReport compare(const EnsembleConfig& a, const EnsembleConfig& b, const std::vector<std::uint64_t>& seeds,
                      const CompareOptions& options) {
  if (a.n != b.n)
    throw ConfigError("compare: N differs (" + std::to_string(a.n) + " vs " + std::to_string(b.n) + ")");
  if (seeds.empty()) throw ConfigError("compare: no seeds given");
  CompareReport report;
  report.n = a.n;
  for (std::uint64_t seed : seeds) {
    auto ca = a, cb = b;
    ca.seed = cb.seed = seed;
    const auto ra = resolve(ca), rb = resolve(cb);
    const auto [ga, gb] = coupled_sample(ca, cb, seed);
    const auto ma = scale_matrix(ga, ra), mb = scale_matrix(gb, rb);

    CompareRow row;
    row.seed = seed;
    row.differing_edges = Adjacency::difference(ga, gb).size();
    row.hw = hw_bound(ma.matrix, mb.matrix);
    if (options.spectra) {
      const auto ea = eigenvalues_symmetric(ma.matrix, options.backend);
      const auto eb = eigenvalues_symmetric(mb.matrix, options.backend);
      row.levy = levy_distance(ea, eb);
      // the bisection returns an upper bracket at most 1e-12 above the distance
      const double lower = std::max(0.0, row.levy - 1e-12);
      row.violation = lower * lower * lower > row.hw;
    }
    report.violations += row.violation ? 1 : 0;
    report.mean_levy += row.levy / static_cast<double>(seeds.size());
    report.mean_hw += row.hw / static_cast<double>(seeds.size());
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace ier
