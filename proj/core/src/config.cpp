#include "ier/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "ier/errors.hpp"
#include "ier/format.hpp"

namespace ier {

namespace {

using json = nlohmann::json;

void only_keys(const json& obj, std::string_view section, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(section) + ": expected an object");
  const std::set<std::string_view> ok(allowed);
  for (const auto& [key, value] : obj.items())
    if (!ok.count(key)) throw ConfigError(std::string(section) + ": unknown key '" + key + "'");
}

template <class T>
T get(const json& obj, const char* key, std::string_view section) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(section) + "." + key + ": missing or wrong type");
  }
}

template <class T>
T get_or(const json& obj, const char* key, T fallback, std::string_view section) {
  return obj.contains(key) ? get<T>(obj, key, section) : fallback;
}

ScalarFunction parse_function(const json& j, std::string_view section) {
  only_keys(j, section, {"kind", "scale", "exponent"});
  const auto kind = get<std::string>(j, "kind", section);
  const double a = get_or(j, "scale", 1.0, section);
  const double b = get_or(j, "exponent", 1.0, section);
  if (kind == "constant") return ScalarFunction::constant(a);
  if (kind == "linear") return ScalarFunction::linear(a);
  if (kind == "saturating") return ScalarFunction::saturating(a, b);
  if (kind == "power") return ScalarFunction::power(a, b);
  throw ConfigError(std::string(section) + ": unknown function kind '" + kind + "'");
}

Kernel parse_kernel(const json& j, const std::filesystem::path& base_dir) {
  const std::string_view s = "kernel";
  only_keys(j, s, {"variant", "value", "r", "terms", "csv", "bound"});
  const auto variant = get<std::string>(j, "variant", s);
  if (variant == "constant") return Kernel::constant(get_or(j, "value", 1.0, s));
  if (variant == "rank1") return Kernel::rank1(parse_function(j.at("r"), "kernel.r"));
  if (variant == "finite_rank") {
    std::vector<ScalarFunction> terms;
    if (!j.contains("terms") || !j["terms"].is_array()) throw ConfigError("kernel.terms: expected an array");
    for (const auto& t : j["terms"]) terms.push_back(parse_function(t, "kernel.terms[]"));
    return Kernel::finite_rank(std::move(terms));
  }
  if (variant == "chung_lu") return Kernel::chung_lu();
  if (variant == "grg") return Kernel::grg();
  if (variant == "norros_riettu") return Kernel::norros_riettu();
  if (variant == "tabulated") {
    std::filesystem::path p = get<std::string>(j, "csv", s);
    if (p.is_relative()) p = base_dir / p;
    return Kernel::tabulated_from_csv(p.string(), get<double>(j, "bound", s));
  }
  throw ConfigError("kernel: unknown variant '" + variant + "'");
}

WeightModel parse_weights(const json& j) {
  const std::string_view s = "weights";
  only_keys(j, s, {"law", "value", "atoms", "probs", "values", "resolution"});
  const auto law = get<std::string>(j, "law", s);
  try {
    if (law == "dirac") return WeightModel::dirac(get_or(j, "value", 1.0, s));
    if (law == "discrete")
      return WeightModel::discrete(get<std::vector<double>>(j, "atoms", s), get<std::vector<double>>(j, "probs", s));
    if (law == "uniform01")
      return WeightModel::uniform01(get_or(j, "resolution", WeightModel::kDefaultUniformResolution, s));
    if (law == "empirical") return WeightModel::empirical(get<std::vector<double>>(j, "values", s));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("weights: ") + e.what());
  }
  throw ConfigError("weights: unknown law '" + law + "'");
}

void parse_ensemble(const json& j, EnsembleConfig& e) {
  const std::string_view s = "ensemble";
  only_keys(j, s,
            {"n", "lambda", "epsilon", "variant", "degrees", "degree_min", "degree_max", "seed", "zero_diagonal",
             "scaling"});
  e.n = get_or<std::size_t>(j, "n", e.n, s);
  if (j.contains("lambda")) e.lambda = get<double>(j, "lambda", s);
  if (j.contains("epsilon")) e.epsilon = get<double>(j, "epsilon", s);
  if (j.contains("variant")) e.variant = parse_model_variant(get<std::string>(j, "variant", s));
  e.degrees = get_or(j, "degrees", e.degrees, s);
  e.degree_min = get_or(j, "degree_min", e.degree_min, s);
  e.degree_max = get_or(j, "degree_max", e.degree_max, s);
  e.seed = get_or<std::uint64_t>(j, "seed", e.seed, s);
  e.zero_diagonal = get_or(j, "zero_diagonal", e.zero_diagonal, s);
  if (j.contains("scaling")) {
    const auto name = get<std::string>(j, "scaling", s);
    if (name == "sparse")
      e.scaling = Scaling::sparse;
    else if (name == "dense")
      e.scaling = Scaling::dense;
    else
      throw ConfigError("ensemble.scaling: expected 'sparse' or 'dense', got '" + name + "'");
  }
}

void parse_solver(const json& j, SolverConfig& c) {
  const std::string_view s = "solver";
  only_keys(j, s, {"z", "lambda", "v_max", "panels", "nodes_per_panel", "tol", "max_iter", "damping"});
  if (j.contains("z")) {
    const auto& z = j["z"];
    if (z.is_string())
      c.z = parse_complex(z.get<std::string>());
    else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number())
      c.z = {z[0].get<double>(), z[1].get<double>()};
    else
      throw ConfigError("solver.z: expected [re, im] or \"a+bi\"");
  }
  c.lambda = get_or(j, "lambda", c.lambda, s);
  c.v_max = get_or(j, "v_max", c.v_max, s);
  c.panels = get_or(j, "panels", c.panels, s);
  c.nodes_per_panel = get_or(j, "nodes_per_panel", c.nodes_per_panel, s);
  c.tol = get_or(j, "tol", c.tol, s);
  c.max_iter = get_or(j, "max_iter", c.max_iter, s);
  c.damping = get_or(j, "damping", c.damping, s);
  if (!(c.z.imag() > 0.0)) throw ConfigError("solver.z: Im z must be > 0");
  if (!(c.lambda > 0.0)) throw ConfigError("solver.lambda: must be > 0");
  if (!(c.tol > 0.0)) throw ConfigError("solver.tol: must be > 0");
  if (c.v_max != 0.0 && c.v_max * c.z.imag() < 30.0) throw ConfigError("solver.v_max: need v_max * Im z >= 30");
  if (c.panels < 1 || c.nodes_per_panel < 1 || c.max_iter < 1)
    throw ConfigError("solver: panels, nodes_per_panel and max_iter must be positive");
  if (!(c.damping > 0.0 && c.damping <= 1.0)) throw ConfigError("solver.damping: must lie in (0, 1]");
}

void parse_spectrum(const json& j, SpectrumOptions& o) {
  const std::string_view s = "spectrum";
  only_keys(j, s, {"backend", "bins", "max_moment", "replicates"});
  if (j.contains("backend")) o.backend = parse_eigen_backend(get<std::string>(j, "backend", s));
  if (j.contains("bins")) o.bins = get<std::size_t>(j, "bins", s);
  o.max_moment = get_or(j, "max_moment", o.max_moment, s);
  o.replicates = get_or(j, "replicates", o.replicates, s);
  if (o.replicates < 1) throw ConfigError("spectrum.replicates: must be >= 1");
  if (o.max_moment < 0) throw ConfigError("spectrum.max_moment: must be >= 0");
}

void parse_density(const json& j, DensityOptions& o) {
  const std::string_view s = "density";
  only_keys(j, s, {"x_min", "x_max", "points", "eta", "method"});
  o.x_min = get_or(j, "x_min", o.x_min, s);
  o.x_max = get_or(j, "x_max", o.x_max, s);
  o.points = get_or(j, "points", o.points, s);
  o.eta = get_or(j, "eta", o.eta, s);
  if (j.contains("method")) {
    const auto m = get<std::string>(j, "method", s);
    if (m == "sparse")
      o.method = DensityMethod::sparse;
    else if (m == "dense")
      o.method = DensityMethod::dense;
    else
      throw ConfigError("density.method: expected 'sparse' or 'dense', got '" + m + "'");
  }
  if (!(o.x_max > o.x_min) || o.points < 2) throw ConfigError("density: need x_max > x_min and points >= 2");
  if (!(o.eta > 0.0)) throw ConfigError("density.eta: must be > 0");
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(doc, "config", {"kernel", "weights", "ensemble", "solver", "moments", "spectrum", "density"});

  ExperimentConfig c;
  if (doc.contains("kernel")) c.kernel = parse_kernel(doc["kernel"], base_dir);
  if (doc.contains("weights")) c.weights = parse_weights(doc["weights"]);
  if (doc.contains("ensemble")) parse_ensemble(doc["ensemble"], c.ensemble);
  c.ensemble.kernel = c.kernel;
  c.ensemble.weights = c.weights;
  if (c.ensemble.lambda) c.solver.lambda = *c.ensemble.lambda;
  if (doc.contains("solver")) parse_solver(doc["solver"], c.solver);
  if (doc.contains("moments")) {
    only_keys(doc["moments"], "moments", {"k_max"});
    c.k_max = get_or(doc["moments"], "k_max", c.k_max, "moments");
  }
  if (doc.contains("spectrum")) parse_spectrum(doc["spectrum"], c.spectrum);
  if (doc.contains("density")) parse_density(doc["density"], c.density);
  c.canonical = doc.dump();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

ExperimentConfig default_config() { return parse_config("{}"); }

std::string config_hash(const ExperimentConfig& config) { return hex64(fnv1a(config.canonical)); }

}  // namespace ier
