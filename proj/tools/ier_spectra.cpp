// ier_spectra: command line front end for the ier core library.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ier/config.hpp"
#include "ier/errors.hpp"
#include "ier/experiments.hpp"
#include "ier/format.hpp"
#include "ier/moments.hpp"
#include "ier/partitions.hpp"
#include "ier/stieltjes.hpp"

namespace {

using json = nlohmann::json;
using namespace ier;

ExperimentConfig load_or_default(const std::string& path) { return path.empty() ? default_config() : load_config(path); }

// Writes to `path`, or stdout when the path is empty or "-".
template <class Body>
void emit(const std::string& path, Body&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  body(out);
}

HeaderFields provenance(const ExperimentConfig& cfg, std::uint64_t seed) {
  return {{"config_hash", config_hash(cfg)}, {"seed", std::to_string(seed)}};
}

double parse_lambda(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfiniteLambda;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("cannot parse lambda '" + text + "'");
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto dash = text.find('-');
  try {
    if (dash != std::string::npos && text.find(',') == std::string::npos) {
      const auto lo = std::stoull(text.substr(0, dash)), hi = std::stoull(text.substr(dash + 1));
      if (hi < lo) throw ConfigError("empty seed range '" + text + "'");
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      return seeds;
    }
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) seeds.push_back(std::stoull(item));
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse seeds '" + text + "' (use 1,2,3 or 1-20)");
  }
  if (seeds.empty()) throw ConfigError("no seeds given");
  return seeds;
}

int run_partitions(int k, const std::string& which, const std::string& part, bool graphs) {
  if (!part.empty()) {
    const auto p = Partition::parse(part);
    json out{{"partition", p.to_string()},
             {"special_symmetric", is_special_symmetric(p)},
             {"gamma_pi", compose_gamma(p).to_string()}};
    const auto g = build_partition_graph(p);
    out["graph"] = {{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"is_tree", is_tree(g)}};
    if (p.is_pair_partition() && p.is_noncrossing()) out["kreweras"] = kreweras_complement(p).to_string();
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  std::vector<Partition> list;
  if (which == "all")
    list = enumerate_set_partitions(k);
  else if (which == "ss")
    list = enumerate_ss(k);
  else if (which == "nc2")
    list = enumerate_nc2(k);
  else
    throw ConfigError("--kind must be all, ss or nc2");
  for (const auto& p : list) {
    std::cout << p.to_string();
    if (graphs) {
      const auto g = build_partition_graph(p);
      std::cout << "  gamma_pi=" << compose_gamma(p).to_string() << " vertices=" << g.vertex_count()
                << " edges=" << g.edge_count() << " tree=" << (is_tree(g) ? "yes" : "no");
    }
    std::cout << '\n';
  }
  std::cout << "# count: " << list.size() << '\n';
  return 0;
}

int run_moments(const ExperimentConfig& cfg, const std::string& lambda_text, int k_max, const std::string& out) {
  const double lambda = lambda_text.empty() ? cfg.solver.lambda : parse_lambda(lambda_text);
  std::vector<double> ks, values, nc2, rest, dense;
  for (int k = 0; k <= k_max; ++k) {
    const auto r = limiting_moment(k, lambda, cfg.kernel, cfg.weights);
    ks.push_back(k);
    values.push_back(r.value);
    nc2.push_back(r.nc2_part);
    rest.push_back(r.remainder);
    dense.push_back(dense_moment(k, cfg.kernel, cfg.weights));
  }
  emit(out, [&](std::ostream& os) {
    auto h = provenance(cfg, 0);
    h.emplace_back("lambda", format_double(lambda));
    write_comment_header(os, h);
    write_columns_csv(os, {"k", "moment", "nc2_part", "remainder", "dense_moment"}, {ks, values, nc2, rest, dense});
  });
  return 0;
}

int run_sample(const ExperimentConfig& cfg, std::uint64_t replicate, const std::string& out) {
  const auto resolved = resolve(cfg.ensemble);
  const auto adj = sample_adjacency(resolved, replicate);
  emit(out, [&](std::ostream& os) {
    auto h = provenance(cfg, cfg.ensemble.seed);
    h.emplace_back("replicate", std::to_string(replicate));
    h.emplace_back("n", std::to_string(adj.n));
    h.emplace_back("lambda", format_double(resolved.lambda));
    h.emplace_back("edges", std::to_string(adj.edge_count()));
    write_comment_header(os, h);
    os << "i,j\n";
    for (const auto& [i, j] : adj.edges) os << i << ',' << j << '\n';
  });
  return 0;
}

int run_spectrum(const ExperimentConfig& cfg, const std::string& out_dir) {
  const auto hash = config_hash(cfg);
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  for (int r = 0; r < cfg.spectrum.replicates; ++r) {
    const auto rep = static_cast<std::uint64_t>(r);
    const auto report = sample_spectrum(cfg.ensemble, rep, cfg.spectrum, hash);
    auto header = provenance(cfg, cfg.ensemble.seed);
    header.emplace_back("replicate", std::to_string(r));
    header.emplace_back("scale", format_double(report.metadata.scale));
    for (const auto& [k, m] : report.moments) header.emplace_back("m" + std::to_string(k), format_double(m));
    const std::string stem = out_dir.empty() ? "" : out_dir + "/replicate_" + std::to_string(r);
    emit(stem.empty() ? "" : stem + "_hist.csv", [&](std::ostream& os) {
      write_comment_header(os, header);
      write_histogram_csv(os, report.histogram, report.size());
    });
    if (!stem.empty())
      emit(stem + "_eigenvalues.csv", [&](std::ostream& os) {
        write_comment_header(os, header);
        write_columns_csv(os, {"eigenvalue"}, {report.eigenvalues});
      });
  }
  return 0;
}

int run_stieltjes(ExperimentConfig cfg, const std::string& z_text, const std::string& lambda_text, bool dense,
                  const std::string& out) {
  if (!z_text.empty()) cfg.solver.z = parse_complex(z_text);
  if (!lambda_text.empty()) cfg.solver.lambda = parse_lambda(lambda_text);
  json doc{{"config_hash", config_hash(cfg)}, {"z", format_complex(cfg.solver.z)}};
  if (dense) {
    const auto d = stieltjes_dense(cfg.solver.z, cfg.kernel, cfg.weights);
    doc["method"] = "dense";
    doc["stieltjes"] = {{"re", d.value.real()}, {"im", d.value.imag()}};
    doc["iterations"] = d.iterations;
    doc["residual"] = d.residual;
  } else {
    const FixedPointProblem problem(cfg.solver, cfg.kernel, cfg.weights);
    const auto sol = solve_fixed_point(problem);
    const auto st = problem.stieltjes(sol.phi);
    doc["method"] = "sparse";
    doc["lambda"] = cfg.solver.lambda;
    doc["stieltjes"] = {{"re", st.real()}, {"im", st.imag()}};
    doc["iterations"] = sol.iterations;
    doc["residual"] = sol.residual;
    doc["v_max"] = problem.v_max();
    doc["u_max"] = problem.u_max();
    doc["truncation_bound"] = problem.truncation_bound();
    doc["max_exponential"] = problem.max_exponential(sol.phi);
  }
  emit(out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return 0;
}

int run_density(ExperimentConfig cfg, const std::string& lambda_text, const std::string& out) {
  if (!lambda_text.empty()) cfg.solver.lambda = parse_lambda(lambda_text);
  if (cfg.density.method == DensityMethod::sparse) {
    cfg.solver.damping = std::min(cfg.solver.damping, 0.5);
    cfg.solver.max_iter = std::max(cfg.solver.max_iter, 2000);
  }
  const auto curve = density_curve(cfg.kernel, cfg.weights, cfg.solver, cfg.density);
  emit(out, [&](std::ostream& os) {
    auto h = provenance(cfg, 0);
    h.emplace_back("method", cfg.density.method == DensityMethod::sparse ? "sparse" : "dense");
    h.emplace_back("lambda", format_double(cfg.solver.lambda));
    h.emplace_back("eta", format_double(cfg.density.eta));
    h.emplace_back("failures", std::to_string(curve.failures));
    write_comment_header(os, h);
    write_columns_csv(os, {"x", "density"}, {curve.x, curve.density});
  });
  return curve.failures == 0 ? 0 : exit_code(ErrorKind::convergence);
}

int run_compare(const std::string& a, const std::string& b, const std::string& seeds, bool hw_only,
                const std::string& backend, const std::string& out) {
  const auto ca = load_config(a), cb = load_config(b);
  CompareOptions opt;
  opt.spectra = !hw_only;
  opt.backend = parse_eigen_backend(backend);
  const auto report = compare(ca.ensemble, cb.ensemble, parse_seeds(seeds), opt);
  emit(out, [&](std::ostream& os) { os << report.to_json() << '\n'; });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limiting spectra of sparse inhomogeneous random graphs"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker cap (overrides IER_SPECTRA_THREADS)")->check(CLI::PositiveNumber);

  std::string config_path, out, lambda_text, z_text;

  auto* partitions = app.add_subcommand("partitions", "Enumerate or inspect set partitions");
  int k = 4;
  std::string kind = "ss", part;
  bool graphs = false;
  partitions->add_option("-k", k, "Ground set size")->check(CLI::Range(1, kMaxEnumeratedSize));
  partitions->add_option("--kind", kind, "all, ss or nc2");
  partitions->add_option("--inspect", part, "Show gamma pi, graph and Kreweras complement of e.g. {1,2|3,4}");
  partitions->add_flag("--graph", graphs, "Print gamma pi and graph summary per partition");

  auto* moments = app.add_subcommand("moments", "Limiting moments from SS partitions");
  int k_max = -1;
  moments->add_option("--config", config_path)->check(CLI::ExistingFile);
  moments->add_option("--lambda", lambda_text, "Sparsity (or inf)");
  moments->add_option("--k-max", k_max)->check(CLI::Range(0, kMaxMomentOrder));
  moments->add_option("--out", out);

  auto* sample = app.add_subcommand("sample", "Sample one adjacency matrix as an edge list");
  std::uint64_t replicate = 0;
  sample->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  sample->add_option("--replicate", replicate);
  sample->add_option("--out", out);

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues, histogram and moments of sampled matrices");
  std::string out_dir;
  spectrum->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  spectrum->add_option("--out-dir", out_dir);

  auto* stieltjes = app.add_subcommand("stieltjes", "Limiting Stieltjes transform at one point");
  bool dense = false;
  stieltjes->add_option("--config", config_path)->check(CLI::ExistingFile);
  stieltjes->add_option("--z", z_text, "e.g. 0+2i");
  stieltjes->add_option("--lambda", lambda_text);
  stieltjes->add_flag("--dense", dense, "Solve the dense equation instead");
  stieltjes->add_option("--out", out);

  auto* density = app.add_subcommand("density", "Limiting density on a grid");
  std::optional<double> eta, xmin, xmax;
  std::optional<int> points;
  std::string method;
  density->add_option("--config", config_path)->check(CLI::ExistingFile);
  density->add_option("--lambda", lambda_text);
  density->add_option("--eta", eta);
  density->add_option("--xmin", xmin);
  density->add_option("--xmax", xmax);
  density->add_option("--n", points, "Grid points");
  density->add_option("--method", method, "sparse or dense");
  density->add_option("--out", out);

  auto* cmp = app.add_subcommand("compare", "Coupled comparison of two ensembles");
  std::string config_a, config_b, seeds = "1", backend = "auto";
  bool hw_only = false;
  cmp->add_option("--config-a", config_a)->required()->check(CLI::ExistingFile);
  cmp->add_option("--config-b", config_b)->required()->check(CLI::ExistingFile);
  cmp->add_option("--seeds", seeds, "1,2,3 or 1-20");
  cmp->add_option("--backend", backend);
  cmp->add_flag("--hw-only", hw_only, "Skip eigensolves");
  cmp->add_option("--out", out);

  auto* figure = app.add_subcommand("figure", "Reproduce a figure pipeline");
  std::string name;
  FigureOptions fig;
  bool no_overlay = false;
  figure->add_option("--name", name)->required()->check(CLI::IsMember(figure_names()));
  figure->add_option("--out-dir", out_dir)->required();
  figure->add_option("--seed", fig.seed);
  figure->add_option("--n", fig.n);
  figure->add_option("--eta", fig.eta);
  figure->add_option("--points", fig.overlay_points);
  figure->add_flag("--no-overlay", no_overlay);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code(ErrorKind::config);
  }

  if (threads > 0) setenv("IER_SPECTRA_THREADS", std::to_string(threads).c_str(), 1);

  try {
    if (*partitions) return run_partitions(k, kind, part, graphs);
    if (*moments) {
      const auto cfg = load_or_default(config_path);
      return run_moments(cfg, lambda_text, k_max >= 0 ? k_max : cfg.k_max, out);
    }
    if (*sample) return run_sample(load_config(config_path), replicate, out);
    if (*spectrum) return run_spectrum(load_config(config_path), out_dir);
    if (*stieltjes) return run_stieltjes(load_or_default(config_path), z_text, lambda_text, dense, out);
    if (*density) {
      auto cfg = load_or_default(config_path);
      if (eta) cfg.density.eta = *eta;
      if (xmin) cfg.density.x_min = *xmin;
      if (xmax) cfg.density.x_max = *xmax;
      if (points) cfg.density.points = *points;
      if (method == "dense") cfg.density.method = DensityMethod::dense;
      else if (method == "sparse") cfg.density.method = DensityMethod::sparse;
      else if (!method.empty()) throw ConfigError("--method must be sparse or dense");
      return run_density(cfg, lambda_text, out);
    }
    if (*cmp) return run_compare(config_a, config_b, seeds, hw_only, backend, out);
    if (*figure) {
      fig.out_dir = out_dir;
      fig.overlay = !no_overlay;
      const auto result = run_figure(name, fig);
      for (const auto& f : result.files) std::cout << f.string() << '\n';
      for (std::size_t i = 0; i < result.pairwise_levy.size(); ++i)
        std::cout << "# levy[" << i << "]: " << format_double(result.pairwise_levy[i]) << '\n';
      return result.overlay.failures == 0 ? 0 : exit_code(ErrorKind::convergence);
    }
  } catch (const ier::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return exit_code(ErrorKind::resource);
  }
  return 0;
}
