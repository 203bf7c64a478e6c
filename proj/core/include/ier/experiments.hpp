#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ier/config.hpp"
#include "ier/ensembles.hpp"
#include "ier/spectra.hpp"

namespace ier {

struct DensityCurve {
  std::vector<double> x;
  std::vector<double> density;  // NaN where the solver did not converge
  std::size_t failures = 0;
};

/// Limiting density on an equispaced grid, by the sparse fixed point (lambda
/// from `solver`) or the dense equation. Each grid point is solved
/// independently at z = x + i eta.
DensityCurve density_curve(const Kernel& f, const WeightModel& mu, const SolverConfig& solver,
                           const DensityOptions& options);

/// Spectrum of one scaled sample.
SpectralReport sample_spectrum(const EnsembleConfig& config, std::uint64_t replicate, const SpectrumOptions& options,
                               const std::string& config_hash = {});

struct FigureOptions {
  std::filesystem::path out_dir;  // empty: nothing written
  std::uint64_t seed = 1;
  std::size_t n = 10000;
  EigenBackend backend = EigenBackend::automatic;
  std::optional<std::size_t> bins;
  double eta = 0.05;
  double x_min = -3.0;
  double x_max = 3.0;
  int overlay_points = 121;
  bool overlay = true;
};

struct FigurePanel {
  std::string label;
  double lambda = 0.0;  // realised N eps
  SpectralReport report;
};

struct FigureResult {
  std::string name;
  std::string config_hash;
  std::vector<FigurePanel> panels;
  /// Shared limiting density; empty when overlays are disabled.
  DensityCurve overlay;
  /// Levy distances between panels (0,1), (0,2), (1,2), ... when there are several.
  std::vector<double> pairwise_levy;
  std::vector<std::filesystem::path> files;
};

/// errg_lam5, errg_lam10, cl_grg_nr, irg_lam5, irg_lam10.
const std::vector<std::string>& figure_names();

/// Samples the named ensemble and writes <name>_hist.csv (one block of rows
/// per panel) and <name>_overlay.csv. ConfigError for unknown names.
///
/// The dense eigensolve at N = 10000 holds two 800 MB matrices.
FigureResult run_figure(std::string_view name, const FigureOptions& options);

struct CompareRow {
  std::uint64_t seed = 0;
  double levy = 0.0;
  double hw = 0.0;
  bool violation = false;  // levy^3 > hw
  std::size_t differing_edges = 0;
};

struct CompareReport {
  std::size_t n = 0;
  std::vector<CompareRow> rows;
  std::size_t violations = 0;
  double mean_levy = 0.0;
  double mean_hw = 0.0;

  std::string to_json() const;
};

struct CompareOptions {
  EigenBackend backend = EigenBackend::automatic;
  /// false: only the coupling bound, no eigensolves (levy left at 0).
  bool spectra = true;
};

/// For each seed, couples the two ensembles edge by edge and compares the
/// spectra of the scaled matrices. ConfigError when the sizes differ.
CompareReport compare(const EnsembleConfig& a, const EnsembleConfig& b, const std::vector<std::uint64_t>& seeds,
                      const CompareOptions& options = {});

}  // namespace ier
