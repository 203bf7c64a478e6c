#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ier/eigen.hpp"
#include "ier/linalg.hpp"

namespace ier {

using cplx = std::complex<double>;

struct Histogram {
  std::vector<double> edges;         // bins + 1 ascending edges
  std::vector<std::size_t> counts;   // last bin closed on the right
};

/// Freedman-Diaconis binning (width 2 IQR n^(-1/3)) of sorted data, or
/// exactly `bins` equal bins when given. Degenerate data gets one bin.
Histogram make_histogram(const std::vector<double>& sorted, std::optional<std::size_t> bins = std::nullopt);

struct SpectralMetadata {
  std::string config_hash;
  std::uint64_t seed = 0;
  double scale = 1.0;
};

/// Empirical spectral distribution of one matrix.
struct SpectralReport {
  std::vector<double> eigenvalues;  // ascending
  Histogram histogram;
  std::map<int, double> moments;    // k -> (1/N) sum lambda_i^k
  SpectralMetadata metadata;

  std::size_t size() const noexcept { return eigenvalues.size(); }
};

/// Sorts the eigenvalues and fills the histogram and moments k = 0..max_moment.
SpectralReport make_report(std::vector<double> eigenvalues, SpectralMetadata metadata = {}, int max_moment = 8,
                           std::optional<std::size_t> bins = std::nullopt);

/// (1/N) sum lambda_i^k.
double empirical_moment(const SpectralReport& r, int k);

/// (1/N) sum 1 / (lambda_i - z). DomainError unless Im z > 0.
cplx empirical_stieltjes(const SpectralReport& r, cplx z);
cplx empirical_stieltjes(const std::vector<double>& eigenvalues, cplx z);

/// Diagonal of (M - z)^(-1) from an eigendecomposition:
/// r_ii = sum_k v_k(i)^2 / (lambda_k - z).
std::vector<cplx> resolvent_diagonal(const EigenDecomposition& eig, cplx z);
std::vector<cplx> resolvent_diagonal(const DenseMatrix& m, cplx z, EigenBackend backend = EigenBackend::automatic);

/// G_N(u, z) = (1/N) sum_i exp(i u r_ii(z)) from a precomputed diagonal.
cplx compute_GN(const std::vector<cplx>& resolvent_diag, double u);
cplx compute_GN(const EigenDecomposition& eig, double u, cplx z);

/// Levy distance between the empirical distribution functions of two sorted
/// samples: the smallest eps with F(x - eps) - eps <= G(x) <= F(x + eps) + eps
/// for all x. Found by bisection to 1e-12 with an exact check at each step.
double levy_distance(const std::vector<double>& a_sorted, const std::vector<double>& b_sorted);
double levy_distance(const SpectralReport& a, const SpectralReport& b);

/// (1/N) sum_ij (a_ij - b_ij)^2.
double hw_bound(const DenseMatrix& a, const DenseMatrix& b);
double hw_bound(const SparseSymmetric& a, const SparseSymmetric& b);

}  // namespace ier
