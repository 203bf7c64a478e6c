#include "ier/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "ier/errors.hpp"

namespace ier {

namespace {

void require_upper_half_plane(cplx z, const char* what) {
  if (!(z.imag() > 0.0)) throw DomainError(std::string(what) + ": Im z must be > 0");
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// Number of entries <= x, divided by the sample size.
double cdf(const std::vector<double>& sorted, double x) {
  return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) /
         static_cast<double>(sorted.size());
}

// sup_x G(x) - F(x + eps) - eps <= 0. The difference is a right-continuous
// step function whose pieces start at the jumps of G or at (jumps of F) - eps.
bool dominated(const std::vector<double>& f, const std::vector<double>& g, double eps) {
  constexpr double slack = 1e-15;
  for (double t : g)
    if (cdf(g, t) - cdf(f, t + eps) - eps > slack) return false;
  for (double a : f)
    if (cdf(g, a - eps) - cdf(f, a) - eps > slack) return false;
  return true;
}

}  // namespace

Histogram make_histogram(const std::vector<double>& sorted, std::optional<std::size_t> bins) {
  Histogram h;
  if (sorted.empty()) return h;
  const double lo = sorted.front(), hi = sorted.back();
  std::size_t nbins = 1;
  if (bins) {
    nbins = std::max<std::size_t>(1, *bins);
  } else if (hi > lo) {
    const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    if (width > 0.0) nbins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    nbins = std::clamp<std::size_t>(nbins, 1, 100000);
  }
  const double width = hi > lo ? (hi - lo) / static_cast<double>(nbins) : 1.0;
  h.edges.resize(nbins + 1);
  for (std::size_t b = 0; b <= nbins; ++b) h.edges[b] = lo + width * static_cast<double>(b);
  h.edges.back() = hi > lo ? hi : lo + 1.0;
  h.counts.assign(nbins, 0);
  for (double x : sorted) {
    auto b = static_cast<std::size_t>((x - lo) / width);
    ++h.counts[std::min(b, nbins - 1)];
  }
  return h;
}

SpectralReport make_report(std::vector<double> eigenvalues, SpectralMetadata metadata, int max_moment,
                           std::optional<std::size_t> bins) {
  SpectralReport r;
  std::sort(eigenvalues.begin(), eigenvalues.end());
  r.eigenvalues = std::move(eigenvalues);
  r.histogram = make_histogram(r.eigenvalues, bins);
  for (int k = 0; k <= max_moment; ++k) r.moments[k] = empirical_moment(r, k);
  r.metadata = std::move(metadata);
  return r;
}

double empirical_moment(const SpectralReport& r, int k) {
  if (k < 0) throw DomainError("empirical_moment: k must be >= 0");
  if (r.eigenvalues.empty()) throw DomainError("empirical_moment: empty spectrum");
  double s = 0.0;
  for (double x : r.eigenvalues) s += std::pow(x, k);
  return s / static_cast<double>(r.eigenvalues.size());
}

cplx empirical_stieltjes(const std::vector<double>& eigenvalues, cplx z) {
  require_upper_half_plane(z, "empirical_stieltjes");
  if (eigenvalues.empty()) throw DomainError("empirical_stieltjes: empty spectrum");
  cplx s = 0.0;
  for (double x : eigenvalues) s += 1.0 / (x - z);
  return s / static_cast<double>(eigenvalues.size());
}

cplx empirical_stieltjes(const SpectralReport& r, cplx z) { return empirical_stieltjes(r.eigenvalues, z); }

std::vector<cplx> resolvent_diagonal(const EigenDecomposition& eig, cplx z) {
  require_upper_half_plane(z, "resolvent_diagonal");
  const std::size_t n = eig.values.size();
  std::vector<cplx> diag(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx w = 1.0 / (eig.values[k] - z);
    const double* v = eig.vectors.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) diag[i] += v[i] * v[i] * w;
  }
  return diag;
}

std::vector<cplx> resolvent_diagonal(const DenseMatrix& m, cplx z, EigenBackend backend) {
  require_upper_half_plane(z, "resolvent_diagonal");
  return resolvent_diagonal(eigen_decompose(m, backend), z);
}

cplx compute_GN(const std::vector<cplx>& diag, double u) {
  if (!(u >= 0.0)) throw DomainError("compute_GN: u must be >= 0");
  if (diag.empty()) throw DomainError("compute_GN: empty resolvent diagonal");
  if (u == 0.0) return 1.0;
  cplx s = 0.0;
  for (const cplx& r : diag) s += std::exp(cplx(0.0, u) * r);
  return s / static_cast<double>(diag.size());
}

cplx compute_GN(const EigenDecomposition& eig, double u, cplx z) { return compute_GN(resolvent_diagonal(eig, z), u); }

double levy_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw DomainError("levy_distance: empty spectrum");
  if (a == b) return 0.0;
  auto ok = [&](double eps) { return dominated(a, b, eps) && dominated(b, a, eps); };
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

double levy_distance(const SpectralReport& a, const SpectralReport& b) {
  return levy_distance(a.eigenvalues, b.eigenvalues);
}

double hw_bound(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.size() != b.size()) throw DomainError("hw_bound: shape mismatch");
  if (a.size() == 0) throw DomainError("hw_bound: empty matrices");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size() * a.size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    s += d * d;
  }
  return s / static_cast<double>(a.size());
}

double hw_bound(const SparseSymmetric& a, const SparseSymmetric& b) {
  if (a.size() != b.size()) throw DomainError("hw_bound: shape mismatch");
  if (a.size() == 0) throw DomainError("hw_bound: empty matrices");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t p = a.row_ptr()[i], q = b.row_ptr()[i];
    const std::size_t pe = a.row_ptr()[i + 1], qe = b.row_ptr()[i + 1];
    while (p < pe || q < qe) {
      double d;
      if (q == qe || (p < pe && a.cols()[p] < b.cols()[q])) {
        d = a.values()[p++];
      } else if (p == pe || b.cols()[q] < a.cols()[p]) {
        d = -b.values()[q++];
      } else {
        d = a.values()[p++] - b.values()[q++];
      }
      s += d * d;
    }
  }
  return s / static_cast<double>(a.size());
}

}  // namespace ier
