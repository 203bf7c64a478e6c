#include "ier/eigen.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ier/errors.hpp"

namespace ier {

namespace {

void validate(const DenseMatrix& m) {
  if (m.size() > kMaxDenseEigenSize)
    throw ResourceError("eigensolver: N = " + std::to_string(m.size()) + " exceeds the dense cap " +
                        std::to_string(kMaxDenseEigenSize));
  double scale = 0.0;
  for (std::size_t i = 0; i < m.size() * m.size(); ++i) scale = std::max(scale, std::abs(m.data()[i]));
  if (m.asymmetry() > kSymmetryTolerance * std::max(1.0, scale))
    throw DomainError("eigensolver: matrix is not symmetric");
}

EigenBackend pick(EigenBackend b, std::size_t n) {
  if (b != EigenBackend::automatic) return b;
  return n > kAutoLapackThreshold ? EigenBackend::lapack : EigenBackend::householder_ql;
}

// Householder reduction of the symmetric matrix `a` (n x n, row-major) to
// tridiagonal form: diagonal d, sub-diagonal e[1..n-1] (e[0] = 0). With
// `want_vectors` the orthogonal transform Q is left in `a` with
// a(k, i) = component k of basis vector i.
void tridiagonalize(std::vector<double>& a, std::size_t n, std::vector<double>& d, std::vector<double>& e,
                    bool want_vectors) {
  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(A(i, k));
      if (scale == 0.0) {
        e[i] = A(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          A(i, k) /= scale;
          h += A(i, k) * A(i, k);
        }
        double f = A(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        A(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          if (want_vectors) A(j, i) = A(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
          e[j] = g / h;
          f += e[j] * A(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = A(i, j);
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k) A(j, k) -= f * e[k] + g * A(i, k);
        }
      }
    } else {
      e[i] = A(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (want_vectors) {
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < i; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k < i; ++k) g += A(i, k) * A(k, j);
          for (std::size_t k = 0; k < i; ++k) A(k, j) -= g * A(k, i);
        }
      }
      d[i] = A(i, i);
      A(i, i) = 1.0;
      for (std::size_t j = 0; j < i; ++j) A(j, i) = A(i, j) = 0.0;
    } else {
      d[i] = A(i, i);
    }
  }
}

// Implicit QL with Wilkinson-type shifts on the tridiagonal (d, e). `z`, when
// non-null, holds basis vectors as rows (z[k * n + i] = component i of vector
// k) and receives the same rotations.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::size_t n, double* z) {
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  if (n > 0) e[n - 1] = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm = std::max(norm, std::abs(d[i]) + std::abs(e[i]));
  const double floor = 1e-17 * norm;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::max(1e-14 * dd, floor)) break;
      }
      if (m == l) break;
      if (++iter > 60) throw ConvergenceError("tridiagonal QL: no convergence", std::abs(e[l]), iter);
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        e[i + 1] = r = std::hypot(f, g);
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (z) {
          double* zi = z + i * n;
          double* zj = z + (i + 1) * n;
          for (std::size_t k = 0; k < n; ++k) {
            f = zj[k];
            zj[k] = s * zi[k] + c * f;
            zi[k] = c * zi[k] - s * f;
          }
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

EigenDecomposition householder_ql(const DenseMatrix& m, bool want_vectors) {
  const std::size_t n = m.size();
  std::vector<double> a(m.data(), m.data() + n * n);
  std::vector<double> d, e;
  EigenDecomposition out;
  if (n == 0) return out;
  tridiagonalize(a, n, d, e, want_vectors);
  if (want_vectors) {
    // rows of the transpose are the basis vectors
    std::vector<double> zt(n * n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) zt[i * n + k] = a[k * n + i];
    tridiagonal_ql(d, e, n, zt.data());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
    out.values.resize(n);
    out.vectors = DenseMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
      out.values[k] = d[order[k]];
      std::copy_n(&zt[order[k] * n], n, &out.vectors(k, 0));
    }
  } else {
    tridiagonal_ql(d, e, n, nullptr);
    std::sort(d.begin(), d.end());
    out.values = std::move(d);
  }
  return out;
}

EigenDecomposition lapack(const DenseMatrix& m, bool want_vectors) {
  const auto n = static_cast<lapack_int>(m.size());
  EigenDecomposition out;
  if (n == 0) return out;
  std::vector<double> a(m.data(), m.data() + m.size() * m.size());
  out.values.resize(m.size());
  // Column-major view of a symmetric matrix is the same data; LAPACK leaves
  // eigenvector k in column k, which is row k of our row-major storage.
  const lapack_int info = want_vectors
                              ? LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, out.values.data())
                              : LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, out.values.data());
  if (info != 0) throw ConvergenceError("LAPACK symmetric eigensolver failed, info = " + std::to_string(info), 0.0, 0);
  if (want_vectors) out.vectors = DenseMatrix(m.size(), std::move(a));
  return out;
}

}  // namespace

std::string_view to_string(EigenBackend b) {
  switch (b) {
    case EigenBackend::automatic:
      return "auto";
    case EigenBackend::householder_ql:
      return "householder_ql";
    case EigenBackend::lapack:
      return "lapack";
  }
  return "auto";
}

EigenBackend parse_eigen_backend(std::string_view name) {
  for (auto b : {EigenBackend::automatic, EigenBackend::householder_ql, EigenBackend::lapack})
    if (to_string(b) == name) return b;
  throw ConfigError("unknown eigen backend '" + std::string(name) + "'");
}

std::vector<double> eigenvalues_symmetric(const DenseMatrix& m, EigenBackend backend) {
  validate(m);
  return pick(backend, m.size()) == EigenBackend::lapack ? lapack(m, false).values : householder_ql(m, false).values;
}

EigenDecomposition eigen_decompose(const DenseMatrix& m, EigenBackend backend) {
  validate(m);
  return pick(backend, m.size()) == EigenBackend::lapack ? lapack(m, true) : householder_ql(m, true);
}

std::vector<double> eigenvalues_symmetric(const SparseSymmetric& m, EigenBackend backend) {
  if (m.size() > kMaxDenseEigenSize)
    throw ResourceError("eigensolver: N = " + std::to_string(m.size()) + " exceeds the dense cap " +
                        std::to_string(kMaxDenseEigenSize));
  std::vector<double> values;
  values.reserve(m.size());
  for (const auto& comp : m.components()) {
    if (comp.size() == 1) {
      const auto i = comp.front();
      double v = 0.0;
      for (std::size_t p = m.row_ptr()[i]; p < m.row_ptr()[i + 1]; ++p) v += m.values()[p];
      values.push_back(v);
      continue;
    }
    const auto part = eigenvalues_symmetric(m.principal_dense(comp), backend);
    values.insert(values.end(), part.begin(), part.end());
  }
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace ier
