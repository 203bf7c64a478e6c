#include "ier/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ier/errors.hpp"
#include "ier/parallel.hpp"

namespace ier {

DenseMatrix::DenseMatrix(std::size_t n, std::vector<double> row_major) : n_(n), data_(std::move(row_major)) {
  if (data_.size() != n * n) throw DomainError("DenseMatrix: data size does not match n*n");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double DenseMatrix::asymmetry() const noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

double DenseMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double DenseMatrix::frobenius_norm_squared() const noexcept {
  return std::inner_product(data_.begin(), data_.end(), data_.begin(), 0.0);
}

std::vector<double> DenseMatrix::multiply(const std::vector<double>& x) const {
  if (x.size() != n_) throw DomainError("DenseMatrix::multiply: dimension mismatch");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = &data_[i * n_];
    y[i] = std::inner_product(row, row + n_, x.begin(), 0.0);
  }
  return y;
}

SparseSymmetric SparseSymmetric::from_upper(std::size_t n,
                                            const std::vector<std::pair<std::uint32_t, std::uint32_t>>& entries,
                                            const std::vector<double>& values) {
  if (entries.size() != values.size()) throw DomainError("SparseSymmetric: entries and values differ in length");
  SparseSymmetric m;
  m.n_ = n;
  std::vector<std::size_t> count(n + 1, 0);
  for (auto [i, j] : entries) {
    if (i > j || j >= n) throw DomainError("SparseSymmetric: entries must satisfy i <= j < n");
    ++count[i + 1];
    if (i != j) ++count[j + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());
  m.row_ptr_ = count;
  m.cols_.resize(count[n]);
  m.values_.resize(count[n]);
  std::vector<std::size_t> fill(count.begin(), count.end() - 1);
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto [i, j] = entries[e];
    m.cols_[fill[i]] = j;
    m.values_[fill[i]++] = values[e];
    if (i != j) {
      m.cols_[fill[j]] = i;
      m.values_[fill[j]++] = values[e];
    }
  }
  // sort each row by column
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t lo = m.row_ptr_[r], hi = m.row_ptr_[r + 1];
    std::vector<std::size_t> idx(hi - lo);
    std::iota(idx.begin(), idx.end(), lo);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return m.cols_[a] < m.cols_[b]; });
    std::vector<std::uint32_t> c(idx.size());
    std::vector<double> v(idx.size());
    for (std::size_t t = 0; t < idx.size(); ++t) {
      c[t] = m.cols_[idx[t]];
      v[t] = m.values_[idx[t]];
    }
    std::copy(c.begin(), c.end(), m.cols_.begin() + static_cast<std::ptrdiff_t>(lo));
    std::copy(v.begin(), v.end(), m.values_.begin() + static_cast<std::ptrdiff_t>(lo));
  }
  return m;
}

SparseSymmetric SparseSymmetric::from_upper(std::size_t n,
                                            const std::vector<std::pair<std::uint32_t, std::uint32_t>>& entries,
                                            double value) {
  return from_upper(n, entries, std::vector<double>(entries.size(), value));
}

std::vector<double> SparseSymmetric::multiply(const std::vector<double>& x) const {
  if (x.size() != n_) throw DomainError("SparseSymmetric::multiply: dimension mismatch");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += values_[p] * x[cols_[p]];
    y[i] = s;
  }
  return y;
}

double SparseSymmetric::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      if (cols_[p] == i) t += values_[p];
  return t;
}

double SparseSymmetric::frobenius_norm_squared() const noexcept {
  return std::inner_product(values_.begin(), values_.end(), values_.begin(), 0.0);
}

DenseMatrix SparseSymmetric::to_dense() const {
  DenseMatrix d(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) d(i, cols_[p]) = values_[p];
  return d;
}

std::vector<double> SparseSymmetric::normalized_trace_powers(int k_max) const {
  if (k_max < 0) throw DomainError("normalized_trace_powers: k_max must be >= 0");
  const int depth = (k_max + 1) / 2;
  const std::size_t workers = std::max<std::size_t>(1, std::min(worker_count(), n_));
  std::vector<std::vector<double>> partial(workers, std::vector<double>(k_max + 1, 0.0));

  parallel_for(workers, [&](std::size_t w) {
    // Krylov vectors M^t e_i kept sparse: dense storage plus a support list.
    std::vector<std::vector<double>> vec(depth + 1, std::vector<double>(n_, 0.0));
    std::vector<std::vector<std::uint32_t>> support(depth + 1);
    std::vector<char> mark(n_, 0);
    auto& acc = partial[w];
    for (std::size_t i = w; i < n_; i += workers) {
      vec[0][i] = 1.0;
      support[0].assign(1, static_cast<std::uint32_t>(i));
      for (int t = 1; t <= depth; ++t) {
        auto& out = vec[t];
        auto& sup = support[t];
        for (std::uint32_t r : support[t - 1]) {
          const double x = vec[t - 1][r];
          for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
            const std::uint32_t c = cols_[p];
            if (!mark[c]) {
              mark[c] = 1;
              sup.push_back(c);
            }
            out[c] += values_[p] * x;
          }
        }
        for (std::uint32_t c : sup) mark[c] = 0;
      }
      for (int k = 0; k <= k_max; ++k) {
        const int a = k / 2, b = k - a;
        double s = 0.0;
        for (std::uint32_t c : support[a]) s += vec[a][c] * vec[b][c];
        acc[k] += s;
      }
      for (int t = 0; t <= depth; ++t) {
        for (std::uint32_t c : support[t]) vec[t][c] = 0.0;
        support[t].clear();
      }
    }
  });

  std::vector<double> result(k_max + 1, 0.0);
  for (const auto& p : partial)
    for (int k = 0; k <= k_max; ++k) result[k] += p[k];
  for (auto& r : result) r /= static_cast<double>(n_);
  return result;
}

std::vector<std::vector<std::uint32_t>> SparseSymmetric::components() const {
  std::vector<std::uint32_t> parent(n_);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      const auto a = find(static_cast<std::uint32_t>(i)), b = find(cols_[p]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::int64_t> slot(n_, -1);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto r = find(static_cast<std::uint32_t>(i));
    if (slot[r] < 0) {
      slot[r] = static_cast<std::int64_t>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

DenseMatrix SparseSymmetric::principal_dense(const std::vector<std::uint32_t>& vertices) const {
  const std::size_t m = vertices.size();
  DenseMatrix d(m);
  for (std::size_t a = 0; a < m; ++a) {
    const std::uint32_t i = vertices[a];
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      const auto it = std::lower_bound(vertices.begin(), vertices.end(), cols_[p]);
      if (it != vertices.end() && *it == cols_[p]) d(a, static_cast<std::size_t>(it - vertices.begin())) = values_[p];
    }
  }
  return d;
}

}  // namespace ier
