#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace ier {

/// Dense square matrix, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
  DenseMatrix(std::size_t n, std::vector<double> row_major);

  static DenseMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  /// max |a_ij - a_ji|
  double asymmetry() const noexcept;
  double trace() const noexcept;
  double frobenius_norm_squared() const noexcept;
  std::vector<double> multiply(const std::vector<double>& x) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Symmetric sparse matrix in compressed-row form holding both triangles.
class SparseSymmetric {
 public:
  SparseSymmetric() = default;

  /// Builds from upper-triangle entries (i <= j) with values.
  static SparseSymmetric from_upper(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& entries,
                                    const std::vector<double>& values);
  /// All listed entries (i <= j) share one value.
  static SparseSymmetric from_upper(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& entries,
                                    double value);

  std::size_t size() const noexcept { return n_; }
  std::size_t nonzeros() const noexcept { return cols_.size(); }
  const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  const std::vector<std::uint32_t>& cols() const noexcept { return cols_; }
  const std::vector<double>& values() const noexcept { return values_; }

  std::vector<double> multiply(const std::vector<double>& x) const;
  double trace() const noexcept;
  double frobenius_norm_squared() const noexcept;
  DenseMatrix to_dense() const;

  /// (1/N) Tr M^k for k = 0..k_max, from sums of squared Krylov vector norms
  /// (Tr M^(2a+b) = sum_i <M^a e_i, M^(a+b) e_i>, columns processed in parallel).
  std::vector<double> normalized_trace_powers(int k_max) const;

  /// Connected components of the off-diagonal pattern, each sorted ascending;
  /// components are ordered by their smallest vertex.
  std::vector<std::vector<std::uint32_t>> components() const;
  /// Principal submatrix on the given (sorted) vertex set.
  DenseMatrix principal_dense(const std::vector<std::uint32_t>& vertices) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> values_;
};

}  // namespace ier
