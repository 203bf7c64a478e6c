#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "ier/linalg.hpp"

namespace ier {

/// Largest matrix accepted by the dense eigensolvers.
inline constexpr std::size_t kMaxDenseEigenSize = 20000;

/// Relative asymmetry accepted by the eigensolvers.
inline constexpr double kSymmetryTolerance = 1e-12;

enum class EigenBackend {
  automatic,       // householder_ql up to kAutoLapackThreshold, lapack beyond
  householder_ql,  // built-in Householder tridiagonalisation + implicit QL
  lapack,          // dsyev (values) / dsyevd (vectors)
};

/// Size above which `automatic` switches to LAPACK.
inline constexpr std::size_t kAutoLapackThreshold = 512;

std::string_view to_string(EigenBackend b);
EigenBackend parse_eigen_backend(std::string_view name);

/// Eigenpairs of a symmetric matrix. values ascending; row k of `vectors` is
/// the unit eigenvector of values[k], i.e. vectors(k, i) = v_k(i).
struct EigenDecomposition {
  std::vector<double> values;
  DenseMatrix vectors;
};

/// All eigenvalues in ascending order. DomainError if the matrix is not
/// symmetric within kSymmetryTolerance (relative), ResourceError above
/// kMaxDenseEigenSize.
std::vector<double> eigenvalues_symmetric(const DenseMatrix& m, EigenBackend backend = EigenBackend::automatic);

EigenDecomposition eigen_decompose(const DenseMatrix& m, EigenBackend backend = EigenBackend::automatic);

/// Eigenvalues of a sparse symmetric matrix, solved per connected component.
std::vector<double> eigenvalues_symmetric(const SparseSymmetric& m, EigenBackend backend = EigenBackend::automatic);

}  // namespace ier
