#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace homspec::linalg {

/// Dense row-major matrix; used for orthogonal transforms and eigenvectors.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Real symmetric matrix. Writes go to (i,j) and (j,i) together, so the
/// stored matrix is exactly symmetric; every entry is finite.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t order);

  /// Throws InvalidArgument unless `row_major` is exactly symmetric, and
  /// NonFiniteEntry on NaN/inf.
  static SymmetricMatrix from_row_major(std::span<const double> row_major, std::size_t order);
  static SymmetricMatrix identity(std::size_t order);

  std::size_t order() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value);
  std::span<const double> data() const noexcept { return a_; }

  double trace() const noexcept;
  /// Max absolute row sum.
  double norm_inf() const noexcept;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

struct TridiagonalForm {
  std::vector<double> diagonal;     // N entries
  std::vector<double> offdiagonal;  // N-1 entries
  /// Q with A = Q T Q^T, present when accumulated.
  std::optional<DenseMatrix> transform;
};

struct EigenResult {
  std::vector<double> values;  // nonincreasing
  /// Column j is the unit eigenvector of values[j].
  std::optional<DenseMatrix> vectors;
};

/// Householder reduction to tridiagonal form.
TridiagonalForm tridiagonalize(const SymmetricMatrix& a, bool accumulate);

/// Implicit-shift QL with Wilkinson shift. Eigenvectors, when requested, are
/// expressed in the original basis if `t.transform` is present. Throws
/// NoConvergence after 50 sweeps on a single eigenvalue.
EigenResult tridiag_eigen(const TridiagonalForm& t, bool want_vectors);

/// Eigenvalues together with the first component of each unit eigenvector
/// of the tridiagonal matrix, the data needed by Golub-Welsch.
struct FirstComponents {
  std::vector<double> values;  // nonincreasing
  std::vector<double> first;
};
FirstComponents tridiag_eigen_first_components(const TridiagonalForm& t);

/// Eigenvalues in nonincreasing order.
std::vector<double> symmetric_eigen(const SymmetricMatrix& a);
EigenResult symmetric_eigen_vectors(const SymmetricMatrix& a);

}  // namespace homspec::linalg
