#include "homspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "homspec/error.hpp"

namespace homspec::linalg {

namespace {

constexpr int kMaxSweeps = 50;

void require_finite(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::NonFiniteEntry, "matrix entry is not finite");
}

// Implicit QL with Wilkinson shift on (d, e), e[i] coupling i and i+1.
// Rotations are applied to the columns of z, which may hold any number of
// rows (all of Q, or only its first row for Golub-Welsch).
void ql_implicit(std::vector<double>& d, std::vector<double> e, DenseMatrix* z) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t zrows = z ? z->rows() : 0;
  // absolute floor eps ||T||: clusters of tiny eigenvalues never meet the
  // relative test alone
  double anorm = 0.0;
  for (int i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]) + (i > 0 ? std::abs(e[i - 1]) : 0.0));
  const double floor = eps * anorm;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= floor) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps) {
          throw Error(ErrorCode::NoConvergence,
                      "eigenvalue " + std::to_string(l) + " needs more than 50 implicit-shift sweeps");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          e[i + 1] = (r = std::hypot(f, g));
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          d[i + 1] = g + (p = s * r);
          g = c * r - b;
          for (std::size_t k = 0; k < zrows; ++k) {
            f = (*z)(k, i + 1);
            (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
            (*z)(k, i) = c * (*z)(k, i) - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

std::vector<std::size_t> nonincreasing_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) q(i, i) = 1.0;
  return q;
}

SymmetricMatrix::SymmetricMatrix(std::size_t order) : n_(order), a_(order * order, 0.0) {
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "matrix order must be positive");
}

SymmetricMatrix SymmetricMatrix::from_row_major(std::span<const double> row_major, std::size_t order) {
  if (row_major.size() != order * order) {
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(order * order) + " entries");
  }
  SymmetricMatrix a(order);
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = row_major[i * order + j];
      require_finite(v);
      require_finite(row_major[j * order + i]);
      if (v != row_major[j * order + i]) {
        throw Error(ErrorCode::InvalidArgument, "matrix is not symmetric");
      }
      a.set(i, j, v);
    }
  }
  return a;
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t order) {
  SymmetricMatrix a(order);
  for (std::size_t i = 0; i < order; ++i) a.set(i, i, 1.0);
  return a;
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double value) {
  require_finite(value);
  a_[i * n_ + j] = value;
  a_[j * n_ + i] = value;
}

double SymmetricMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
  return t;
}

double SymmetricMatrix::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += std::abs(a_[i * n_ + j]);
    best = std::max(best, row);
  }
  return best;
}

// Householder reflections H_k = I - beta v v^T applied as two-sided rank-2
// updates on the trailing block; all loops run along rows.
TridiagonalForm tridiagonalize(const SymmetricMatrix& a, bool accumulate) {
  const std::size_t n = a.order();
  for (double v : a.data()) require_finite(v);

  std::vector<double> w(a.data().begin(), a.data().end());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return w[i * n + j]; };

  TridiagonalForm out;
  out.diagonal.assign(n, 0.0);
  out.offdiagonal.assign(n > 0 ? n - 1 : 0, 0.0);

  std::vector<std::vector<double>> reflectors;
  std::vector<double> betas;
  std::vector<double> v(n), p(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    double scale = 0.0;
    for (std::size_t i = 0; i < len; ++i) scale = std::max(scale, std::abs(at(k + 1 + i, k)));
    double tail = 0.0;
    for (std::size_t i = 1; i < len; ++i) {
      const double x = at(k + 1 + i, k) / (scale > 0 ? scale : 1.0);
      tail += x * x;
    }
    if (scale == 0.0 || tail == 0.0) {
      out.offdiagonal[k] = at(k + 1, k);
      if (accumulate) {
        reflectors.emplace_back();
        betas.push_back(0.0);
      }
      continue;
    }
    for (std::size_t i = 0; i < len; ++i) v[i] = at(k + 1 + i, k) / scale;
    const double x0 = v[0];
    const double norm = std::sqrt(x0 * x0 + tail);
    const double alpha = x0 >= 0 ? -norm : norm;
    v[0] = x0 - alpha;
    const double vtv = v[0] * v[0] + tail;
    const double beta = 2.0 / vtv;
    out.offdiagonal[k] = alpha * scale;

    // p = beta * A v on the trailing block
    for (std::size_t i = 0; i < len; ++i) {
      const double* row = &w[(k + 1 + i) * n + k + 1];
      double sum = 0.0;
      for (std::size_t j = 0; j < len; ++j) sum += row[j] * v[j];
      p[i] = beta * sum;
    }
    double ptv = 0.0;
    for (std::size_t i = 0; i < len; ++i) ptv += p[i] * v[i];
    const double half = 0.5 * beta * ptv;
    for (std::size_t i = 0; i < len; ++i) p[i] -= half * v[i];
    for (std::size_t i = 0; i < len; ++i) {
      double* row = &w[(k + 1 + i) * n + k + 1];
      for (std::size_t j = 0; j < len; ++j) row[j] -= v[i] * p[j] + p[i] * v[j];
    }
    if (accumulate) {
      reflectors.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(len));
      betas.push_back(beta);
    }
  }
  if (n >= 2) out.offdiagonal[n - 2] = at(n - 1, n - 2);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = at(i, i);

  if (accumulate) {
    DenseMatrix q = DenseMatrix::identity(n);
    std::vector<double> u(n);
    for (std::size_t kk = reflectors.size(); kk-- > 0;) {
      if (betas[kk] == 0.0) continue;
      const auto& r = reflectors[kk];
      const std::size_t off = kk + 1;
      const std::size_t len = r.size();
      std::fill(u.begin(), u.end(), 0.0);
      for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t j = off; j < n; ++j) u[j] += r[i] * q(off + i, j);
      }
      for (std::size_t i = 0; i < len; ++i) {
        const double f = betas[kk] * r[i];
        for (std::size_t j = off; j < n; ++j) q(off + i, j) -= f * u[j];
      }
    }
    out.transform = std::move(q);
  }
  return out;
}

EigenResult tridiag_eigen(const TridiagonalForm& t, bool want_vectors) {
  const std::size_t n = t.diagonal.size();
  if (t.offdiagonal.size() + 1 != n && !(n == 0 && t.offdiagonal.empty())) {
    throw Error(ErrorCode::LengthMismatch, "offdiagonal must have N-1 entries");
  }
  for (double v : t.diagonal) require_finite(v);
  for (double v : t.offdiagonal) require_finite(v);

  std::vector<double> d = t.diagonal;
  std::optional<DenseMatrix> z;
  if (want_vectors) z = t.transform ? *t.transform : DenseMatrix::identity(n);
  ql_implicit(d, t.offdiagonal, z ? &*z : nullptr);

  const auto order = nonincreasing_order(d);
  EigenResult out;
  out.values.reserve(n);
  for (auto idx : order) out.values.push_back(d[idx]);
  if (z) {
    DenseMatrix sorted(z->rows(), n);
    for (std::size_t i = 0; i < z->rows(); ++i) {
      for (std::size_t j = 0; j < n; ++j) sorted(i, j) = (*z)(i, order[j]);
    }
    out.vectors = std::move(sorted);
  }
  return out;
}

FirstComponents tridiag_eigen_first_components(const TridiagonalForm& t) {
  const std::size_t n = t.diagonal.size();
  std::vector<double> d = t.diagonal;
  DenseMatrix z(1, n);
  if (n > 0) z(0, 0) = 1.0;
  ql_implicit(d, t.offdiagonal, &z);

  const auto order = nonincreasing_order(d);
  FirstComponents out;
  for (auto idx : order) {
    out.values.push_back(d[idx]);
    out.first.push_back(z(0, idx));
  }
  return out;
}

std::vector<double> symmetric_eigen(const SymmetricMatrix& a) {
  return tridiag_eigen(tridiagonalize(a, false), false).values;
}

EigenResult symmetric_eigen_vectors(const SymmetricMatrix& a) {
  return tridiag_eigen(tridiagonalize(a, true), true);
}

}  // namespace homspec::linalg
