#include "homspec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "homspec/error.hpp"

namespace homspec {

namespace {

std::string fmt_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

[[noreturn]] void hypothesis_violation(const std::string& what) { throw Error(ErrorCode::HypothesisViolation, what); }

LemmaReport scan(std::string id, std::string inequality, std::int64_t n_max,
                 const std::function<bool(std::int64_t)>& holds) {
  LemmaReport rep;
  rep.id = std::move(id);
  rep.inequality = std::move(inequality);
  rep.n_begin = 1;
  rep.n_end = n_max;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const bool ok = holds(n);
    if (!rep.delta) {
      if (ok) rep.delta = n;
    } else if (!ok) {
      rep.violations.push_back(n);
    }
  }
  return rep;
}

BigInt ipow(std::int64_t base, int exp) { return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp)); }

// Moduli of eigenvalues, nonincreasing.
std::vector<double> eigen_moduli(const linalg::DenseMatrix& a, bool symmetric) {
  const std::size_t n = a.rows();
  std::vector<double> out;
  if (symmetric) {
    auto sym = linalg::SymmetricMatrix::from_row_major(a.data(), n);
    for (double v : linalg::symmetric_eigen(sym)) out.push_back(std::abs(v));
  } else {
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "general eigensolver failed");
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(std::abs(solver.eigenvalues()[i]));
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> singular_values(const linalg::DenseMatrix& a) {
  const std::size_t n = a.rows();
  Eigen::MatrixXd m(n, a.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  std::vector<double> out(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

DecayFit fit_decay(std::span<const double> values, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "tail fraction must lie in (0,1]");
  }
  const std::size_t total = values.size();
  const auto tail_len = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(total)));
  const auto head = static_cast<std::size_t>(std::ceil(kExcludedHeadFraction * static_cast<double>(total)));
  const std::size_t begin = std::max(total - std::min(tail_len, total), head);
  if (total < begin + 16) {
    throw Error(ErrorCode::WindowTooSmall, "fit window holds " + std::to_string(total > begin ? total - begin : 0) +
                                               " entries, need at least 16");
  }
  const std::size_t len = total - begin;
  std::vector<double> x(len), y(len);
  for (std::size_t i = 0; i < len; ++i) {
    const double v = values[begin + i];
    if (!(v > 0.0)) {
      throw Error(ErrorCode::NonPositiveValuesInWindow, "entry " + std::to_string(begin + i + 1) + " is not positive");
    }
    x[i] = std::log(static_cast<double>(begin + i + 1));
    y[i] = std::log(v);
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(len);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(len);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  DecayFit fit{};
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(len));
  fit.window_begin = begin + 1;
  fit.window_end = total;
  return fit;
}

DecayFit fit_decay(const Spectrum& s, double tail_fraction) {
  const auto v = s.values();
  return fit_decay(std::span<const double>(v), tail_fraction);
}

// ---------------------------------------------------------------------------

std::string_view theorem_label(DecayTheorem t) noexcept {
  switch (t) {
    case DecayTheorem::SingularValuesBoundedDerivative: return "2.1";
    case DecayTheorem::EigenvaluesSquareIntegrableDerivative: return "2.2";
    case DecayTheorem::EigenvaluesSchattenDerivative: return "2.3";
  }
  return "?";
}

std::optional<DecayTheorem> parse_theorem(std::string_view label) noexcept {
  for (auto t : {DecayTheorem::SingularValuesBoundedDerivative, DecayTheorem::EigenvaluesSquareIntegrableDerivative,
                 DecayTheorem::EigenvaluesSchattenDerivative}) {
    if (theorem_label(t) == label) return t;
  }
  return std::nullopt;
}

double theorem_exponent(DecayTheorem t, int m, int r, double p) {
  switch (t) {
    case DecayTheorem::SingularValuesBoundedDerivative: return -1.0 - (2.0 * r + 1.0 - p) / m;
    case DecayTheorem::EigenvaluesSquareIntegrableDerivative: return -0.5 - 2.0 * r / m;
    case DecayTheorem::EigenvaluesSchattenDerivative: return -1.0 / p - 2.0 * r / m;
  }
  return 0.0;
}

std::int64_t degree_to_fill(const GeometryParams& params, std::size_t count) {
  BigInt total = 0;
  for (std::int64_t n = 0;; ++n) {
    total += eigenspace_dim(params, n);
    if (total >= count) return n;
  }
}

void check_theorem_hypotheses(DecayTheorem theorem, const GeometryParams& params, int r, double p, double gamma) {
  const int m = params.m();
  if (r < 0) hypothesis_violation("r must be a nonnegative integer (r=" + std::to_string(r) + ")");
  if (!(gamma > 0.0)) hypothesis_violation("gamma must be positive");

  switch (theorem) {
    case DecayTheorem::SingularValuesBoundedDerivative:
      if (r < 1 || 2 * r < m + 1) {
        hypothesis_violation("r must be a positive integer at least (m+1)/2 (r=" + std::to_string(r) +
                             ", m=" + std::to_string(m) + ")");
      }
      if (!(p > m + 1 && p <= 2 * r + 1)) {
        hypothesis_violation("p must lie in (m+1, 2r+1] (p=" + fmt_number(p) + ")");
      }
      if (!(gamma >= 2.0 * r)) {
        hypothesis_violation("K_{0,r} bounded needs gamma >= 2r (gamma=" + fmt_number(gamma) + ")");
      }
      break;
    case DecayTheorem::EigenvaluesSquareIntegrableDerivative:
      if (!(gamma > 2.0 * r + m / 2.0)) {
        hypothesis_violation("K_{0,r} in L2 needs gamma > 2r + m/2 (gamma=" + fmt_number(gamma) + ")");
      }
      break;
    case DecayTheorem::EigenvaluesSchattenDerivative:
      if (!(p > 0.0)) hypothesis_violation("p must be positive");
      if (!(gamma > 2.0 * r + m / p)) {
        hypothesis_violation("K_{0,r} in S_p needs gamma > 2r + m/p (gamma=" + fmt_number(gamma) + ")");
      }
      break;
  }
}

DecayReport verify_theorem(DecayTheorem theorem, const GeometryParams& params, int r, double p, double gamma,
                           std::size_t count, double tail_fraction) {
  check_theorem_hypotheses(theorem, params, r, p, gamma);
  const int m = params.m();
  const auto degree = degree_to_fill(params, count);
  const ZonalKernel kernel =
      make_family_kernel(params, CoefficientFamily::Algebraic, gamma, static_cast<int>(degree));
  if (theorem != DecayTheorem::SingularValuesBoundedDerivative && !is_positive_definite(kernel)) {
    hypothesis_violation("kernel is not positive definite");
  }
  const auto spectrum = zonal_spectrum(kernel, count);
  const auto singular = spectrum.abs_values();
  const auto fit = fit_decay(std::span<const double>(singular), tail_fraction);

  DecayReport rep{};
  rep.theorem = theorem;
  rep.space = params.kind();
  rep.m = m;
  rep.r = r;
  rep.p = p;
  rep.family = std::string(family_name(CoefficientFamily::Algebraic));
  rep.gamma = gamma;
  rep.count = count;
  rep.tail_fraction = tail_fraction;
  rep.fitted_slope = fit.slope;
  rep.intercept = fit.intercept;
  rep.residual_rms = fit.residual_rms;
  rep.theoretical_exponent = theorem_exponent(theorem, m, r, p);
  rep.constructed_exponent = -gamma / m;
  rep.margin = rep.theoretical_exponent - fit.slope;
  rep.slack = kSlopeSlack;
  rep.pass = fit.slope <= rep.theoretical_exponent + kSlopeSlack;
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<LemmaReport> check_counting_lemmas(const GeometryParams& params, std::int64_t n_max) {
  if (n_max < 10) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 10");
  const int m = params.m();
  std::vector<LemmaReport> out;

  if (params.kind() == SpaceKind::RealProjective) {
    out.push_back(scan("counting-B", "2 tau_{2n} + 1 <= (3n)^m", n_max, [&](std::int64_t n) {
      return 2 * cumulative_dim(params, 2 * n) + 1 <= ipow(3 * n, m);
    }));
  } else {
    out.push_back(scan("counting-A", "tau_n <= 2 n^m", n_max,
                       [&](std::int64_t n) { return cumulative_dim(params, n) <= 2 * ipow(n, m); }));
  }
  out.push_back(scan("counting-C", "(n+1)^m - (n^m + 1) + 1 <= m 2^{m-1} n^{m-1}", n_max, [&](std::int64_t n) {
    return ipow(n + 1, m) - (ipow(n, m) + 1) + 1 <= BigInt(m) * ipow(2, m - 1) * ipow(n, m - 1);
  }));
  return out;
}

std::vector<LemmaReport> check_smoothing_inequality(const ZonalKernel& k, SobolevOrder r, std::size_t k_max) {
  if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "k_max must be positive");
  const auto derivative = apply_lb(k, r);
  const auto composed = apply_jr(derivative, r);
  const auto s_k = zonal_spectrum(k, k_max + 1).abs_values();
  const auto s_composed = zonal_spectrum(composed, k_max).abs_values();
  const double derivative_norm = operator_norm(derivative);
  const auto n_max = static_cast<std::int64_t>(k_max);
  constexpr double rel = 1e-12;

  std::vector<LemmaReport> out;
  out.push_back(scan("smoothing-composition", "s_{k+1}(K) <= s_k(K_{0,r} J^r)", n_max, [&](std::int64_t i) {
    return s_k[i] <= s_composed[i - 1] * (1.0 + rel);
  }));
  if (r.value() >= 1) {
    const auto s_jr = jr_singular_values(k.params(), r, k_max).values();
    out.push_back(scan("smoothing-norm-bound", "s_{k+1}(K) <= ||K_{0,r}|| s_k(J^r)", n_max, [&](std::int64_t i) {
      return s_k[i] <= derivative_norm * s_jr[i - 1] * (1.0 + rel);
    }));
  }
  return out;
}

// ---------------------------------------------------------------------------

WeylReport weyl_products(const linalg::DenseMatrix& a, std::size_t k_max) {
  const std::size_t n = a.rows();
  if (n == 0 || a.cols() != n) throw Error(ErrorCode::InvalidArgument, "matrix must be square and nonempty");
  if (k_max < 1 || k_max > n) throw Error(ErrorCode::InvalidArgument, "k_max must lie in [1, order]");
  for (double v : a.data()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteEntry, "matrix entry is not finite");
  }
  bool symmetric = true;
  for (std::size_t i = 0; i < n && symmetric; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (a(i, j) != a(j, i)) {
        symmetric = false;
        break;
      }
  if (!symmetric && n > kMaxGeneralOrder) {
    throw Error(ErrorCode::OrderTooLargeForGeneralCase,
                "nonsymmetric order " + std::to_string(n) + " exceeds " + std::to_string(kMaxGeneralOrder));
  }

  const auto lambda = eigen_moduli(a, symmetric);
  const auto s = singular_values(a);

  WeylReport rep{};
  rep.k_max = k_max;
  // Values below the floor are indistinguishable from zero in double precision.
  rep.floor = 64.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * std::max(s.front(), 1e-300);
  const double tol = std::log1p(1e-8);
  double lhs = 0.0, rhs = 0.0;
  rep.holds = true;
  rep.equality = true;
  for (std::size_t k = 0; k < k_max; ++k) {
    lhs += std::log(std::max(lambda[k], rep.floor));
    rhs += std::log(std::max(s[k], rep.floor));
    rep.log_eigen_products.push_back(lhs);
    rep.log_singular_products.push_back(rhs);
    if (lhs > rhs + tol) rep.holds = false;
    if (std::abs(lhs - rhs) > tol) rep.equality = false;
  }
  return rep;
}

bool weyl_check(const linalg::DenseMatrix& a, std::size_t k_max) { return weyl_products(a, k_max).holds; }

// ---------------------------------------------------------------------------

RateDiagnostic rate_diagnostic(std::span<const double> s, double a, double b) {
  const std::size_t len = s.size();
  if (len < 1000) throw Error(ErrorCode::SequenceTooShort, "need at least 1000 terms, got " + std::to_string(len));
  if (!(a > 0.0 || a == 0.0) || !(b > 0.0)) throw Error(ErrorCode::InvalidArgument, "need a >= 0 and b > 0");
  RateDiagnostic out{};
  const double power = (a + 1.0) / b;
  for (std::size_t divisor : {8u, 4u, 2u, 1u}) {
    const std::size_t n = (len + divisor - 1) / divisor;
    const double v = s[n - 1];
    if (!(v > 0.0)) throw Error(ErrorCode::InvalidArgument, "sequence must be positive");
    out.sample_indices.push_back(n);
    out.trend.push_back(std::pow(static_cast<double>(n), power) * v);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < out.trend.size(); ++i) decreasing = decreasing && out.trend[i] < out.trend[i - 1];
  out.pass = decreasing && out.trend.back() < out.trend.front() / 2.0;
  return out;
}

std::string_view weyl_case_name(WeylCase c) noexcept {
  switch (c) {
    case WeylCase::Symmetric: return "symmetric";
    case WeylCase::Nilpotent: return "nilpotent";
    case WeylCase::RankOne: return "rank-one";
  }
  return "unknown";
}

std::optional<WeylCase> parse_weyl_case(std::string_view name) noexcept {
  for (auto c : {WeylCase::Symmetric, WeylCase::Nilpotent, WeylCase::RankOne}) {
    if (weyl_case_name(c) == name) return c;
  }
  return std::nullopt;
}

namespace {

double unit_interval(std::mt19937_64& rng) {
  // top 53 bits -> [0, 1), then affine map to [-1, 1)
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace

linalg::DenseMatrix random_test_matrix(WeylCase kind, std::size_t order, std::mt19937_64& rng) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "matrix order must be positive");
  linalg::DenseMatrix a(order, order);
  switch (kind) {
    case WeylCase::Symmetric:
      for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = unit_interval(rng);
      }
      break;
    case WeylCase::Nilpotent:
      for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t j = i + 1; j < order; ++j) a(i, j) = unit_interval(rng);
      }
      break;
    case WeylCase::RankOne: {
      std::vector<double> u(order), v(order);
      for (auto& x : u) x = unit_interval(rng);
      for (auto& x : v) x = unit_interval(rng);
      for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t j = 0; j < order; ++j) a(i, j) = u[i] * v[j];
      }
      break;
    }
  }
  return a;
}

WeylSweep weyl_sweep(WeylCase kind, std::size_t max_order, std::size_t matrices, std::uint64_t seed) {
  if (max_order < 2) throw Error(ErrorCode::InvalidArgument, "max_order must be at least 2");
  if (matrices < 1) throw Error(ErrorCode::InvalidArgument, "need at least one matrix");
  if (kind != WeylCase::Symmetric && max_order > kMaxGeneralOrder) {
    throw Error(ErrorCode::OrderTooLargeForGeneralCase,
                "nonsymmetric sweeps need max_order <= " + std::to_string(kMaxGeneralOrder));
  }
  std::mt19937_64 rng(seed);
  WeylSweep out{kind, max_order, matrices, seed, 0, 0, false};
  for (std::size_t i = 0; i < matrices; ++i) {
    const std::size_t order = 2 + static_cast<std::size_t>(rng() % (max_order - 1));
    const auto rep = weyl_products(random_test_matrix(kind, order, rng), order);
    out.holds += rep.holds ? 1 : 0;
    out.equalities += rep.equality ? 1 : 0;
  }
  out.pass = kind == WeylCase::Symmetric ? out.equalities == matrices : out.holds == matrices;
  return out;
}

}  // namespace homspec
