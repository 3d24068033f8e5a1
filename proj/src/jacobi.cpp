#include "homspec/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "homspec/error.hpp"
#include "homspec/geometry.hpp"
#include "homspec/linalg.hpp"

namespace homspec {

JacobiParams::JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw Error(ErrorCode::InvalidArgument, "Jacobi parameters must exceed -1");
  }
}

JacobiParams JacobiParams::from_geometry(const GeometryParams& g) {
  return JacobiParams(g.alpha_value(), g.beta_value());
}

double JacobiParams::weight_mass() const {
  const double a = alpha_, b = beta_;
  return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                  std::lgamma(a + b + 2.0));
}

std::vector<double> jacobi_eval_all(const JacobiParams& p, int n_max, double t) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "degree must be nonnegative");
  const double a = p.alpha(), b = p.beta();
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  out[0] = 1.0;
  if (n_max == 0) return out;
  out[1] = 0.5 * (a + b + 2.0) * t + 0.5 * (a - b);
  for (int n = 2; n <= n_max; ++n) {
    const double s = 2.0 * n + a + b;
    const double a1 = 2.0 * n * (n + a + b) * (s - 2.0);
    const double a2 = (s - 1.0) * (a * a - b * b);
    const double a3 = (s - 2.0) * (s - 1.0) * s;
    const double a4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    out[n] = ((a2 + a3 * t) * out[n - 1] - a4 * out[n - 2]) / a1;
  }
  return out;
}

double jacobi_eval(const JacobiParams& p, int n, double t) {
  if (std::abs(t) > 1.0) throw Error(ErrorCode::InvalidArgument, "t must lie in [-1,1]");
  return jacobi_eval_all(p, n, t).back();
}

double jacobi_at_one(const JacobiParams& p, int n) {
  return std::exp(std::lgamma(n + p.alpha() + 1.0) - std::lgamma(p.alpha() + 1.0) - std::lgamma(n + 1.0));
}

double jacobi_norm_sq(const JacobiParams& p, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "degree must be nonnegative");
  if (n == 0) return p.weight_mass();
  const double a = p.alpha(), b = p.beta();
  const double log_h = (a + b + 1.0) * std::log(2.0) - std::log(2.0 * n + a + b + 1.0) +
                       std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) - std::lgamma(n + a + b + 1.0) -
                       std::lgamma(n + 1.0);
  return std::exp(log_h);
}

QuadratureRule gauss_jacobi(const JacobiParams& p, int n_nodes) {
  if (n_nodes < 1) throw Error(ErrorCode::InvalidArgument, "rule needs at least one node");
  const double a = p.alpha(), b = p.beta();
  const auto n = static_cast<std::size_t>(n_nodes);

  linalg::TridiagonalForm t;
  t.diagonal.resize(n);
  t.offdiagonal.resize(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = 2.0 * static_cast<double>(k) + a + b;
    t.diagonal[k] = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + a + b;
    double sq;
    if (k == 1) {
      sq = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    } else {
      sq = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    }
    t.offdiagonal[k - 1] = std::sqrt(sq);
  }

  const auto eig = linalg::tridiag_eigen_first_components(t);
  const double mass = p.weight_mass();
  QuadratureRule rule{p, {}, {}};
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // eigenvalues come back nonincreasing; nodes are stored increasing
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = eig.values[n - 1 - i];
    const double v = eig.first[n - 1 - i];
    rule.weights[i] = mass * v * v;
  }
  return rule;
}

int default_rule_size(int n_max) noexcept { return std::max(2 * n_max + 16, 64); }

CoefficientSequence fourier_jacobi_coeffs(const Profile& k, const JacobiParams& p, int n_max,
                                          const QuadratureRule& rule) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be nonnegative");
  if (rule.size() < static_cast<std::size_t>(n_max) + 1) {
    throw Error(ErrorCode::QuadratureTooCoarse, "rule has " + std::to_string(rule.size()) +
                                                    " nodes, need at least " + std::to_string(n_max + 1));
  }
  CoefficientSequence out{p, std::vector<double>(static_cast<std::size_t>(n_max) + 1, 0.0)};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double t = rule.nodes[i];
    const double kv = k(t);
    if (!std::isfinite(kv)) throw Error(ErrorCode::NonFiniteKernelValue, "profile is not finite at a node");
    const auto pn = jacobi_eval_all(p, n_max, t);
    for (int n = 0; n <= n_max; ++n) out.values[n] += rule.weights[i] * kv * pn[n];
  }
  for (int n = 0; n <= n_max; ++n) out.values[n] /= jacobi_norm_sq(p, n);
  return out;
}

double jacobi_series(const JacobiParams& p, std::span<const double> c, double t) {
  if (c.empty()) return 0.0;
  const double a = p.alpha(), b = p.beta();
  double prev = 1.0;
  double sum = c[0];
  if (c.size() == 1) return sum;
  double cur = 0.5 * (a + b + 2.0) * t + 0.5 * (a - b);
  sum += c[1] * cur;
  for (std::size_t k = 2; k < c.size(); ++k) {
    const double n = static_cast<double>(k);
    const double s = 2.0 * n + a + b;
    const double a1 = 2.0 * n * (n + a + b) * (s - 2.0);
    const double a2 = (s - 1.0) * (a * a - b * b);
    const double a3 = (s - 2.0) * (s - 1.0) * s;
    const double a4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    const double next = ((a2 + a3 * t) * cur - a4 * prev) / a1;
    prev = cur;
    cur = next;
    sum += c[k] * cur;
  }
  return sum;
}

double reconstruct(const CoefficientSequence& a, double t) { return jacobi_series(a.params, a.values, t); }

double jacobi_generating_function(const JacobiParams& p, double z, double t) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::InvalidArgument, "generating function needs |z| < 1");
  const double r = std::sqrt(1.0 - 2.0 * t * z + z * z);
  return std::pow(2.0, p.alpha() + p.beta()) / r * std::pow(1.0 - z + r, -p.alpha()) *
         std::pow(1.0 + z + r, -p.beta());
}

}  // namespace homspec
