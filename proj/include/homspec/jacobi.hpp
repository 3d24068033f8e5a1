#pragma once

#include <functional>
#include <span>
#include <vector>

namespace homspec {

class GeometryParams;

/// Parameters of the weight (1-t)^alpha (1+t)^beta on [-1,1]; both > -1.
class JacobiParams {
 public:
  JacobiParams(double alpha, double beta);
  static JacobiParams from_geometry(const GeometryParams& g);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  /// Total mass mu_0 of the weight.
  double weight_mass() const;

 private:
  double alpha_;
  double beta_;
};

/// Gauss rule for the Jacobi weight: nodes strictly increasing in (-1,1),
/// weights positive.
struct QuadratureRule {
  JacobiParams params;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Expansion coefficients a_n of a profile k(t) = sum_n a_n P_n(t).
struct CoefficientSequence {
  JacobiParams params;
  std::vector<double> values;  // n = 0..N_max
};

using Profile = std::function<double(double)>;

/// P_n^{(alpha,beta)}(t) by the three-term recurrence.
double jacobi_eval(const JacobiParams& p, int n, double t);

/// P_0 .. P_{n_max} at t.
std::vector<double> jacobi_eval_all(const JacobiParams& p, int n_max, double t);

/// P_n(1) = binomial(n + alpha, n).
double jacobi_at_one(const JacobiParams& p, int n);

/// h_n = integral of P_n^2 against the weight.
double jacobi_norm_sq(const JacobiParams& p, int n);

/// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
/// monic recurrence, weights are mu_0 times squared first eigenvector
/// components.
QuadratureRule gauss_jacobi(const JacobiParams& p, int n_nodes);

/// Default rule size for a projection up to degree n_max.
int default_rule_size(int n_max) noexcept;

/// a_n = (sum_i w_i k(t_i) P_n(t_i)) / h_n for n = 0..n_max. Requires
/// rule.size() >= n_max + 1 (QuadratureTooCoarse otherwise).
CoefficientSequence fourier_jacobi_coeffs(const Profile& k, const JacobiParams& p, int n_max,
                                          const QuadratureRule& rule);

/// k(t) = sum_n a_n P_n(t).
double reconstruct(const CoefficientSequence& a, double t);

/// sum_n c[n] P_n(t) without allocating.
double jacobi_series(const JacobiParams& p, std::span<const double> c, double t);

/// Jacobi generating function sum_n z^n P_n(t), |z| < 1.
double jacobi_generating_function(const JacobiParams& p, double z, double t);

}  // namespace homspec
