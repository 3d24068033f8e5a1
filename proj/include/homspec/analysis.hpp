#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homspec/geometry.hpp"
#include "homspec/linalg.hpp"
#include "homspec/zonal.hpp"

namespace homspec {

// ---------------------------------------------------------------------------
// Log-log decay fits

/// Asymptotic o(.) statements are checked as slope comparisons on a finite
/// window, with this much slack on the exponent.
inline constexpr double kSlopeSlack = 0.05;
inline constexpr double kDefaultTailFraction = 0.5;
/// Leading fraction of a spectrum that never enters a fit.
inline constexpr double kExcludedHeadFraction = 0.1;

struct DecayFit {
  double slope;
  double intercept;
  double residual_rms;
  std::size_t window_begin;  // 1-based index of the first fitted entry
  std::size_t window_end;    // 1-based index of the last fitted entry
};

/// Least squares through (log k, log s_k), k 1-based, over the last
/// ceil(tail_fraction * L) entries (never the first 10%). Needs at least 16
/// entries in the window (WindowTooSmall), all > 0 (NonPositiveValuesInWindow).
DecayFit fit_decay(std::span<const double> values, double tail_fraction = kDefaultTailFraction);
DecayFit fit_decay(const Spectrum& s, double tail_fraction = kDefaultTailFraction);

// ---------------------------------------------------------------------------
// Decay theorems

enum class DecayTheorem {
  /// s_n(K) = o(n^{-1-(2r+1-p)/m}) when K_{0,r} is bounded, r >= (m+1)/2,
  /// p in (m+1, 2r+1]. CLI name "2.1".
  SingularValuesBoundedDerivative,
  /// lambda_n(K) = o(n^{-1/2-2r/m}) when K is positive definite and
  /// K_{0,r} is square integrable. CLI name "2.2".
  EigenvaluesSquareIntegrableDerivative,
  /// lambda_n(K) = o(n^{-1/p-2r/m}) when K is positive definite and
  /// K_{0,r} is in the Schatten p-class. CLI name "2.3".
  EigenvaluesSchattenDerivative,
};

std::string_view theorem_label(DecayTheorem t) noexcept;
std::optional<DecayTheorem> parse_theorem(std::string_view label) noexcept;

/// Exponent e of the rate n^e asserted by the theorem.
double theorem_exponent(DecayTheorem t, int m, int r, double p);

struct DecayReport {
  DecayTheorem theorem;
  SpaceKind space;
  int m;
  int r;
  double p;
  std::string family;
  double gamma;
  std::size_t count;
  double tail_fraction;

  double fitted_slope;
  double intercept;
  double residual_rms;
  double theoretical_exponent;
  double constructed_exponent;  // -gamma/m, the decay the test kernel is built with
  double margin;                // theoretical_exponent - fitted_slope
  double slack;
  bool pass;
};

/// Throws HypothesisViolation naming the first failed hypothesis.
void check_theorem_hypotheses(DecayTheorem theorem, const GeometryParams& params, int r, double p, double gamma);

/// Builds the algebraic kernel a_n = (n+1)^{-gamma}, expands `count`
/// spectrum entries, fits the tail and compares the slope with the theorem.
/// Throws HypothesisViolation naming the failed hypothesis.
DecayReport verify_theorem(DecayTheorem theorem, const GeometryParams& params, int r, double p, double gamma,
                           std::size_t count, double tail_fraction = kDefaultTailFraction);

/// Smallest degree n such that d_0 + ... + d_n >= count.
std::int64_t degree_to_fill(const GeometryParams& params, std::size_t count);

// ---------------------------------------------------------------------------
// Lemma checks

struct LemmaReport {
  std::string id;
  std::string inequality;
  std::int64_t n_begin = 0;
  std::int64_t n_end = 0;
  /// Smallest n in [n_begin, n_end] at which the inequality holds.
  std::optional<std::int64_t> delta;
  /// n >= delta at which the inequality fails.
  std::vector<std::int64_t> violations;

  bool pass() const noexcept { return delta.has_value() && violations.empty(); }
};

/// Exact integer scans for n in [1, n_max]:
///   counting-A   tau_n <= 2 n^m                      (all but real-projective)
///   counting-B   2 tau_{2n} + 1 <= (3n)^m             (real-projective)
///   counting-C   (n+1)^m - (n^m + 1) + 1 <= m 2^{m-1} n^{m-1}
/// Requires n_max >= 10.
std::vector<LemmaReport> check_counting_lemmas(const GeometryParams& params, std::int64_t n_max);

/// For k = 1..k_max checks s_{k+1}(K) <= s_k(K_{0,r} J^r) and
/// s_{k+1}(K) <= ||K_{0,r}|| s_k(J^r), with relative tolerance 1e-12.
/// The kernel's stored range must supply k_max + 1 spectrum entries.
std::vector<LemmaReport> check_smoothing_inequality(const ZonalKernel& k, SobolevOrder r, std::size_t k_max);

// ---------------------------------------------------------------------------
// Weyl's product inequality

struct WeylReport {
  std::size_t k_max;
  /// Partial sums of log max(|lambda_j|, floor) and log max(s_j, floor).
  std::vector<double> log_eigen_products;
  std::vector<double> log_singular_products;
  double floor;
  bool holds;     // products satisfy the inequality within 1 + 1e-8
  bool equality;  // the two sides agree within 1 + 1e-8 at every k
};

inline constexpr std::size_t kMaxGeneralOrder = 8;

/// Symmetric input uses the library eigensolver; nonsymmetric input of order
/// <= 8 uses a general eigensolver, larger nonsymmetric orders throw
/// OrderTooLargeForGeneralCase.
WeylReport weyl_products(const linalg::DenseMatrix& a, std::size_t k_max);
bool weyl_check(const linalg::DenseMatrix& a, std::size_t k_max);

enum class WeylCase { Symmetric, Nilpotent, RankOne };

std::string_view weyl_case_name(WeylCase c) noexcept;
std::optional<WeylCase> parse_weyl_case(std::string_view name) noexcept;

/// Entries uniform in [-1, 1] drawn from a 64-bit Mersenne twister with a
/// fixed bit mapping, so a seed gives the same matrix on every platform.
/// Nilpotent matrices are strictly upper triangular; rank-one ones are u v^T.
linalg::DenseMatrix random_test_matrix(WeylCase kind, std::size_t order, std::mt19937_64& rng);

struct WeylSweep {
  WeylCase kind;
  std::size_t max_order;
  std::size_t matrices;
  std::uint64_t seed;
  std::size_t holds;       // matrices satisfying the inequality
  std::size_t equalities;  // matrices with equal partial products
  bool pass;               // symmetric: all equal; otherwise: all hold
};

/// `matrices` draws with orders in [2, max_order], k_max = order.
WeylSweep weyl_sweep(WeylCase kind, std::size_t max_order, std::size_t matrices, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Series-to-rate diagnostic

struct RateDiagnostic {
  std::vector<std::size_t> sample_indices;  // 1-based
  std::vector<double> trend;                // N^{(a+1)/b} s_N at each sample
  bool pass;
};

/// If sum n^a s_n^b converges for a decreasing positive s, then
/// s_n = o(n^{-(a+1)/b}). Samples t_N = N^{(a+1)/b} s_N at N = ceil(L/8),
/// ceil(L/4), ceil(L/2), L; passes iff strictly decreasing with
/// t_L < t_first / 2. Finite-sample evidence only. Needs L >= 1000.
RateDiagnostic rate_diagnostic(std::span<const double> s, double a, double b);

}  // namespace homspec
