#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace homspec {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Compact two-point homogeneous spaces.
enum class SpaceKind { Sphere, RealProjective, ComplexProjective, QuaternionProjective, CayleyPlane };

/// CLI/config name: "sphere", "real-projective", "complex-projective",
/// "quaternion-projective", "cayley".
std::string_view space_name(SpaceKind kind) noexcept;
std::optional<SpaceKind> parse_space(std::string_view name) noexcept;

/// Analytic parameters of a homogeneous space of real dimension m.
///
/// sigma and rho are the exponents of the radial Laplace-Beltrami operator;
/// alpha = (sigma + rho - 1)/2 and beta = (rho - 1)/2 are the Jacobi
/// parameters. Both are half-integers, held exactly.
class GeometryParams {
 public:
  SpaceKind kind() const noexcept { return kind_; }
  int m() const noexcept { return m_; }
  int sigma() const noexcept { return sigma_; }
  int rho() const noexcept { return rho_; }

  Rational alpha() const { return Rational(twice_alpha(), 2); }
  Rational beta() const { return Rational(twice_beta(), 2); }
  double alpha_value() const noexcept { return twice_alpha() / 2.0; }
  double beta_value() const noexcept { return twice_beta() / 2.0; }

  int twice_alpha() const noexcept { return sigma_ + rho_ - 1; }
  int twice_beta() const noexcept { return rho_ - 1; }
  // alpha + beta + 1 is an integer for every admissible space.
  int alpha_beta_one() const noexcept { return (twice_alpha() + twice_beta()) / 2 + 1; }

  friend bool operator==(const GeometryParams&, const GeometryParams&) = default;

 private:
  friend GeometryParams space_params(SpaceKind kind, int m);
  GeometryParams(SpaceKind kind, int m, int sigma, int rho)
      : kind_(kind), m_(m), sigma_(sigma), rho_(rho) {}

  SpaceKind kind_;
  int m_;
  int sigma_;
  int rho_;
};

/// Throws Error(InadmissibleDimension) when m is not in the kind's dimension set.
GeometryParams space_params(SpaceKind kind, int m);

bool is_admissible(SpaceKind kind, int m) noexcept;

/// Dimension d_n of the degree-n eigenspace, exact. Zero for odd n on the
/// real projective space; d_0 = 1 everywhere.
BigInt eigenspace_dim(const GeometryParams& params, std::int64_t n);

/// tau_n = d_0 + ... + d_n from the closed formula. On the real projective
/// space only even n are defined (binomial(m + n, m)); odd n throws
/// OddIndexOnRealProjective.
BigInt cumulative_dim(const GeometryParams& params, std::int64_t n);

/// Eigenvalue n(n + alpha + beta + 1) of B = -Laplace-Beltrami on degree n.
/// Degree 0 returns 1, not 0: with this convention the inverse power J^r is
/// the identity on constants.
Rational laplace_eigenvalue(const GeometryParams& params, std::int64_t n);
double laplace_eigenvalue_value(const GeometryParams& params, std::int64_t n);

/// Narrowing helpers; throw Error(Overflow) when the value does not fit.
std::uint64_t to_u64(const BigInt& value);
double to_double(const BigInt& value);

}  // namespace homspec
