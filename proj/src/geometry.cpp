#include "homspec/geometry.hpp"

#include <cmath>
#include <limits>

#include "homspec/error.hpp"

namespace homspec {

namespace {

void require_degree(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "degree must be nonnegative");
}

// (b + n)_k / (b)_k with b = twice_b / 2, accumulated into num/den. Doubling
// every factor keeps half-integer b in integers.
void shifted_pochhammer_ratio(BigInt& num, BigInt& den, int twice_b, int k, std::int64_t n) {
  for (int j = 0; j < k; ++j) {
    num *= BigInt(twice_b) + 2 * n + 2 * j;
    den *= BigInt(twice_b) + 2 * j;
  }
}

BigInt exact_quotient(const BigInt& num, const BigInt& den) {
  BigInt q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) throw Error(ErrorCode::Overflow, "dimension formula did not reduce to an integer");
  return q;
}

BigInt binomial(std::int64_t top, int bottom) {
  BigInt num = 1, den = 1;
  for (int j = 0; j < bottom; ++j) {
    num *= BigInt(top - j);
    den *= BigInt(j + 1);
  }
  return num / den;
}

}  // namespace

std::string_view space_name(SpaceKind kind) noexcept {
  switch (kind) {
    case SpaceKind::Sphere: return "sphere";
    case SpaceKind::RealProjective: return "real-projective";
    case SpaceKind::ComplexProjective: return "complex-projective";
    case SpaceKind::QuaternionProjective: return "quaternion-projective";
    case SpaceKind::CayleyPlane: return "cayley";
  }
  return "unknown";
}

std::optional<SpaceKind> parse_space(std::string_view name) noexcept {
  for (auto kind : {SpaceKind::Sphere, SpaceKind::RealProjective, SpaceKind::ComplexProjective,
                    SpaceKind::QuaternionProjective, SpaceKind::CayleyPlane}) {
    if (space_name(kind) == name) return kind;
  }
  return std::nullopt;
}

bool is_admissible(SpaceKind kind, int m) noexcept {
  switch (kind) {
    case SpaceKind::Sphere:
    case SpaceKind::RealProjective: return m >= 2;
    case SpaceKind::ComplexProjective: return m >= 4 && m % 2 == 0;
    case SpaceKind::QuaternionProjective: return m >= 8 && m % 4 == 0;
    case SpaceKind::CayleyPlane: return m == 16;
  }
  return false;
}

GeometryParams space_params(SpaceKind kind, int m) {
  if (!is_admissible(kind, m)) {
    throw Error(ErrorCode::InadmissibleDimension,
                "m=" + std::to_string(m) + " is not a dimension of " + std::string(space_name(kind)));
  }
  switch (kind) {
    case SpaceKind::Sphere:
    case SpaceKind::RealProjective: return GeometryParams(kind, m, 0, m - 1);
    case SpaceKind::ComplexProjective: return GeometryParams(kind, m, m - 2, 1);
    case SpaceKind::QuaternionProjective: return GeometryParams(kind, m, m - 4, 3);
    case SpaceKind::CayleyPlane: return GeometryParams(kind, m, 8, 7);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown space kind");
}

// d_n = Gamma(b+1)(2n+a+b+1)Gamma(n+a+1)Gamma(n+a+b+1)
//       / (Gamma(a+1)Gamma(a+b+2)Gamma(n+1)Gamma(n+b+1))
//     = (2n+a+b+1)/(a+b+1) * (a+1)_n/(b+1)_n * (a+b+1)_n/n!
// a - b = sigma/2 and a + b are nonnegative integers, so both Pochhammer
// ratios collapse to short finite products.
BigInt eigenspace_dim(const GeometryParams& params, std::int64_t n) {
  require_degree(n);
  if (n == 0) return 1;
  if (params.kind() == SpaceKind::RealProjective && n % 2 != 0) return 0;

  const int ab1 = params.alpha_beta_one();
  BigInt num = BigInt(2 * n + ab1);
  BigInt den = BigInt(ab1);
  shifted_pochhammer_ratio(num, den, params.twice_beta() + 2, params.sigma() / 2, n);
  shifted_pochhammer_ratio(num, den, 2, ab1 - 1, n);
  return exact_quotient(num, den);
}

// tau_n = Gamma(b+1)Gamma(n+a+b+2)Gamma(n+a+2)
//         / (Gamma(a+b+2)Gamma(a+2)Gamma(n+b+1)Gamma(n+1))
//       = binomial(n+a+b+1, n) * (a+2)_n/(b+1)_n
BigInt cumulative_dim(const GeometryParams& params, std::int64_t n) {
  require_degree(n);
  if (params.kind() == SpaceKind::RealProjective) {
    if (n % 2 != 0) {
      throw Error(ErrorCode::OddIndexOnRealProjective,
                  "tau_n is defined only at even n on real-projective (n=" + std::to_string(n) + ")");
    }
    return binomial(params.m() + n, params.m());
  }
  const int ab1 = params.alpha_beta_one();
  BigInt num = 1, den = 1;
  shifted_pochhammer_ratio(num, den, 2, ab1, n);
  shifted_pochhammer_ratio(num, den, params.twice_beta() + 2, params.sigma() / 2 + 1, n);
  return exact_quotient(num, den);
}

Rational laplace_eigenvalue(const GeometryParams& params, std::int64_t n) {
  require_degree(n);
  if (n == 0) return Rational(1);
  return Rational(BigInt(n) * (n + params.alpha_beta_one()));
}

double laplace_eigenvalue_value(const GeometryParams& params, std::int64_t n) {
  require_degree(n);
  if (n == 0) return 1.0;
  return static_cast<double>(n) * static_cast<double>(n + params.alpha_beta_one());
}

std::uint64_t to_u64(const BigInt& value) {
  if (value < 0 || value > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::Overflow, "value does not fit in 64 bits: " + value.str());
  }
  return value.convert_to<std::uint64_t>();
}

double to_double(const BigInt& value) {
  const double v = value.convert_to<double>();
  if (!std::isfinite(v)) throw Error(ErrorCode::Overflow, "value exceeds double range");
  return v;
}

}  // namespace homspec
