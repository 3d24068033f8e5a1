#include "homspec/zonal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "homspec/error.hpp"

namespace homspec {

namespace {

void append_block(Spectrum& s, double value, std::int64_t degree, const BigInt& dim, std::size_t count) {
  const std::size_t remaining = count - s.entries.size();
  const std::size_t take = dim >= remaining ? remaining : dim.convert_to<std::size_t>();
  for (std::size_t j = 0; j < take; ++j) s.entries.push_back({value, degree, j});
}

ZonalKernel scale_by_laplace_power(const ZonalKernel& k, int exponent) {
  std::vector<double> c(k.coeffs().begin(), k.coeffs().end());
  for (std::size_t n = 0; n < c.size(); ++n) {
    c[n] *= std::pow(laplace_eigenvalue_value(k.params(), static_cast<std::int64_t>(n)), exponent);
  }
  return ZonalKernel(k.params(), std::move(c));
}

// Neumaier compensated sum; long spectra lose ~N eps with a plain loop.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

SobolevOrder::SobolevOrder(int r) : r_(r) {
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "Sobolev order must be nonnegative");
}

ZonalKernel::ZonalKernel(GeometryParams params, std::vector<double> coeffs)
    : params_(params), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "kernel needs at least a_0");
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    if (!std::isfinite(coeffs_[n])) throw Error(ErrorCode::NonFiniteEntry, "coefficient a_" + std::to_string(n));
    if (params_.kind() == SpaceKind::RealProjective && n % 2 == 1 && coeffs_[n] != 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "a_" + std::to_string(n) + " must be zero: odd degrees are empty on real-projective");
    }
  }
}

std::vector<double> Spectrum::values() const {
  std::vector<double> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(e.value);
  return v;
}

std::vector<double> Spectrum::abs_values() const {
  std::vector<double> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(std::abs(e.value));
  return v;
}

Spectrum zonal_spectrum(const ZonalKernel& k, std::size_t count, bool pad_zeros) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be positive");
  const auto coeffs = k.coeffs();
  std::vector<std::int64_t> degrees;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    if (eigenspace_dim(k.params(), static_cast<std::int64_t>(n)) > 0) degrees.push_back(static_cast<std::int64_t>(n));
  }
  std::stable_sort(degrees.begin(), degrees.end(),
                   [&](std::int64_t a, std::int64_t b) { return std::abs(coeffs[a]) > std::abs(coeffs[b]); });

  Spectrum s;
  s.entries.reserve(count);
  for (auto n : degrees) {
    if (s.size() == count) break;
    append_block(s, coeffs[n], n, eigenspace_dim(k.params(), n), count);
  }
  if (s.size() < count) {
    if (!pad_zeros) {
      throw Error(ErrorCode::InsufficientCoefficients,
                  "stored degrees 0.." + std::to_string(k.max_degree()) + " supply only " +
                      std::to_string(s.size()) + " of " + std::to_string(count) + " entries");
    }
    std::uint64_t j = 0;
    while (s.size() < count) s.entries.push_back({0.0, -1, j++});
  }
  return s;
}

BigInt stored_spectrum_size(const ZonalKernel& k) {
  BigInt total = 0;
  for (int n = 0; n <= k.max_degree(); ++n) total += eigenspace_dim(k.params(), n);
  return total;
}

ZonalKernel apply_lb(const ZonalKernel& k, SobolevOrder r) { return scale_by_laplace_power(k, r.value()); }

ZonalKernel apply_jr(const ZonalKernel& k, SobolevOrder r) { return scale_by_laplace_power(k, -r.value()); }

Spectrum jr_singular_values(const GeometryParams& params, SobolevOrder r, std::size_t count) {
  if (r.value() < 1) throw Error(ErrorCode::InvalidArgument, "J^r needs r >= 1");
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be positive");
  Spectrum s;
  s.entries.reserve(count);
  s.entries.push_back({1.0, 0, 0});
  for (std::int64_t n = 1; s.size() < count; ++n) {
    const BigInt dim = eigenspace_dim(params, n);
    if (dim == 0) continue;
    append_block(s, std::pow(laplace_eigenvalue_value(params, n), -r.value()), n, dim, count);
  }
  s.entries.resize(count);
  return s;
}

double hs_norm(const ZonalKernel& k) {
  CompensatedSum sum;
  const auto c = k.coeffs();
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c[n] == 0.0) continue;
    sum.add(to_double(eigenspace_dim(k.params(), static_cast<std::int64_t>(n))) * c[n] * c[n]);
  }
  return std::sqrt(sum.value());
}

double schatten_norm(std::span<const double> values, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "Schatten norm needs p >= 1");
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  CompensatedSum sum;
  for (double v : values) sum.add(std::pow(std::abs(v) / scale, p));
  return scale * std::pow(sum.value(), 1.0 / p);
}

double schatten_norm(const Spectrum& s, double p) {
  const auto v = s.values();
  return schatten_norm(std::span<const double>(v), p);
}

double operator_norm(const ZonalKernel& k) {
  double best = 0.0;
  for (double a : k.coeffs()) best = std::max(best, std::abs(a));
  return best;
}

bool is_positive_definite(const ZonalKernel& k) {
  const double tol = 1e-12 * operator_norm(k);
  return std::all_of(k.coeffs().begin(), k.coeffs().end(), [&](double a) { return a >= -tol; });
}

double sobolev_exponent_threshold(const GeometryParams& params, SobolevOrder r) {
  return 2.0 * r.value() + params.m() / 2.0;
}

std::string_view family_name(CoefficientFamily f) noexcept {
  switch (f) {
    case CoefficientFamily::Algebraic: return "algebraic";
    case CoefficientFamily::Geometric: return "geometric";
    case CoefficientFamily::GeneratingFunction: return "genfun";
  }
  return "unknown";
}

std::optional<CoefficientFamily> parse_family(std::string_view name) noexcept {
  for (auto f : {CoefficientFamily::Algebraic, CoefficientFamily::Geometric, CoefficientFamily::GeneratingFunction}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

ZonalKernel make_family_kernel(const GeometryParams& params, CoefficientFamily family, double parameter,
                               int max_degree) {
  if (max_degree < 0) throw Error(ErrorCode::InvalidArgument, "max_degree must be nonnegative");
  const JacobiParams jp = JacobiParams::from_geometry(params);
  switch (family) {
    case CoefficientFamily::Algebraic:
      if (!(parameter > 0.0)) throw Error(ErrorCode::InvalidArgument, "algebraic family needs gamma > 0");
      break;
    case CoefficientFamily::Geometric:
    case CoefficientFamily::GeneratingFunction:
      if (!(parameter > -1.0 && parameter < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, std::string(family_name(family)) + " family needs |parameter| < 1");
      }
      break;
  }
  std::vector<double> c(static_cast<std::size_t>(max_degree) + 1, 0.0);
  for (int n = 0; n <= max_degree; ++n) {
    const BigInt dim = eigenspace_dim(params, n);
    if (dim == 0) continue;
    switch (family) {
      case CoefficientFamily::Algebraic: c[n] = std::pow(n + 1.0, -parameter); break;
      case CoefficientFamily::Geometric: c[n] = std::pow(parameter, n); break;
      case CoefficientFamily::GeneratingFunction:
        c[n] = std::pow(parameter, n) * jacobi_at_one(jp, n) / to_double(dim);
        break;
    }
  }
  return ZonalKernel(params, std::move(c));
}

Profile zonal_profile_function(const ZonalKernel& k) {
  const JacobiParams jp = JacobiParams::from_geometry(k.params());
  std::vector<double> series(k.coeffs().begin(), k.coeffs().end());
  for (std::size_t n = 0; n < series.size(); ++n) {
    if (series[n] == 0.0) continue;
    const int deg = static_cast<int>(n);
    series[n] *= to_double(eigenspace_dim(k.params(), deg)) / jacobi_at_one(jp, deg);
  }
  return [jp, series = std::move(series)](double t) { return jacobi_series(jp, series, t); };
}

double zonal_profile(const ZonalKernel& k, double t) { return zonal_profile_function(k)(t); }

ZonalKernel kernel_from_profile(const GeometryParams& params, const Profile& profile, int max_degree,
                                const QuadratureRule& rule) {
  const JacobiParams jp = JacobiParams::from_geometry(params);
  const auto expansion = fourier_jacobi_coeffs(profile, jp, max_degree, rule);
  std::vector<double> c(expansion.values.size(), 0.0);
  for (std::size_t n = 0; n < c.size(); ++n) {
    const int deg = static_cast<int>(n);
    const BigInt dim = eigenspace_dim(params, deg);
    if (dim == 0) continue;
    c[n] = expansion.values[n] * jacobi_at_one(jp, deg) / to_double(dim);
  }
  return ZonalKernel(params, std::move(c));
}

}  // namespace homspec
