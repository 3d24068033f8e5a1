#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "homspec/geometry.hpp"
#include "homspec/jacobi.hpp"

namespace homspec {

// Normalization used throughout: a zonal kernel is
//
//   K(x,y) = sum_n a_n Z_n(x,y),   Z_n(x,y) = d_n P_n(t) / P_n(1),
//
// where t is the point-pair invariant and Z_n is the reproducing kernel of
// the degree-n eigenspace with respect to the normalized volume measure
// dx / vol(M). The integral operator f -> (1/vol) int K(.,y) f(y) dy then
// acts on that eigenspace as multiplication by a_n, so a_n is an
// eigenvalue of multiplicity d_n, and ||K||^2 = sum_n d_n a_n^2.

/// Order r of the Laplace-Beltrami power; r >= 0.
class SobolevOrder {
 public:
  explicit SobolevOrder(int r);
  int value() const noexcept { return r_; }

 private:
  int r_;
};

class ZonalKernel {
 public:
  /// coeffs[n] = a_n for n = 0..coeffs.size()-1. Entries must be finite, and
  /// zero wherever d_n = 0 (odd n on the real projective space).
  ZonalKernel(GeometryParams params, std::vector<double> coeffs);

  const GeometryParams& params() const noexcept { return params_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  int max_degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

 private:
  GeometryParams params_;
  std::vector<double> coeffs_;
};

struct SpectrumEntry {
  double value;
  std::int64_t degree;  // -1 when unknown (padding or ambiguous inference)
  std::uint64_t index_in_block;
};

/// Finite spectrum ordered by nonincreasing |value|.
struct Spectrum {
  std::vector<SpectrumEntry> entries;
  bool degrees_ambiguous = false;

  std::size_t size() const noexcept { return entries.size(); }
  std::vector<double> values() const;
  std::vector<double> abs_values() const;
};

/// First `count` entries of {a_n repeated d_n times}, by |a_n| descending,
/// ties by ascending degree. Throws InsufficientCoefficients when the stored
/// range holds fewer than `count` entries, unless `pad_zeros`.
Spectrum zonal_spectrum(const ZonalKernel& k, std::size_t count, bool pad_zeros = false);

/// Number of entries contributed by the stored coefficient range.
BigInt stored_spectrum_size(const ZonalKernel& k);

/// Coefficients of K_{0,r} = B_y^r K: a_n -> lambda_n^r a_n (lambda_0 = 1).
ZonalKernel apply_lb(const ZonalKernel& k, SobolevOrder r);

/// Coefficients of the composition with J^r: a_n -> lambda_n^{-r} a_n.
ZonalKernel apply_jr(const ZonalKernel& k, SobolevOrder r);

/// Block-ordered singular values of J^r: 1, then d_n copies of
/// n^{-r} (n + alpha + beta + 1)^{-r} for n >= 1 (even n only on the real
/// projective space). Requires r >= 1.
Spectrum jr_singular_values(const GeometryParams& params, SobolevOrder r, std::size_t count);

/// sqrt(sum_n d_n a_n^2) over the stored range.
double hs_norm(const ZonalKernel& k);

/// (sum |s|^p)^{1/p}; p >= 1.
double schatten_norm(const Spectrum& s, double p);
double schatten_norm(std::span<const double> values, double p);

/// Operator norm sup_n |a_n| of a zonal operator.
double operator_norm(const ZonalKernel& k);

/// True iff every a_n >= -1e-12 max|a_n|.
bool is_positive_definite(const ZonalKernel& k);

/// 2r + m/2: a_n = (n+1)^{-gamma} has K_{0,r} in L^2 iff gamma exceeds this.
double sobolev_exponent_threshold(const GeometryParams& params, SobolevOrder r);

// Built-in coefficient families.
enum class CoefficientFamily { Algebraic, Geometric, GeneratingFunction };

std::string_view family_name(CoefficientFamily f) noexcept;
std::optional<CoefficientFamily> parse_family(std::string_view name) noexcept;

/// algebraic: a_n = (n+1)^{-parameter}; geometric: a_n = parameter^n;
/// genfun: the profile sum_n z^n P_n(t) with z = parameter, i.e.
/// a_n = z^n P_n(1) / d_n. Odd degrees are zeroed on the real projective
/// space.
ZonalKernel make_family_kernel(const GeometryParams& params, CoefficientFamily family, double parameter,
                               int max_degree);

/// Profile value k(t) = sum_n a_n d_n P_n(t) / P_n(1).
double zonal_profile(const ZonalKernel& k, double t);

/// The same profile as a reusable function with the series coefficients
/// precomputed.
Profile zonal_profile_function(const ZonalKernel& k);

/// Projects a profile onto the eigenspaces: a_n = c_n P_n(1) / d_n with c_n
/// the Fourier-Jacobi coefficients of the profile.
ZonalKernel kernel_from_profile(const GeometryParams& params, const Profile& profile, int max_degree,
                                const QuadratureRule& rule);

}  // namespace homspec
