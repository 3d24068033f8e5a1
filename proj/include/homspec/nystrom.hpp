#pragma once

#include <array>
#include <vector>

#include "homspec/jacobi.hpp"
#include "homspec/linalg.hpp"
#include "homspec/zonal.hpp"

namespace homspec {

/// Product quadrature on the unit sphere S^2 in R^3.
struct SphereGrid {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;  // sum to 4 pi

  std::size_t size() const noexcept { return points.size(); }
};

/// Gauss-Legendre in cos(theta) times a uniform azimuthal rule. Exact for
/// spherical polynomials of degree <= min(2 n_polar - 1, n_azimuthal - 1).
SphereGrid sphere_grid(int n_polar, int n_azimuthal);

/// A_ij = sqrt(w_i w_j) k(x_i . x_j) / (4 pi). Throws NonFiniteKernelValue.
linalg::SymmetricMatrix assemble_matrix(const Profile& k, const SphereGrid& grid);

/// Relative gap below which neighbouring eigenvalues are treated as one
/// multiplicity run.
inline constexpr double kRunGapThreshold = 1e-3;

/// Top `top_k` eigenvalues by magnitude; degrees are inferred from runs of
/// length 2n+1. Runs of even length leave degree -1 and set
/// degrees_ambiguous.
Spectrum nystrom_spectrum(const Profile& k, int n_polar, int n_azimuthal, std::size_t top_k);

/// max over the first top_k of |a - b| / max(|a|, 1e-14). LengthMismatch if
/// either spectrum is shorter than top_k.
double compare_spectra(const Spectrum& analytic, const Spectrum& numeric, std::size_t top_k);

/// Closed-form profile of a built-in family on S^2: geometric q is the
/// Poisson kernel (1 - q^2)/(1 - 2qt + q^2)^{3/2}, genfun z is the Legendre
/// generating function (1 - 2zt + z^2)^{-1/2}. The algebraic family has no
/// closed form and is summed to degree 400.
Profile sphere_family_profile(CoefficientFamily family, double parameter);

struct NystromComparison {
  Spectrum analytic;
  Spectrum numeric;
  double max_rel_error;
};

/// Analytic zonal spectrum of the family on S^2 against the Nystrom
/// spectrum of its closed-form profile.
NystromComparison nystrom_check(CoefficientFamily family, double parameter, int n_polar, int n_azimuthal,
                                std::size_t top_k);

}  // namespace homspec
