#include "homspec/nystrom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "homspec/error.hpp"

namespace homspec {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Degrees stored for the analytic side: enough blocks of size 2n+1 to cover
// top_k entries, with margin for families whose ordering is not by degree.
int degree_for_entries(std::size_t top_k) {
  int n = 0;
  for (std::size_t total = 1; total < top_k; total += 2 * static_cast<std::size_t>(++n) + 1) {
  }
  return 2 * n + 40;
}

}  // namespace

SphereGrid sphere_grid(int n_polar, int n_azimuthal) {
  if (n_polar < 1 || n_azimuthal < 1) throw Error(ErrorCode::InvalidArgument, "grid sizes must be positive");
  const auto legendre = gauss_jacobi(JacobiParams(0.0, 0.0), n_polar);
  const double dphi = 2.0 * std::numbers::pi / n_azimuthal;

  SphereGrid g;
  g.points.reserve(static_cast<std::size_t>(n_polar) * n_azimuthal);
  g.weights.reserve(g.points.capacity());
  for (int i = 0; i < n_polar; ++i) {
    const double z = legendre.nodes[i];
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < n_azimuthal; ++j) {
      const double phi = dphi * j;
      g.points.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
      g.weights.push_back(legendre.weights[i] * dphi);
    }
  }
  return g;
}

linalg::SymmetricMatrix assemble_matrix(const Profile& k, const SphereGrid& grid) {
  const std::size_t n = grid.size();
  linalg::SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = grid.points[i];
    for (std::size_t j = 0; j <= i; ++j) {
      const auto& y = grid.points[j];
      const double t = std::clamp(x[0] * y[0] + x[1] * y[1] + x[2] * y[2], -1.0, 1.0);
      const double kv = k(t);
      if (!std::isfinite(kv)) {
        throw Error(ErrorCode::NonFiniteKernelValue, "profile is not finite at t=" + std::to_string(t));
      }
      a.set(i, j, std::sqrt(grid.weights[i] * grid.weights[j]) * kv / kFourPi);
    }
  }
  return a;
}

Spectrum nystrom_spectrum(const Profile& k, int n_polar, int n_azimuthal, std::size_t top_k) {
  const auto grid = sphere_grid(n_polar, n_azimuthal);
  if (top_k > grid.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "top_k=" + std::to_string(top_k) + " exceeds grid size " + std::to_string(grid.size()));
  }
  auto values = linalg::symmetric_eigen(assemble_matrix(k, grid));
  std::stable_sort(values.begin(), values.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });

  Spectrum s;
  s.entries.reserve(top_k);
  std::size_t start = 0;
  while (start < top_k) {
    std::size_t end = start + 1;
    while (end < values.size()) {
      const double ref = std::max(std::abs(values[start]), std::abs(values[end]));
      if (std::abs(values[end] - values[start]) > kRunGapThreshold * ref) break;
      ++end;
    }
    const std::size_t len = end - start;
    std::int64_t degree = -1;
    if (len % 2 == 1) {
      degree = static_cast<std::int64_t>((len - 1) / 2);
    } else {
      s.degrees_ambiguous = true;
    }
    for (std::size_t j = start; j < end && j < top_k; ++j) {
      s.entries.push_back({values[j], degree, static_cast<std::uint64_t>(j - start)});
    }
    start = end;
  }
  return s;
}

double compare_spectra(const Spectrum& analytic, const Spectrum& numeric, std::size_t top_k) {
  if (analytic.size() < top_k || numeric.size() < top_k) {
    throw Error(ErrorCode::LengthMismatch, "spectra hold " + std::to_string(analytic.size()) + " and " +
                                               std::to_string(numeric.size()) + " entries, need " +
                                               std::to_string(top_k));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < top_k; ++i) {
    const double a = analytic.entries[i].value;
    const double b = numeric.entries[i].value;
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-14));
  }
  return worst;
}

Profile sphere_family_profile(CoefficientFamily family, double parameter) {
  const auto s2 = space_params(SpaceKind::Sphere, 2);
  switch (family) {
    case CoefficientFamily::Geometric: {
      const double q = parameter;
      if (!(std::abs(q) < 1.0)) throw Error(ErrorCode::InvalidArgument, "geometric family needs |q| < 1");
      return [q](double t) { return (1.0 - q * q) / std::pow(1.0 - 2.0 * q * t + q * q, 1.5); };
    }
    case CoefficientFamily::GeneratingFunction: {
      const JacobiParams legendre(0.0, 0.0);
      make_family_kernel(s2, family, parameter, 0);  // validates |z| < 1
      return [legendre, z = parameter](double t) { return jacobi_generating_function(legendre, z, t); };
    }
    case CoefficientFamily::Algebraic:
      return zonal_profile_function(make_family_kernel(s2, family, parameter, 400));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

NystromComparison nystrom_check(CoefficientFamily family, double parameter, int n_polar, int n_azimuthal,
                                std::size_t top_k) {
  const auto s2 = space_params(SpaceKind::Sphere, 2);
  const auto profile = sphere_family_profile(family, parameter);
  NystromComparison out;
  out.analytic = zonal_spectrum(make_family_kernel(s2, family, parameter, degree_for_entries(top_k)), top_k);
  out.numeric = nystrom_spectrum(profile, n_polar, n_azimuthal, top_k);
  out.max_rel_error = compare_spectra(out.analytic, out.numeric, top_k);
  return out;
}

}  // namespace homspec
