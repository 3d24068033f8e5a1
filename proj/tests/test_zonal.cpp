#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "homspec/error.hpp"
#include "homspec/zonal.hpp"
#include "oracles.hpp"

using namespace homspec;

namespace {

const GeometryParams kS2 = space_params(SpaceKind::Sphere, 2);

ZonalKernel single(const GeometryParams& g, int degree, double value) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c[degree] = value;
  return ZonalKernel(g, c);
}

// multiplicity expansion by brute force: repeat, then sort by magnitude
std::vector<double> brute_spectrum(const ZonalKernel& k) {
  std::vector<double> v;
  for (int n = 0; n <= k.max_degree(); ++n) {
    const auto d = eigenspace_dim(k.params(), n).convert_to<std::size_t>();
    for (std::size_t j = 0; j < d; ++j) v.push_back(k.coeffs()[n]);
  }
  std::stable_sort(v.begin(), v.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  return v;
}

std::vector<GeometryParams> small_spaces() {
  return {kS2,
          space_params(SpaceKind::Sphere, 5),
          space_params(SpaceKind::RealProjective, 3),
          space_params(SpaceKind::ComplexProjective, 4),
          space_params(SpaceKind::QuaternionProjective, 8),
          space_params(SpaceKind::CayleyPlane, 16)};
}

}  // namespace

TEST_SUITE("zonal") {

TEST_CASE("kernel construction checks") {
  CHECK_THROWS_AS(ZonalKernel(kS2, {}), Error);
  CHECK_THROWS_AS(ZonalKernel(kS2, {1.0, NAN}), Error);
  const auto rp = space_params(SpaceKind::RealProjective, 2);
  CHECK_THROWS_AS(ZonalKernel(rp, {1.0, 0.5}), Error);
  CHECK_NOTHROW(ZonalKernel(rp, {1.0, 0.0, 0.5}));
  CHECK_THROWS_AS(SobolevOrder(-1), Error);
}

TEST_CASE("spectrum examples") {
  const ZonalKernel rank_one(kS2, {1.0});
  try {
    zonal_spectrum(rank_one, 3);
    FAIL("expected InsufficientCoefficients");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientCoefficients);
  }
  const auto padded = zonal_spectrum(rank_one, 3, true);
  CHECK(padded.values() == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(padded.entries[0].degree == 0);
  CHECK(padded.entries[1].degree == -1);

  const ZonalKernel geo(kS2, {1.0, 0.5, 0.25});
  CHECK(zonal_spectrum(geo, 9).values() == std::vector<double>{1, 0.5, 0.5, 0.5, 0.25, 0.25, 0.25, 0.25, 0.25});

  const ZonalKernel alt(kS2, {1.0, -0.5, 0.25});
  CHECK(zonal_spectrum(alt, 4).values() == std::vector<double>{1, -0.5, -0.5, -0.5});
}

TEST_CASE("ties break by ascending degree") {
  const ZonalKernel k(kS2, {0.5, -0.5, 0.5});
  const auto s = zonal_spectrum(k, 9);
  for (std::size_t i = 0; i < 9; ++i) {
    const std::int64_t expected = i == 0 ? 0 : (i < 4 ? 1 : 2);
    CHECK(s.entries[i].degree == expected);
  }
  CHECK(s.entries[3].index_in_block == 2);
}

TEST_CASE("spectrum equals brute force expansion") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& g : small_spaces()) {
    std::vector<double> c(9);
    for (std::size_t n = 0; n < c.size(); ++n) {
      c[n] = (g.kind() == SpaceKind::RealProjective && n % 2 == 1) ? 0.0 : u(rng);
    }
    const ZonalKernel k(g, c);
    const auto expect = brute_spectrum(k);
    const std::size_t count = std::min<std::size_t>(expect.size(), 3000);
    const auto s = zonal_spectrum(k, count);
    for (std::size_t i = 0; i < count; ++i) CHECK(s.entries[i].value == expect[i]);
  }
}

TEST_CASE("block ends sit at cumulative dimensions") {
  for (const auto& g : small_spaces()) {
    const auto k = make_family_kernel(g, CoefficientFamily::Geometric, 0.5, 12);
    const auto total = stored_spectrum_size(k).convert_to<std::size_t>();
    const auto s = zonal_spectrum(k, std::min<std::size_t>(total, 20000));
    for (int n = 0; n <= 12; ++n) {
      if (eigenspace_dim(g, n) == 0) continue;
      const auto end = cumulative_dim(g, n).convert_to<std::size_t>();
      if (end > s.size()) break;
      CHECK(s.entries[end - 1].degree == n);
      if (end < s.size()) CHECK(s.entries[end].degree != n);
    }
  }
}

TEST_CASE("Laplace powers") {
  const auto k = make_family_kernel(kS2, CoefficientFamily::Geometric, 0.5, 6);
  CHECK(apply_lb(k, SobolevOrder(0)).coeffs()[4] == k.coeffs()[4]);
  CHECK(apply_lb(single(kS2, 3, 1.0), SobolevOrder(2)).coeffs()[3] == 144.0);
  for (const auto& g : small_spaces()) {
    const auto kk = make_family_kernel(g, CoefficientFamily::Algebraic, 3.0, 20);
    const auto back = apply_jr(apply_lb(kk, SobolevOrder(3)), SobolevOrder(3));
    for (int n = 0; n <= 20; ++n) CHECK(back.coeffs()[n] == doctest::Approx(kk.coeffs()[n]).epsilon(1e-14));
  }
}

TEST_CASE("singular values of J^r") {
  CHECK(jr_singular_values(kS2, SobolevOrder(1), 4).values() == std::vector<double>{1, 0.5, 0.5, 0.5});
  CHECK_THROWS_AS(jr_singular_values(kS2, SobolevOrder(0), 4), Error);
  const auto rp = space_params(SpaceKind::RealProjective, 2);
  const auto s = jr_singular_values(rp, SobolevOrder(1), 7);
  // degree 2 block of size 5, value 1/(2*3)
  CHECK(s.entries[1].degree == 2);
  CHECK(s.entries[6].degree == 4);
  CHECK(s.entries[1].value == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("Hilbert-Schmidt norm") {
  CHECK(hs_norm(ZonalKernel(kS2, {1.0})) == 1.0);
  CHECK(hs_norm(single(kS2, 1, 1.0)) == doctest::Approx(std::sqrt(3.0)));
  CHECK(hs_norm(ZonalKernel(kS2, {0.0, 0.0})) == 0.0);
}

TEST_CASE("Schatten norms") {
  const std::vector<double> s{1, 0.5, 0.5, 0.5};
  CHECK(schatten_norm(s, 2) == doctest::Approx(std::sqrt(7.0) / 2.0));
  const std::vector<double> mixed{1, -0.5, 0.25};
  CHECK(schatten_norm(mixed, 1) == doctest::Approx(1.75));
  const std::vector<double> one{-3.0};
  for (double p : {1.0, 1.5, 2.0, 7.0}) CHECK(schatten_norm(one, p) == doctest::Approx(3.0));
  CHECK_THROWS_AS(schatten_norm(one, 0.5), Error);
}

TEST_CASE("Parseval over the full stored spectrum") {
  for (const auto& g : small_spaces()) {
    for (auto family : {CoefficientFamily::Algebraic, CoefficientFamily::Geometric,
                        CoefficientFamily::GeneratingFunction}) {
      const double param = family == CoefficientFamily::Algebraic ? 2.5 : 0.4;
      const auto k = make_family_kernel(g, family, param, 10);
      const auto total = stored_spectrum_size(k).convert_to<std::size_t>();
      if (total > 2'000'000) continue;
      const auto s = zonal_spectrum(k, total);
      CHECK(schatten_norm(s, 2) == doctest::Approx(hs_norm(k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("positive definiteness") {
  CHECK(is_positive_definite(make_family_kernel(kS2, CoefficientFamily::Geometric, 0.5, 10)));
  CHECK_FALSE(is_positive_definite(single(kS2, 1, -1.0)));
  CHECK(is_positive_definite(ZonalKernel(kS2, {0.0, 0.0, 0.0})));
  // positive definite kernels have s_n = |lambda_n| = lambda_n
  const auto s = zonal_spectrum(make_family_kernel(kS2, CoefficientFamily::Algebraic, 3.0, 30), 500);
  for (const auto& e : s.entries) CHECK(e.value == std::abs(e.value));
}

TEST_CASE("Sobolev threshold") {
  CHECK(sobolev_exponent_threshold(kS2, SobolevOrder(1)) == 3.0);
  CHECK(sobolev_exponent_threshold(space_params(SpaceKind::CayleyPlane, 16), SobolevOrder(8)) == 24.0);
  for (const auto& g : small_spaces()) CHECK(sobolev_exponent_threshold(g, SobolevOrder(0)) == g.m() / 2.0);
}

TEST_CASE("Sobolev threshold separates convergent series") {
  // block sums of d_n (lambda_n^r a_n)^2 with a_n = (n+1)^-gamma over doubling
  // windows shrink above the threshold and grow below it
  for (const auto& g : small_spaces()) {
    const SobolevOrder r(1);
    const double th = sobolev_exponent_threshold(g, r);
    auto growth = [&](double gamma) {
      const auto k = apply_lb(make_family_kernel(g, CoefficientFamily::Algebraic, gamma, 4000), r);
      auto block = [&](int lo, int hi) {
        double s = 0.0;
        for (int n = lo; n < hi; ++n) s += to_double(eigenspace_dim(g, n)) * k.coeffs()[n] * k.coeffs()[n];
        return s;
      };
      return block(2000, 4000) / block(1000, 2000);
    };
    CHECK(growth(th + 0.5) < 0.75);
    CHECK(growth(th - 0.5) > 1.5);
  }
}

TEST_CASE("family names") {
  for (auto f : {CoefficientFamily::Algebraic, CoefficientFamily::Geometric, CoefficientFamily::GeneratingFunction}) {
    CHECK(parse_family(family_name(f)) == f);
  }
  CHECK_FALSE(parse_family("gaussian").has_value());
  CHECK_THROWS_AS(make_family_kernel(kS2, CoefficientFamily::Geometric, 1.0, 4), Error);
  CHECK_THROWS_AS(make_family_kernel(kS2, CoefficientFamily::Algebraic, 0.0, 4), Error);
}

TEST_CASE("families zero the odd degrees on real projective space") {
  const auto rp = space_params(SpaceKind::RealProjective, 4);
  const auto k = make_family_kernel(rp, CoefficientFamily::GeneratingFunction, 0.3, 9);
  for (int n = 1; n <= 9; n += 2) CHECK(k.coeffs()[n] == 0.0);
  CHECK(k.coeffs()[2] > 0.0);
}

TEST_CASE("profile evaluation") {
  // geometric family on S^2 is the Poisson kernel
  const double q = 0.5;
  const auto k = make_family_kernel(kS2, CoefficientFamily::Geometric, q, 80);
  for (double t : {-1.0, -0.2, 0.4, 1.0}) {
    const double closed = (1 - q * q) / std::pow(1 - 2 * q * t + q * q, 1.5);
    CHECK(zonal_profile(k, t) == doctest::Approx(closed).epsilon(1e-12));
  }
  // generating-function family reproduces the generating function
  for (const auto& g : small_spaces()) {
    const auto kg = make_family_kernel(g, CoefficientFamily::GeneratingFunction, 0.3, 120);
    const auto jp = JacobiParams::from_geometry(g);
    const auto f = zonal_profile_function(kg);
    for (double t : {-0.9, 0.0, 0.7}) {
      double expected = jacobi_generating_function(jp, 0.3, t);
      if (g.kind() == SpaceKind::RealProjective) {
        // odd terms removed: even part in z
        expected = 0.5 * (expected + jacobi_generating_function(jp, -0.3, t));
      }
      CHECK(f(t) == doctest::Approx(expected).epsilon(1e-11));
    }
  }
}

TEST_CASE("profile to kernel round trip") {
  for (const auto& g : small_spaces()) {
    std::vector<double> c(11, 0.0);
    for (std::size_t n = 0; n < c.size(); ++n) {
      if (eigenspace_dim(g, static_cast<std::int64_t>(n)) > 0) c[n] = 1.0 / (1.0 + n * n);
    }
    const ZonalKernel k(g, c);
    const auto jp = JacobiParams::from_geometry(g);
    const auto back = kernel_from_profile(g, zonal_profile_function(k), 10, gauss_jacobi(jp, default_rule_size(10)));
    for (int n = 0; n <= 10; ++n) CHECK(std::abs(back.coeffs()[n] - c[n]) < 1e-10);
  }
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(ZonalKernel(kS2, {0.5, -2.0, 1.0})) == 2.0);
}

}  // TEST_SUITE
