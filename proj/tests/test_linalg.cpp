#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "homspec/error.hpp"
#include "homspec/linalg.hpp"
#include "oracles.hpp"

using namespace homspec;
using namespace homspec::linalg;

namespace {

SymmetricMatrix random_symmetric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a.set(i, j, u(rng));
  }
  return a;
}

// det(lambda I - M) for a dense row-major matrix
double char_poly(const std::vector<std::vector<double>>& m, double lambda) {
  auto b = m;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (auto& x : b[i]) x = -x;
    b[i][i] += lambda;
  }
  return oracle::det_cofactor(b);
}

std::vector<std::vector<double>> rows_of(const SymmetricMatrix& a) {
  std::vector<std::vector<double>> m(a.order(), std::vector<double>(a.order()));
  for (std::size_t i = 0; i < a.order(); ++i) {
    for (std::size_t j = 0; j < a.order(); ++j) m[i][j] = a(i, j);
  }
  return m;
}

std::vector<std::vector<double>> rows_of(const TridiagonalForm& t) {
  const std::size_t n = t.diagonal.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = t.diagonal[i];
    if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = t.offdiagonal[i];
  }
  return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("construction checks") {
  const std::vector<double> ok{2, 1, 1, 2};
  CHECK(SymmetricMatrix::from_row_major(ok, 2)(0, 1) == 1.0);
  const std::vector<double> asym{2, 1, 0, 2};
  CHECK_THROWS_AS(SymmetricMatrix::from_row_major(asym, 2), Error);
  const std::vector<double> nan{2, NAN, NAN, 2};
  try {
    SymmetricMatrix::from_row_major(nan, 2);
    FAIL("expected NonFiniteEntry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteEntry);
  }
  try {
    SymmetricMatrix::from_row_major(ok, 3);
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
  SymmetricMatrix a(3);
  CHECK_THROWS_AS(a.set(0, 1, INFINITY), Error);
  a.set(2, 0, 5.0);
  CHECK(a(0, 2) == 5.0);
}

TEST_CASE("trace and norm") {
  const std::vector<double> v{1, -2, 0, -2, 3, 4, 0, 4, -5};
  const auto a = SymmetricMatrix::from_row_major(v, 3);
  CHECK(a.trace() == -1.0);
  CHECK(a.norm_inf() == 9.0);
}

TEST_CASE("tridiagonalize small cases") {
  SymmetricMatrix d(3);
  d.set(0, 0, 3);
  d.set(1, 1, 1);
  d.set(2, 2, 4);
  auto t = tridiagonalize(d, false);
  CHECK(t.diagonal == std::vector<double>{3, 1, 4});
  CHECK(t.offdiagonal == std::vector<double>{0, 0});

  const std::vector<double> two{2, 1, 1, 2};
  t = tridiagonalize(SymmetricMatrix::from_row_major(two, 2), false);
  CHECK(t.diagonal == std::vector<double>{2, 2});
  CHECK(std::abs(t.offdiagonal[0]) == 1.0);
}

TEST_CASE("tridiagonal form keeps the characteristic polynomial") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto a = random_symmetric(5, seed);
    const auto t = tridiagonalize(a, false);
    for (double lambda : {0.0, 1.0, 2.0}) {
      const double pa = char_poly(rows_of(a), lambda);
      const double pt = char_poly(rows_of(t), lambda);
      CHECK(pt == doctest::Approx(pa).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("accumulated transform reproduces the matrix") {
  const auto a = random_symmetric(12, 7);
  const auto t = tridiagonalize(a, true);
  REQUIRE(t.transform.has_value());
  const auto& q = *t.transform;
  const auto tm = rows_of(t);
  double worst = 0.0, worst_orth = 0.0;
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 12; ++j) {
      double qtq = 0.0, orth = 0.0;
      for (std::size_t k = 0; k < 12; ++k) {
        orth += q(k, i) * q(k, j);
        for (std::size_t l = 0; l < 12; ++l) qtq += q(i, k) * tm[k][l] * q(j, l);
      }
      worst = std::max(worst, std::abs(qtq - a(i, j)));
      worst_orth = std::max(worst_orth, std::abs(orth - (i == j ? 1.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-13);
  CHECK(worst_orth < 1e-13);
}

TEST_CASE("tridiagonal eigenvalues small cases") {
  TridiagonalForm t{{3, 1, 4}, {0, 0}, std::nullopt};
  CHECK(tridiag_eigen(t, false).values == std::vector<double>{4, 3, 1});

  TridiagonalForm two{{2, 2}, {1}, std::nullopt};
  const auto v = tridiag_eigen(two, false).values;
  CHECK(v[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("second difference matrix has cosine eigenvalues") {
  const std::size_t n = 40;
  TridiagonalForm t{std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0), std::nullopt};
  const auto v = tridiag_eigen(t, false).values;
  for (std::size_t k = 1; k <= n; ++k) {
    const double expected = 2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1));
    CHECK(v[n - k] == doctest::Approx(expected).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("Legendre Jacobi matrix is symmetric about zero") {
  const std::size_t n = 50;
  TridiagonalForm t{std::vector<double>(n, 0.0), std::vector<double>(n - 1), std::nullopt};
  for (std::size_t k = 1; k < n; ++k) t.offdiagonal[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  const auto v = tridiag_eigen(t, false).values;
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(std::abs(v[i]) < 1.0);
    CHECK(v[i] == doctest::Approx(-v[n - 1 - i]).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("symmetric eigenvalues small cases") {
  CHECK(symmetric_eigen(SymmetricMatrix(4)) == std::vector<double>(4, 0.0));
  CHECK(symmetric_eigen(SymmetricMatrix::identity(3)) == std::vector<double>(3, 1.0));

  // v v^T with |v|^2 = 7
  const std::vector<double> v{1, 2, 1, 1};
  SymmetricMatrix a(4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a.set(i, j, v[i] * v[j]);
  }
  const auto e = symmetric_eigen(a);
  CHECK(e[0] == doctest::Approx(7.0).epsilon(1e-14));
  for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(e[i]) < 1e-14);
}

TEST_CASE("eigen decomposition properties on random matrices") {
  for (std::size_t n : {1u, 2u, 3u, 10u, 37u, 80u}) {
    const auto a = random_symmetric(n, 100 + n);
    const auto res = symmetric_eigen_vectors(a);
    REQUIRE(res.vectors.has_value());
    const auto& z = *res.vectors;

    CHECK(std::is_sorted(res.values.rbegin(), res.values.rend()));
    double sum = 0.0;
    for (double x : res.values) sum += x;
    CHECK(std::abs(sum - a.trace()) <= 1e-9 * n * a.norm_inf());

    double gram = 0.0, residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double g = 0.0, av = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          g += z(k, i) * z(k, j);
          av += a(j, k) * z(k, i);
        }
        gram = std::max(gram, std::abs(g - (i == j ? 1.0 : 0.0)));
        residual = std::max(residual, std::abs(av - res.values[i] * z(j, i)));
      }
    }
    CHECK(gram <= 1e-8);
    CHECK(residual <= 1e-10 * std::max(1.0, a.norm_inf()));

    // values alone agree with the vector path
    const auto only = symmetric_eigen(a);
    for (std::size_t i = 0; i < n; ++i) CHECK(only[i] == doctest::Approx(res.values[i]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("eigenvalues are roots of the characteristic polynomial") {
  const auto a = random_symmetric(6, 99);
  for (double lambda : symmetric_eigen(a)) CHECK(std::abs(char_poly(rows_of(a), lambda)) < 1e-10);
}

TEST_CASE("Weyl hook: symmetric products match") {
  const auto a = random_symmetric(15, 5);
  const auto vals = symmetric_eigen(a);
  // singular values from the eigenvalues of A^T A
  SymmetricMatrix ata(15);
  for (std::size_t i = 0; i < 15; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 15; ++k) s += a(k, i) * a(k, j);
      ata.set(i, j, s);
    }
  }
  auto sv = symmetric_eigen(ata);
  for (auto& x : sv) x = std::sqrt(std::max(0.0, x));
  std::vector<double> mag(vals.size());
  std::transform(vals.begin(), vals.end(), mag.begin(), [](double x) { return std::abs(x); });
  std::sort(mag.rbegin(), mag.rend());
  double lp = 1.0, sp = 1.0;
  for (std::size_t k = 0; k < 15; ++k) {
    lp *= mag[k];
    sp *= sv[k];
    CHECK(lp <= sp * (1.0 + 1e-8) + 1e-12);
  }
}

TEST_CASE("first components match full eigenvectors") {
  TridiagonalForm t{{1, 2, 3, 4, 5}, {0.5, 0.25, 0.125, 0.0625}, std::nullopt};
  const auto full = tridiag_eigen(t, true);
  const auto first = tridiag_eigen_first_components(t);
  REQUIRE(full.vectors.has_value());
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(first.values[j] == doctest::Approx(full.values[j]).epsilon(1e-14));
    CHECK(std::abs(first.first[j]) == doctest::Approx(std::abs((*full.vectors)(0, j))).epsilon(1e-12));
  }
}

TEST_CASE("clusters of tiny eigenvalues converge") {
  // rank-two matrix plus rounding-level noise
  const std::size_t n = 120;
  SymmetricMatrix a(n);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = u(rng);
    y[i] = u(rng);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a.set(i, j, x[i] * x[j] + 1e-3 * y[i] * y[j] + 1e-17 * u(rng));
  }
  CHECK_NOTHROW(symmetric_eigen(a));
}

}  // TEST_SUITE
