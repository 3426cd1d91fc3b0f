#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hp2sph/fourier2sph.hpp"
#include "test_util.hpp"

using namespace hp2sph;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("expand_to_odd splits the Nyquist column") {
  const int p = 3;
  BivariateFourier C(p);
  C.at(0, -p) = 2.0;
  OddExpanded X = expand_to_odd(C);
  CHECK(X.at(0, -p) == cplx{1.0, 0.0});
  CHECK(X.at(0, p) == cplx{1.0, 0.0});

  // Without Nyquist content X matches C on the shared range; new columns zero.
  BivariateFourier C2(p);
  std::mt19937 rng(1);
  std::normal_distribution<double> dist;
  for (int j = -p; j <= p; ++j)
    for (int k = -p + 1; k <= p - 1; ++k) C2.at(j, k) = cplx{dist(rng), dist(rng)};
  OddExpanded X2 = expand_to_odd(C2);
  for (int j = -p; j <= p; ++j) {
    for (int k = -p + 1; k <= p - 1; ++k) CHECK(X2.at(j, k) == C2.at(j, k));
    CHECK(X2.at(j, -p) == cplx{0.0, 0.0});
    CHECK(X2.at(j, p) == cplx{0.0, 0.0});
  }

  // Mass preservation per row.
  BivariateFourier C3(p);
  for (int j = -p; j <= p; ++j)
    for (int k = -p; k <= p - 1; ++k) C3.at(j, k) = cplx{dist(rng), dist(rng)};
  OddExpanded X3 = expand_to_odd(C3);
  for (int j = -p; j <= p; ++j) {
    cplx cs{0.0, 0.0}, xs{0.0, 0.0};
    for (int k = -p; k <= p - 1; ++k) cs += C3.at(j, k);
    for (int k = -p; k <= p; ++k) xs += X3.at(j, k);
    CHECK(std::abs(cs - xs) <= 1e-14);
  }
}

TEST_CASE("g coefficients of simple functions") {
  // f = cos(theta): X_{1,0} = X_{-1,0} = 1/2.
  const int p = 4;
  OddExpanded X(p);
  X.at(1, 0) = 0.5;
  X.at(-1, 0) = 0.5;
  GCoefficients g = to_g_coefficients(X);
  CHECK(std::abs(g.at(1, 0) - cplx{std::sqrt(2.0 * kPi), 0.0}) <= 1e-14);
  CHECK(std::abs(g.at(0, 0)) <= 1e-15);

  // f = 1: X_{0,0} = 1.
  OddExpanded X1(p);
  X1.at(0, 0) = 1.0;
  GCoefficients g1 = to_g_coefficients(X1);
  CHECK(std::abs(g1.at(0, 0) - cplx{std::sqrt(2.0 * kPi), 0.0}) <= 1e-14);

  // Odd-k columns have a structurally zero bottom row.
  std::mt19937 rng(4);
  std::normal_distribution<double> dist;
  OddExpanded Xr(p);
  for (int j = -p; j <= p; ++j)
    for (int k = -p; k <= p; ++k) Xr.at(j, k) = cplx{dist(rng), dist(rng)};
  GCoefficients gr = to_g_coefficients(Xr);
  for (int k = -p; k <= p; ++k)
    if (((k % 2) + 2) % 2 == 1) CHECK(gr.at(p, k) == cplx{0.0, 0.0});
}

TEST_CASE("dual expansion oracle on sphere-consistent coefficients") {
  // X from an actual sphere function (random band-limited map) carries the
  // parity and realness structure; both expansions must then agree pointwise.
  const int p = 8;
  SphCoeffTriangle truth = testutil::random_symmetric_triangle(p, 42);
  BivariateFourier C = testutil::bivariate_from_triangle(truth, p);
  OddExpanded X = expand_to_odd(C);
  CHECK(parity_defect(X) <= 1e-11);
  GCoefficients g = to_g_coefficients(X);

  std::mt19937 rng(43);
  std::uniform_real_distribution<double> ulam(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> uth(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const double lambda = ulam(rng), theta = uth(rng);
    cplx via_x{0.0, 0.0};
    for (int j = -p; j <= p; ++j)
      for (int k = -p; k <= p; ++k)
        via_x += X.at(j, k) * std::polar(1.0, j * theta + k * lambda);
    cplx via_g{0.0, 0.0};
    for (int j = 0; j <= p; ++j)
      for (int k = -p; k <= p; ++k) {
        const bool even = ((k % 2) + 2) % 2 == 0;
        const double branch = even ? std::cos(j * theta) : std::sin((j + 1) * theta);
        via_g += g.at(j, k) * std::polar(1.0, k * lambda) /
                 std::sqrt(2.0 * kPi) * branch;
      }
    CHECK(std::abs(via_x - via_g) <= 1e-11);
  }
}

TEST_CASE("projection closed forms") {
  // f = cos(theta) -> a_1^0 = sqrt(4*pi/3).
  const int p = 6;
  OddExpanded X(p);
  X.at(1, 0) = 0.5;
  X.at(-1, 0) = 0.5;
  SphCoeffTriangle a = g_to_alm(to_g_coefficients(X), p);
  CHECK(std::abs(a.at(1, 0) - cplx{std::sqrt(4.0 * kPi / 3.0), 0.0}) <= 1e-12);
  for (int l = 0; l <= p; ++l)
    for (int m = -l; m <= l; ++m)
      if (!(l == 1 && m == 0)) CHECK(std::abs(a.at(l, m)) <= 1e-12);

  OddExpanded X1(p);
  X1.at(0, 0) = 1.0;
  SphCoeffTriangle a1 = g_to_alm(to_g_coefficients(X1), p);
  CHECK(std::abs(a1.at(0, 0) - cplx{2.0 * std::sqrt(kPi), 0.0}) <= 1e-12);
}

TEST_CASE("band-limited exactness of the full conversion chain") {
  const int p = 8;
  for (int l = 0; l <= p; ++l) {
    for (int m = 0; m <= l; ++m) {
      SphCoeffTriangle truth(p);
      truth.at(l, m) = 1.0;
      if (m > 0) truth.at(l, -m) = (m % 2 == 0) ? 1.0 : -1.0;
      BivariateFourier C = testutil::bivariate_from_triangle(truth, p);
      SphCoeffTriangle got = g_to_alm(to_g_coefficients(expand_to_odd(C)), p);
      CHECK(testutil::max_abs_diff(got, truth) <= 1e-11);
    }
  }
}

TEST_CASE("round trip through the bivariate oracle at ell_max = 12") {
  const int p = 12;
  SphCoeffTriangle truth = testutil::random_symmetric_triangle(p, 7);
  BivariateFourier C = testutil::bivariate_from_triangle(truth, p);
  SphCoeffTriangle got = g_to_alm(to_g_coefficients(expand_to_odd(C)), p);
  CHECK(testutil::max_abs_diff(got, truth) <= 1e-11);
}
