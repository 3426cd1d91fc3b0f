#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hp2sph/ringstep.hpp"
#include "reference.hpp"
#include "test_util.hpp"

using namespace hp2sph;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("constant ring maps to a lone zero-wavenumber coefficient") {
  std::vector<double> vals(8, 2.5);
  auto row = ring_to_aligned_coeffs(vals, 2, RingKind::equatorial, 2);
  REQUIRE(row.size() == 8);
  CHECK(std::abs(row[4] - cplx{2.5, 0.0}) <= 1e-15);
  for (int col = 0; col < 8; ++col)
    if (col != 4) CHECK(std::abs(row[col]) <= 1e-15);
}

TEST_CASE("polar ring j=1 of cos(lambda) lands on c_1 = c_-1 = 1/2") {
  const int n_side = 4;
  std::vector<double> vals(4);
  for (int k = 0; k < 4; ++k) vals[k] = std::cos(kPi * (k + 0.5) / 2.0);
  auto row = ring_to_aligned_coeffs(vals, 1, RingKind::polar, n_side);
  const int c = 2 * n_side;
  CHECK(std::abs(row[c + 1] - cplx{0.5, 0.0}) <= 1e-15);
  CHECK(std::abs(row[c - 1] - cplx{0.5, 0.0}) <= 1e-15);
  for (int col = 0; col < 4 * n_side; ++col)
    if (col != c + 1 && col != c - 1) CHECK(std::abs(row[col]) <= 1e-15);
}

TEST_CASE("mode cos(2 lambda) on a shifted equatorial ring") {
  // n_side = 4, belt ring j = 4 is shifted; e^{+-2 i lambda} should come out
  // at wavenumbers +-2 with coefficient 1/2 after the de-shift.
  const int n_side = 4;
  std::vector<double> vals(16);
  for (int k = 0; k < 16; ++k) {
    const double lambda = kPi * (k + 0.5) / (2.0 * n_side);
    vals[k] = std::cos(2.0 * lambda);
  }
  auto row = ring_to_aligned_coeffs(vals, 4, RingKind::equatorial, n_side);
  const int c = 2 * n_side;
  CHECK(std::abs(row[c + 2] - cplx{0.5, 0.0}) <= 1e-14);
  CHECK(std::abs(row[c - 2] - cplx{0.5, 0.0}) <= 1e-14);
  for (int col = 0; col < 16; ++col)
    if (col != c + 2 && col != c - 2) CHECK(std::abs(row[col]) <= 1e-14);
}

TEST_CASE("interpolation property at the original nodes") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n_side = 4;
  auto grid = std::make_shared<const HealpixGrid>(n_side);
  std::vector<double> values(grid->n_points());
  for (double& v : values) v = dist(rng);
  MapValues map(grid, values);
  AlignedRingCoeffs aligned = upsample_map(map);
  for (int r = 0; r < grid->n_rings(); ++r) {
    const RingSpec& ring = grid->ring(r);
    for (int k = 0; k < ring.count; ++k) {
      const double lambda = ring.phi_offset + 2.0 * kPi * k / ring.count;
      const cplx interp = ref::eval_ring_expansion(aligned.row(r), lambda);
      CHECK(std::abs(interp - values[ring.first_index + k]) <= 1e-12);
    }
  }
}

TEST_CASE("upsampled expansion reproduces cos(lambda) at the target nodes") {
  const int n_side = 2;
  auto grid = std::make_shared<const HealpixGrid>(n_side);
  std::vector<double> values(grid->n_points());
  for (std::int64_t i = 0; i < grid->n_points(); ++i) {
    auto [lambda, theta] = grid->point(i);
    (void)theta;
    values[i] = std::cos(lambda);
  }
  AlignedRingCoeffs aligned = upsample_map(MapValues(grid, values));
  for (int r = 0; r < grid->n_rings(); ++r) {
    if (grid->ring(r).count < 4) continue;
    for (int k = 0; k < 4 * n_side; ++k) {
      const double lambda = kPi * k / (2.0 * n_side);
      CHECK(std::abs(ref::eval_ring_expansion(aligned.row(r), lambda) -
                     std::cos(lambda)) <= 1e-13);
    }
  }
}

TEST_CASE("constant map upsampling and Parseval") {
  const int n_side = 4;
  auto grid = std::make_shared<const HealpixGrid>(n_side);
  MapValues ones(grid, std::vector<double>(grid->n_points(), 1.0));
  AlignedRingCoeffs aligned = upsample_map(ones);
  for (int r = 0; r < grid->n_rings(); ++r) {
    CHECK(std::abs(aligned.coeff(r, 0) - cplx{1.0, 0.0}) <= 1e-14);
    for (int n = -2 * n_side; n < 2 * n_side; ++n)
      if (n != 0) CHECK(std::abs(aligned.coeff(r, n)) <= 1e-14);
  }

  std::mt19937 rng(17);
  std::normal_distribution<double> dist;
  std::vector<double> values(grid->n_points());
  for (double& v : values) v = dist(rng);
  MapValues map(grid, values);
  AlignedRingCoeffs rnd = upsample_map(map);
  for (int r = 0; r < grid->n_rings(); ++r) {
    const RingSpec& ring = grid->ring(r);
    double spectral = 0.0;
    for (const cplx& c : rnd.row(r)) spectral += std::norm(c);
    double mean_square = 0.0;
    for (int k = 0; k < ring.count; ++k)
      mean_square += values[ring.first_index + k] * values[ring.first_index + k];
    mean_square /= ring.count;
    CHECK(spectral == doctest::Approx(mean_square).epsilon(1e-12));
  }
}

TEST_CASE("real-input rows have conjugate symmetry on the unpadded support") {
  const int n_side = 4;
  auto grid = std::make_shared<const HealpixGrid>(n_side);
  std::mt19937 rng(29);
  std::normal_distribution<double> dist;
  std::vector<double> values(grid->n_points());
  for (double& v : values) v = dist(rng);
  AlignedRingCoeffs aligned = upsample_map(MapValues(grid, values));
  for (int r = 0; r < grid->n_rings(); ++r) {
    const int half = grid->ring(r).count / 2;
    for (int n = 1; n < half; ++n)
      CHECK(std::abs(aligned.coeff(r, -n) - std::conj(aligned.coeff(r, n))) <=
            1e-12);
  }
}

TEST_CASE("polar rows have exactly 4*n_side - 4j structural zero pads") {
  const int n_side = 8;
  auto grid = std::make_shared<const HealpixGrid>(n_side);
  std::mt19937 rng(31);
  std::normal_distribution<double> dist;
  std::vector<double> values(grid->n_points());
  for (double& v : values) v = dist(rng);
  AlignedRingCoeffs aligned = upsample_map(MapValues(grid, values));
  for (int r = 0; r < grid->n_rings(); ++r) {
    const RingSpec& ring = grid->ring(r);
    if (!ring.polar) continue;
    int zeros = 0;
    for (int n = -2 * n_side; n < 2 * n_side; ++n) {
      const bool in_support = n >= -2 * ring.region_j && n < 2 * ring.region_j;
      if (!in_support) {
        CHECK(aligned.coeff(r, n) == cplx{0.0, 0.0});
        ++zeros;
      }
    }
    CHECK(zeros == 4 * n_side - 4 * ring.region_j);
  }
}

TEST_CASE("shift-then-pad commutes with pad-then-shift") {
  const int n_side = 4;
  const int j = 2;
  std::mt19937 rng(41);
  std::normal_distribution<double> dist;
  std::vector<double> vals(4 * j);
  for (double& v : vals) v = dist(rng);

  auto shifted_then_padded = ring_to_aligned_coeffs(vals, j, RingKind::polar, n_side);

  // Pad the raw (still shifted) spectrum first, then apply the diagonal phase
  // on the padded support.
  std::vector<cplx> samples(vals.begin(), vals.end());
  std::vector<cplx> spec = fft::forward(samples);
  std::vector<cplx> padded(4 * n_side, cplx{0.0, 0.0});
  for (int n = -2 * j; n < 2 * j; ++n)
    padded[n + 2 * n_side] = spec[(n + 4 * j) % (4 * j)] / double(4 * j);
  for (int n = -2 * n_side; n < 2 * n_side; ++n)
    padded[n + 2 * n_side] *= std::polar(1.0, -n * kPi / (4.0 * j));
  for (int col = 0; col < 4 * n_side; ++col)
    CHECK(std::abs(padded[col] - shifted_then_padded[col]) <= 1e-15);
}

TEST_CASE("ring length mismatches are rejected") {
  std::vector<double> vals(7, 1.0);
  CHECK_THROWS_AS(ring_to_aligned_coeffs(vals, 1, RingKind::polar, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(ring_to_aligned_coeffs(vals, 4, RingKind::equatorial, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(ring_to_aligned_coeffs(std::vector<double>(16, 1.0), 5,
                                         RingKind::polar, 4),
                  std::invalid_argument);
}
