#include "hp2sph/dfs.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hp2sph {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<cplx> fit_pole_values(const AlignedRingCoeffs& coeffs,
                                  const HealpixGrid& grid, Pole which) {
  const int n_rings = grid.n_rings();
  if (n_rings < 3)
    throw std::invalid_argument("fit_pole_values: grid has fewer than 3 rings");
  const int width = coeffs.width();
  const double pole_theta = (which == Pole::north) ? 0.0 : kPi;

  std::array<double, 3> theta;
  std::array<cplx, 3> c0;
  for (int i = 0; i < 3; ++i) {
    int r = (which == Pole::north) ? i : n_rings - 1 - i;
    theta[i] = grid.ring(r).theta;
    c0[i] = coeffs.coeff(r, 0);
  }

  // Weighted quadratic least squares in theta, weights 1/(theta - pole)^2.
  // Normal equations of the 3x3 system solved by Gaussian elimination.
  std::array<std::array<double, 3>, 3> M{};
  std::array<cplx, 3> rhs{};
  for (int i = 0; i < 3; ++i) {
    double d = theta[i] - pole_theta;
    double w = 1.0 / (d * d);
    std::array<double, 3> basis{1.0, theta[i], theta[i] * theta[i]};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) M[a][b] += w * basis[a] * basis[b];
      rhs[a] += w * basis[a] * c0[i];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    std::swap(M[col], M[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      double f = M[r][col] / M[col][col];
      for (int c = col; c < 3; ++c) M[r][c] -= f * M[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  cplx a0 = rhs[0] / M[0][0];
  cplx a1 = rhs[1] / M[1][1];
  cplx a2 = rhs[2] / M[2][2];
  cplx value = a0 + a1 * pole_theta + a2 * pole_theta * pole_theta;

  std::vector<cplx> row(width, cplx{0.0, 0.0});
  row[width / 2] = value;
  return row;
}

DoubledCoeffMatrix dfs_double(const AlignedRingCoeffs& coeffs,
                              const HealpixGrid& grid,
                              const std::vector<cplx>& north_pole,
                              const std::vector<cplx>& south_pole) {
  const int width = coeffs.width();
  if (static_cast<int>(north_pole.size()) != width ||
      static_cast<int>(south_pole.size()) != width)
    throw std::invalid_argument("dfs_double: pole row width mismatch");
  const int n_rings = grid.n_rings();

  DoubledCoeffMatrix out;
  out.n_side = coeffs.n_side();
  out.rows.reserve(2 * n_rings + 2);
  out.thetas.reserve(2 * n_rings + 2);

  out.rows.push_back(north_pole);
  out.thetas.push_back(0.0);
  for (int r = 0; r < n_rings; ++r) {
    out.rows.push_back(coeffs.row(r));
    out.thetas.push_back(grid.ring(r).theta);
  }
  out.rows.push_back(south_pole);
  out.thetas.push_back(kPi);
  for (int r = n_rings - 1; r >= 0; --r) {
    std::vector<cplx> refl = coeffs.row(r);
    for (int col = 0; col < width; ++col) {
      int n = col - width / 2;
      if (n % 2 != 0) refl[col] = -refl[col];
    }
    out.rows.push_back(std::move(refl));
    out.thetas.push_back(2.0 * kPi - grid.ring(r).theta);
  }
  return out;
}

}  // namespace hp2sph
