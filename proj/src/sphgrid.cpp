#include "hp2sph/sphgrid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hp2sph {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

HealpixGrid::HealpixGrid(int n_side) : n_side_(n_side) {
  if (!is_power_of_two(n_side))
    throw std::invalid_argument("HealpixGrid: n_side must be a power of two");
  const double ns = n_side;
  n_points_ = 12ll * n_side * n_side;
  rings_.reserve(4 * n_side - 1);
  std::int64_t offset = 0;
  auto push = [&](double theta, int count, double phi0, int j, bool polar,
                  bool shifted) {
    rings_.push_back({theta, count, phi0, offset, j, polar, shifted});
    offset += count;
  };
  // North cap: j = 1..n_side-1, 4j points at pi*(k+1/2)/(2j).
  for (int j = 1; j < n_side; ++j) {
    double theta = std::acos(1.0 - j * j / (3.0 * ns * ns));
    push(theta, 4 * j, kPi / (4 * j), j, true, true);
  }
  // Equatorial belt: j = n_side..3*n_side, 4*n_side points at
  // pi*(k + ((j+1) mod 2)/2)/(2*n_side).
  for (int j = n_side; j <= 3 * n_side; ++j) {
    double theta = std::acos(2.0 * (2 * n_side - j) / (3.0 * ns));
    int s = (j + 1) % 2;
    push(theta, 4 * n_side, kPi * s / (4 * ns), j, false, s == 1);
  }
  // South cap mirrors the north cap.
  for (int j = n_side - 1; j >= 1; --j) {
    double theta = std::acos(-(1.0 - j * j / (3.0 * ns * ns)));
    push(theta, 4 * j, kPi / (4 * j), j, true, true);
  }
}

std::pair<double, double> HealpixGrid::point(std::int64_t index) const {
  if (index < 0 || index >= n_points_)
    throw std::invalid_argument("HealpixGrid::point: index out of range");
  auto it = std::upper_bound(
      rings_.begin(), rings_.end(), index,
      [](std::int64_t idx, const RingSpec& r) { return idx < r.first_index; });
  const RingSpec& r = *(it - 1);
  std::int64_t k = index - r.first_index;
  return {r.phi_offset + 2.0 * kPi * k / r.count, r.theta};
}

HealpixGrid build_grid(int n_side) { return HealpixGrid(n_side); }

void eval_plm_sequence(int ell_max, int m, double x, double* out) {
  // Seed P~_m^m incrementally in the sqrt domain so no intermediate over- or
  // underflows for l up to ~1e4.
  double pmm = 1.0 / std::sqrt(4.0 * kPi);
  const double sin_theta = std::sqrt((1.0 - x) * (1.0 + x));
  for (int k = 1; k <= m; ++k)
    pmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * sin_theta;
  if (m % 2 == 1) pmm = -pmm;
  out[0] = pmm;
  if (ell_max == m) return;
  double prev = pmm;
  double cur = x * std::sqrt(2.0 * m + 3.0) * pmm;
  out[1] = cur;
  double oldfact = std::sqrt(2.0 * m + 3.0);
  for (int l = m + 2; l <= ell_max; ++l) {
    double fact =
        std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
    double next = (x * cur - prev / oldfact) * fact;
    out[l - m] = next;
    prev = cur;
    cur = next;
    oldfact = fact;
  }
}

double eval_plm_normalized(int ell, int m, double x) {
  if (m < 0 || m > ell)
    throw std::invalid_argument("eval_plm_normalized: requires 0 <= m <= ell");
  if (std::abs(x) > 1.0)
    throw std::invalid_argument("eval_plm_normalized: requires |x| <= 1");
  std::vector<double> seq(ell - m + 1);
  eval_plm_sequence(ell, m, x, seq.data());
  return seq.back();
}

cplx eval_ylm(int ell, int m, double lambda, double theta) {
  if (std::abs(m) > ell)
    throw std::invalid_argument("eval_ylm: requires |m| <= ell");
  const int mu = std::abs(m);
  double plm = eval_plm_normalized(ell, mu, std::cos(theta));
  cplx value = plm * std::polar(1.0, mu * lambda);
  if (m >= 0) return value;
  cplx conj_value = std::conj(value);
  return (mu % 2 == 0) ? conj_value : -conj_value;
}

double SphCoeffTriangle::conjugate_symmetry_defect() const {
  double worst = 0.0;
  for (int l = 0; l <= ell_max_; ++l) {
    for (int m = 0; m <= l; ++m) {
      cplx expected = std::conj(at(l, m));
      if (m % 2 == 1) expected = -expected;
      worst = std::max(worst, std::abs(at(l, -m) - expected));
    }
  }
  return worst;
}

SphCoeffTriangle SphCoeffTriangle::truncated(int new_ell_max) const {
  SphCoeffTriangle out(new_ell_max);
  int shared = std::min(new_ell_max, ell_max_);
  for (int l = 0; l <= shared; ++l)
    for (int m = -l; m <= l; ++m) out.at(l, m) = at(l, m);
  return out;
}

}  // namespace hp2sph
