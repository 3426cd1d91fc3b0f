#include "hp2sph/baseline.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hp2sph/errors.hpp"
#include "hp2sph/fft.hpp"

namespace hp2sph {

namespace {

constexpr double kPi = std::numbers::pi;

// Kahan-compensated complex accumulator array; the per-order ring sums run
// through this so the adjoint identity stays tight at large N.
struct CompensatedRow {
  explicit CompensatedRow(std::size_t n) : sum(n), comp(n) {}
  void add(std::size_t i, cplx value) {
    cplx y = value - comp[i];
    cplx t = sum[i] + y;
    comp[i] = (t - sum[i]) - y;
    sum[i] = t;
  }
  std::vector<cplx> sum, comp;
};

// Forward DFT of every ring: out[r][s] = sum_k f_{r,k} exp(-2*pi*i*s*k/n_r).
std::vector<std::vector<cplx>> ring_dfts(const HealpixGrid& grid,
                                         std::span<const cplx> values) {
  const int n_rings = grid.n_rings();
  std::vector<std::vector<cplx>> out(n_rings);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < n_rings; ++r) {
    const RingSpec& ring = grid.ring(r);
    out[r].resize(ring.count);
    fft::forward(values.subspan(ring.first_index, ring.count),
                 std::span<cplx>(out[r]));
  }
  return out;
}

}  // namespace

MapValues::MapValues(std::shared_ptr<const HealpixGrid> grid,
                     std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("MapValues: null grid");
  if (static_cast<std::int64_t>(values_.size()) != grid_->n_points())
    throw std::invalid_argument("MapValues: value count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v))
      throw std::invalid_argument("MapValues: values must be finite");
}

SphCoeffTriangle analyze_values(const HealpixGrid& grid,
                                std::span<const cplx> values, int ell_max) {
  if (ell_max < 0) throw std::invalid_argument("analyze: ell_max must be >= 0");
  if (static_cast<std::int64_t>(values.size()) != grid.n_points())
    throw std::invalid_argument("analyze: value count does not match grid");

  const auto dft = ring_dfts(grid, values);
  const int n_rings = grid.n_rings();
  SphCoeffTriangle a(ell_max);
  const double scale = 4.0 * kPi / static_cast<double>(grid.n_points());

#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m <= ell_max; ++m) {
    const int len = ell_max - m + 1;
    CompensatedRow pos(len), neg(len);
    std::vector<double> plm(len);
    for (int r = 0; r < n_rings; ++r) {
      const RingSpec& ring = grid.ring(r);
      eval_plm_sequence(ell_max, m, std::cos(ring.theta), plm.data());
      // D_m = exp(-i*m*phi0) * dft[m mod count]; e^{-i m lambda_k} depends on
      // m only through m mod count, so one ring DFT serves every order.
      const int ip = ((m % ring.count) + ring.count) % ring.count;
      const cplx dp = std::polar(1.0, -m * ring.phi_offset) * dft[r][ip];
      if (m == 0) {
        for (int l = 0; l < len; ++l) pos.add(l, plm[l] * dp);
      } else {
        const int in = ((-m % ring.count) + ring.count) % ring.count;
        const cplx dn = std::polar(1.0, m * ring.phi_offset) * dft[r][in];
        for (int l = 0; l < len; ++l) {
          pos.add(l, plm[l] * dp);
          neg.add(l, plm[l] * dn);
        }
      }
    }
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    for (int l = 0; l < len; ++l) {
      a.at(m + l, m) = scale * pos.sum[l];
      if (m > 0) a.at(m + l, -m) = scale * sign * neg.sum[l];
    }
  }
  return a;
}

std::vector<cplx> synthesize_values(const HealpixGrid& grid,
                                    const SphCoeffTriangle& coeffs) {
  const int ell_max = coeffs.ell_max();
  const int n_rings = grid.n_rings();
  std::vector<cplx> out(grid.n_points());

#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < n_rings; ++r) {
    const RingSpec& ring = grid.ring(r);
    // Legendre sums per order, folded modulo the ring length, then one
    // unnormalized backward FFT evaluates sum_m G_m e^{i m lambda_k} exactly.
    std::vector<cplx> bins(ring.count, cplx{0.0, 0.0});
    std::vector<double> plm(ell_max + 1);
    for (int m = 0; m <= ell_max; ++m) {
      eval_plm_sequence(ell_max, m, std::cos(ring.theta), plm.data());
      cplx gp{0.0, 0.0}, gn{0.0, 0.0};
      for (int l = m; l <= ell_max; ++l) {
        gp += coeffs.at(l, m) * plm[l - m];
        if (m > 0) gn += coeffs.at(l, -m) * plm[l - m];
      }
      const int ip = ((m % ring.count) + ring.count) % ring.count;
      bins[ip] += gp * std::polar(1.0, m * ring.phi_offset);
      if (m > 0) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        const int in = ((-m % ring.count) + ring.count) % ring.count;
        bins[in] += sign * gn * std::polar(1.0, -m * ring.phi_offset);
      }
    }
    fft::backward(std::span<const cplx>(bins),
                  std::span<cplx>(out).subspan(ring.first_index, ring.count));
  }
  return out;
}

SphCoeffTriangle analyze_equal_weight(const MapValues& map, int ell_max) {
  std::vector<cplx> values(map.values().begin(), map.values().end());
  return analyze_values(map.grid(), values, ell_max);
}

MapValues synthesize_direct(const SphCoeffTriangle& coeffs,
                            std::shared_ptr<const HealpixGrid> grid) {
  double scale = 0.0;
  for (const cplx& c : coeffs.data()) scale = std::max(scale, std::abs(c));
  if (coeffs.conjugate_symmetry_defect() > 1e-10 * std::max(1.0, scale))
    throw std::domain_error(
        "synthesize_direct: coefficients violate the real-map conjugate "
        "symmetry (synthesis would not be real)");

  std::vector<cplx> values = synthesize_values(*grid, coeffs);
  std::vector<double> real_values(values.size());
  double worst_imag = 0.0, worst_real = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    worst_imag = std::max(worst_imag, std::abs(values[i].imag()));
    worst_real = std::max(worst_real, std::abs(values[i].real()));
    real_values[i] = values[i].real();
  }
  if (worst_imag > 1e-12 * worst_real)
    throw std::domain_error("synthesize_direct: non-real synthesis residue");
  return MapValues(std::move(grid), std::move(real_values));
}

SphCoeffTriangle richardson_refine(const MapValues& map, int ell_max,
                                   int iterations) {
  if (iterations < 0)
    throw std::invalid_argument("richardson_refine: iterations must be >= 0");
  SphCoeffTriangle a = analyze_equal_weight(map, ell_max);
  for (int k = 0; k < iterations; ++k) {
    MapValues fitted = synthesize_direct(a, map.grid_ptr());
    std::vector<double> residual(map.values());
    for (std::size_t i = 0; i < residual.size(); ++i)
      residual[i] -= fitted.values()[i];
    SphCoeffTriangle update =
        analyze_equal_weight(MapValues(map.grid_ptr(), std::move(residual)),
                             ell_max);
    for (std::size_t i = 0; i < a.size(); ++i)
      a.data()[i] += update.data()[i];
  }
  return a;
}

double estimate_spectral_radius(const HealpixGrid& grid, int ell_max,
                                double tol, int max_iter) {
  std::mt19937 rng(12345);
  std::normal_distribution<double> dist;
  SphCoeffTriangle v(ell_max);
  for (cplx& c : v.data()) c = cplx{dist(rng), dist(rng)};

  auto norm = [](const SphCoeffTriangle& t) {
    double s = 0.0;
    for (const cplx& c : t.data()) s += std::norm(c);
    return std::sqrt(s);
  };
  double nv = norm(v);
  for (cplx& c : v.data()) c /= nv;

  double prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    SphCoeffTriangle w = analyze_values(grid, synthesize_values(grid, v),
                                        ell_max);
    // Rayleigh estimate mu = <v, Mv> with v normalized.
    double mu = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      mu += (std::conj(v.data()[i]) * w.data()[i]).real();
    if (it > 0 && std::abs(mu - prev) < tol) return std::abs(1.0 - mu);
    prev = mu;
    double nw = norm(w);
    for (cplx& c : w.data()) c /= nw;
    v = std::move(w);
  }
  throw NonConvergence(
      "estimate_spectral_radius: power iteration did not converge", max_iter,
      0.0, std::abs(1.0 - prev));
}

}  // namespace hp2sph
