#ifndef HP2SPH_BASELINE_HPP
#define HP2SPH_BASELINE_HPP

#include <memory>
#include <span>
#include <vector>

#include "hp2sph/sphgrid.hpp"

namespace hp2sph {

/// Real-valued samples at the points of a HEALPix grid, RING order.
class MapValues {
 public:
  MapValues(std::shared_ptr<const HealpixGrid> grid, std::vector<double> values);

  const HealpixGrid& grid() const { return *grid_; }
  std::shared_ptr<const HealpixGrid> grid_ptr() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

 private:
  std::shared_ptr<const HealpixGrid> grid_;
  std::vector<double> values_;
};

/// Equal-weight quadrature analysis (the HEALPix-software default):
///   a_l^m = (4*pi/N) * sum_i conj(Y_l^m)(lambda_i, theta_i) * f_i,
/// evaluated ring by ring (FFT in longitude, Legendre sums per order).
SphCoeffTriangle analyze_equal_weight(const MapValues& map, int ell_max);

/// Synthesis f_i = sum_{l,m} a_l^m Y_l^m(lambda_i, theta_i). Requires the
/// real-map conjugate symmetry a_l^{-m} = (-1)^m conj(a_l^m); throws
/// std::domain_error on coefficients that would synthesize a non-real map.
MapValues synthesize_direct(const SphCoeffTriangle& coeffs,
                            std::shared_ptr<const HealpixGrid> grid);

/// Iterative refinement used by the HEALPix software: starting from the
/// equal-weight analysis, repeat
///   a <- a + analyze_equal_weight(map - synthesize_direct(a)).
/// iterations = 0 returns the plain equal-weight analysis.
SphCoeffTriangle richardson_refine(const MapValues& map, int ell_max,
                                   int iterations);

/// General complex-valued kernels (no conjugate-symmetry assumption); these
/// are what the spectral-radius estimate iterates on.
SphCoeffTriangle analyze_values(const HealpixGrid& grid,
                                std::span<const cplx> values, int ell_max);
std::vector<cplx> synthesize_values(const HealpixGrid& grid,
                                    const SphCoeffTriangle& coeffs);

/// Estimates the dominant eigenvalue mu of the composition
/// (4*pi/N) S* S (one synthesize_values + one analyze_values per step) by
/// power iteration and returns |1 - mu|, the magnitude of the matching
/// eigenvalue of the Richardson iteration matrix I - (4*pi/N) S* S.
/// Converged when successive Rayleigh estimates differ by < tol.
/// Throws NonConvergence (carrying the last estimate) after max_iter steps.
double estimate_spectral_radius(const HealpixGrid& grid, int ell_max,
                                double tol = 1e-6, int max_iter = 2000);

}  // namespace hp2sph

#endif
