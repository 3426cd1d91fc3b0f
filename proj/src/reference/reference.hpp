#ifndef HP2SPH_REFERENCE_HPP
#define HP2SPH_REFERENCE_HPP

#include <complex>
#include <span>
#include <vector>

#include "hp2sph/nufft.hpp"
#include "hp2sph/sphgrid.hpp"

/// Serial reference implementations: direct double sums with no ring
/// factorization, FFTs, or low-rank shortcuts. These back the unit and
/// acceptance tests as independent oracles and the benchmark comparison;
/// the library never calls them.
namespace hp2sph::ref {

/// a_l^m = (4*pi/N) sum_i conj(Y_l^m)(lambda_i, theta_i) f_i, point by point.
SphCoeffTriangle analyze_direct_sum(const HealpixGrid& grid,
                                    std::span<const double> values,
                                    int ell_max);

/// f_i = sum_{l,m} a_l^m Y_l^m(lambda_i, theta_i), point by point.
std::vector<cplx> synthesize_direct_sum(const HealpixGrid& grid,
                                        const SphCoeffTriangle& coeffs);

/// NUDFT-II in extended precision: f_j = sum_k c_k exp(-2*pi*i*x_j*k).
std::vector<cplx> nudft2_longdouble(std::span<const cplx> c,
                                    std::span<const double> x);

/// Adjoint in extended precision: out_k = sum_j exp(+2*pi*i*x_j*k) f_j.
std::vector<cplx> nudft2_adjoint_longdouble(std::span<const cplx> f,
                                            std::span<const double> x, int m);

/// Dense Hermitian-Toeplitz matvec from a first column.
std::vector<cplx> toeplitz_dense_apply(std::span<const cplx> first_column,
                                       std::span<const cplx> v);

/// Fully normalized associated Legendre value via a long-double recurrence.
long double plm_longdouble(int ell, int m, long double x);

/// Evaluate the trigonometric expansion sum_n c_n exp(i*n*lambda) with
/// wavenumbers n = -width/2..width/2-1 (the aligned-ring layout).
cplx eval_ring_expansion(std::span<const cplx> row, double lambda);

}  // namespace hp2sph::ref

#endif
