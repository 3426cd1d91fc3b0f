#ifndef HP2SPH_DFS_HPP
#define HP2SPH_DFS_HPP

#include <vector>

#include "hp2sph/ringstep.hpp"

namespace hp2sph {

enum class Pole { north, south };

/// Longitudinal coefficient rows of the glide-reflection doubled map over
/// colatitudes theta in [0, 2*pi): north pole, the original rings, south
/// pole, then the reflected rings (odd wavenumbers negated). 8*n_side rows
/// of width 4*n_side; thetas ascend strictly.
struct DoubledCoeffMatrix {
  int n_side = 0;
  std::vector<double> thetas;           // 8*n_side nodes in [0, 2*pi)
  std::vector<std::vector<cplx>> rows;  // same width as the input rows
};

/// Pole row reconstruction: weighted quadratic extrapolation (weights
/// 1/theta^2 measured from the pole) of the wavenumber-0 coefficients of the
/// three rings nearest the pole. All nonzero wavenumbers are zero: the pole
/// is a single point. For n_side = 1 the three available rings are used.
std::vector<cplx> fit_pole_values(const AlignedRingCoeffs& coeffs,
                                  const HealpixGrid& grid, Pole which);

/// Coefficient-space double Fourier sphere extension: stacks
/// [north pole row; ring rows; south pole row; reflected ring rows],
/// where a reflected row is its source with odd-wavenumber entries negated
/// (the coefficient-space image of the lambda -> lambda + pi shift).
DoubledCoeffMatrix dfs_double(const AlignedRingCoeffs& coeffs,
                              const HealpixGrid& grid,
                              const std::vector<cplx>& north_pole,
                              const std::vector<cplx>& south_pole);

}  // namespace hp2sph

#endif
