#ifndef HP2SPH_RINGSTEP_HPP
#define HP2SPH_RINGSTEP_HPP

#include <span>
#include <vector>

#include "hp2sph/baseline.hpp"
#include "hp2sph/sphgrid.hpp"

namespace hp2sph {

enum class RingKind { polar, equatorial };

/// Per-ring longitudinal Fourier coefficients, phase-aligned to the
/// non-shifted longitudes lambda_k = pi*k/(2*n_side) and zero-padded to a
/// common width 4*n_side. Row r holds wavenumbers n = -2*n_side..2*n_side-1
/// at column n + 2*n_side.
class AlignedRingCoeffs {
 public:
  AlignedRingCoeffs(int n_side, int n_rows)
      : n_side_(n_side), width_(4 * n_side), rows_(n_rows, std::vector<cplx>(width_)) {}

  int n_side() const { return n_side_; }
  int width() const { return width_; }
  int n_rows() const { return static_cast<int>(rows_.size()); }
  std::vector<cplx>& row(int r) { return rows_[r]; }
  const std::vector<cplx>& row(int r) const { return rows_[r]; }

  cplx coeff(int r, int wavenumber) const {
    return rows_[r][wavenumber + width_ / 2];
  }

 private:
  int n_side_;
  int width_;
  std::vector<std::vector<cplx>> rows_;
};

/// Trigonometric analysis of one ring: inverse-FFT the samples (so the
/// wavenumber-0 entry is the ring mean), undo the half-spacing shift of
/// polar and shifted equatorial rings, and zero-pad to width 4*n_side.
/// Polar rings pass their cap index j (length 4j); equatorial rings pass the
/// belt index j in n_side..3*n_side (length 4*n_side; rings with even j are
/// the shifted ones).
std::vector<cplx> ring_to_aligned_coeffs(std::span<const double> ring_values,
                                         int ring_index_j, RingKind kind,
                                         int n_side);

/// Step 1 of the pipeline: aligned coefficients for every ring of a map.
/// Equivalent to trigonometric interpolation of each ring onto the
/// non-shifted longitudes, so the implied value grid is
/// (4*n_side - 1) x (4*n_side).
AlignedRingCoeffs upsample_map(const MapValues& map);

}  // namespace hp2sph

#endif
