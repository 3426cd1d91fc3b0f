#ifndef HP2SPH_SPHGRID_HPP
#define HP2SPH_SPHGRID_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace hp2sph {

using cplx = std::complex<double>;

/// One isolatitude ring of a HEALPix grid.
struct RingSpec {
  double theta = 0.0;       // colatitude in (0, pi)
  int count = 0;            // points on the ring
  double phi_offset = 0.0;  // first longitude; points at phi_offset + 2*pi*k/count
  std::int64_t first_index = 0;  // offset into the RING-ordered value array
  int region_j = 0;         // ring index j within its region (polar: 1..n_side-1,
                            // equatorial: n_side..3*n_side)
  bool polar = false;       // true for the 4j-point caps, false for the belt
  bool shifted = false;     // first longitude is half a spacing off zero
};

/// HEALPix point set for a given resolution, rings ordered north to south and
/// points within a ring ordered by increasing longitude (RING ordering).
class HealpixGrid {
 public:
  /// n_side must be a power of two (>= 1); throws std::invalid_argument otherwise.
  explicit HealpixGrid(int n_side);

  int n_side() const { return n_side_; }
  std::int64_t n_points() const { return n_points_; }
  int n_rings() const { return static_cast<int>(rings_.size()); }
  const std::vector<RingSpec>& rings() const { return rings_; }
  const RingSpec& ring(int i) const { return rings_[i]; }

  /// Longitude/colatitude of the RING-ordered point with the given index.
  std::pair<double, double> point(std::int64_t index) const;

 private:
  int n_side_;
  std::int64_t n_points_;
  std::vector<RingSpec> rings_;
};

HealpixGrid build_grid(int n_side);

/// Fully normalized associated Legendre function
///   sqrt((2l+1)/4pi) * sqrt((l-m)!/(l+m)!) * P_l^m(x),
/// Condon-Shortley phase included in P_l^m. Requires 0 <= m <= l, |x| <= 1.
double eval_plm_normalized(int ell, int m, double x);

/// All degrees at once for a fixed order: out[l - m] = plm_normalized(l, m, x)
/// for l = m..ell_max. This is the recurrence the transforms run on.
void eval_plm_sequence(int ell_max, int m, double x, double* out);

/// Spherical harmonic Y_l^m(lambda, theta); for m < 0 uses
/// Y_l^{-|m|} = (-1)^m conj(Y_l^{|m|}).
cplx eval_ylm(int ell, int m, double lambda, double theta);

/// Triangular array of spherical harmonic coefficients a_l^m,
/// 0 <= l <= ell_max, -l <= m <= l, stored packed by degree.
class SphCoeffTriangle {
 public:
  SphCoeffTriangle() = default;
  explicit SphCoeffTriangle(int ell_max)
      : ell_max_(ell_max),
        entries_(static_cast<std::size_t>(ell_max + 1) * (ell_max + 1)) {}

  int ell_max() const { return ell_max_; }
  std::size_t size() const { return entries_.size(); }

  cplx& at(int ell, int m) { return entries_[index(ell, m)]; }
  const cplx& at(int ell, int m) const { return entries_[index(ell, m)]; }

  const std::vector<cplx>& data() const { return entries_; }
  std::vector<cplx>& data() { return entries_; }

  /// Largest |a_l^{-m} - (-1)^m conj(a_l^m)| over the triangle; zero for the
  /// coefficients of a real-valued map.
  double conjugate_symmetry_defect() const;

  /// Truncate (or zero-extend) to a new band limit.
  SphCoeffTriangle truncated(int new_ell_max) const;

 private:
  std::size_t index(int ell, int m) const {
    return static_cast<std::size_t>(ell) * ell + (ell + m);
  }
  int ell_max_ = -1;
  std::vector<cplx> entries_;
};

}  // namespace hp2sph

#endif
