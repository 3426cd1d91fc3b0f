#ifndef HP2SPH_PIPELINE_HPP
#define HP2SPH_PIPELINE_HPP

#include <memory>
#include <string>
#include <vector>

#include "hp2sph/baseline.hpp"
#include "hp2sph/dfs.hpp"
#include "hp2sph/fourier2sph.hpp"
#include "hp2sph/nufft.hpp"
#include "hp2sph/ringstep.hpp"

namespace hp2sph {

struct PowerSpectrum {
  int ell_max = -1;
  std::vector<double> cl;
};

PowerSpectrum power_spectrum(const SphCoeffTriangle& coeffs);

/// l(l+1) C_l / (2 pi), the scaling used for plotting CMB spectra.
std::vector<double> scaled_spectrum(const PowerSpectrum& spectrum);

/// Weighted combination of order-3/2 potential splines.
struct SplineSpec {
  struct Center {
    double lambda = 0.0;
    double theta = 0.0;
  };
  std::vector<Center> centers;
  std::vector<double> weights;

  void validate() const;
};

/// The three-center fixture used throughout the accuracy experiments.
SplineSpec paper_spline_fixture();

/// f(lambda, theta) = sum_j c_j (2 - 2 x . x_j)^{3/2} sampled on the grid.
MapValues potential_spline_eval(const SplineSpec& spec,
                                std::shared_ptr<const HealpixGrid> grid);

/// Closed-form coefficients of the spline combination:
///   a_l^m = sum_j c_j * 18*pi / ((l+5/2)(l+3/2)(l+1/2)(l-1/2)(l-3/2))
///           * conj(Y_l^m(lambda_j, theta_j)).
SphCoeffTriangle potential_spline_exact_alm(const SplineSpec& spec, int ell_max);

/// Adds real-symmetrized unit-power harmonics: sqrt(2)*Re(Y_l^m) for m != 0
/// (coefficient pair 1/sqrt(2) at +-m) and Y_l^0 for m = 0, so the exact
/// spectrum at each appended degree rises by exactly 1/(2l+1). Degrees beyond
/// the grid's default band get a warning on stderr, not an error.
MapValues add_harmonics(const MapValues& map,
                        const std::vector<std::pair<int, int>>& terms);

struct AnalyzeInfo {
  double gamma = 0.0;            // node irregularity of the doubled latitudes
  int max_cg_iterations = 0;
  double max_cg_residual = 0.0;
  double parity_defect = 0.0;
  double seconds_upsample = 0.0;
  double seconds_poles_dfs = 0.0;
  double seconds_latitude = 0.0;
  double seconds_convert = 0.0;
};

/// Precomputed state shared by every analysis at one resolution: the doubled
/// latitude nodes, the NUFFT low-rank factors, the Toeplitz Gram column (with
/// its circulant FFT), the centered-frequency modulation, and the quadrature
/// tables for the Fourier-to-spherical-harmonic conversion. Immutable after
/// construction and safe to share across threads.
class Hp2SphPlan {
 public:
  explicit Hp2SphPlan(std::shared_ptr<const HealpixGrid> grid, int rank = 14,
                      double cg_tol = 1e-12, int cg_max_iter = 200);

  const HealpixGrid& grid() const { return *grid_; }
  int band_limit() const { return p_; }  // output ell_max = 2*n_side
  double gamma() const { return nodes_->gamma(); }

  /// Algorithm steps 1-3: ring upsampling, pole fit + DFS doubling,
  /// per-wavenumber latitude least squares, Fourier-to-spherical conversion.
  SphCoeffTriangle analyze(const MapValues& map, AnalyzeInfo* info = nullptr) const;

  /// Intermediate product after step 2 (used by tests and diagnostics).
  BivariateFourier bivariate_coefficients(const MapValues& map,
                                          AnalyzeInfo* info = nullptr) const;

 private:
  std::shared_ptr<const HealpixGrid> grid_;
  int p_;
  int m_;
  double cg_tol_;
  int cg_max_iter_;
  std::unique_ptr<NonuniformNodes> nodes_;
  std::unique_ptr<NufftPlan> nufft_;
  std::unique_ptr<ToeplitzOperator> gram_op_;
  std::vector<cplx> premod_;  // exp(-2*pi*i*x_t*s), s = floor(m/2)
  GaussLegendreRule rule_;
  std::vector<double> cos_table_, sin_table_;
};

/// One-shot convenience wrapper (builds a plan per call).
SphCoeffTriangle hp2sph_analyze(const MapValues& map, AnalyzeInfo* info = nullptr);

// ---- convergence studies -------------------------------------------------

struct StudyMethod {
  enum class Kind { hp2sph, equal_weight, richardson };
  Kind kind = Kind::hp2sph;
  int iterations = 3;  // richardson only
  std::string label() const;
};

StudyMethod parse_method(const std::string& nametag);  // "hp2sph", "equal", "richardson:3"

struct StudyOptions {
  /// Band limit the baseline methods run at: the shared triangle 2*n_side by
  /// default, or the software default 3*n_side-1 when full_band is set.
  bool full_band = false;
};

struct StudyRow {
  int t = 0;
  std::string method;
  double max_abs_error = 0.0;
};

struct StudyResult {
  std::vector<StudyRow> rows;
  std::vector<std::pair<std::string, double>> slopes;  // log10(err) per unit t
};

/// Errors of each method against the closed-form spline coefficients over
/// the shared triangle l <= 2*n_side, for n_side = 2^t, t in [t_min, t_max],
/// with least-squares slopes of log10(error) vs t.
StudyResult convergence_study(const SplineSpec& spec, int t_min, int t_max,
                              const std::vector<StudyMethod>& methods,
                              const StudyOptions& options = {});

}  // namespace hp2sph

#endif
