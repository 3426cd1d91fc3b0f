#ifndef HP2SPH_FOURIER2SPH_HPP
#define HP2SPH_FOURIER2SPH_HPP

#include <vector>

#include "hp2sph/gauss_legendre.hpp"
#include "hp2sph/sphgrid.hpp"

namespace hp2sph {

/// Bivariate Fourier coefficients C_{jk} of a DFS-doubled map:
/// theta-frequency j = -p..p, lambda-frequency k = -p..p-1.
class BivariateFourier {
 public:
  explicit BivariateFourier(int p)
      : p_(p), data_(static_cast<std::size_t>(2 * p + 1) * (2 * p)) {}

  int p() const { return p_; }
  cplx& at(int j, int k) { return data_[index(j, k)]; }
  const cplx& at(int j, int k) const { return data_[index(j, k)]; }

 private:
  std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(j + p_) * (2 * p_) + (k + p_);
  }
  int p_;
  std::vector<cplx> data_;
};

/// Square expansion of the lambda axis to an odd number of frequencies: the
/// Nyquist column k = -p is split evenly between k = -p and k = +p.
class OddExpanded {
 public:
  explicit OddExpanded(int p)
      : p_(p), data_(static_cast<std::size_t>(2 * p + 1) * (2 * p + 1)) {}

  int p() const { return p_; }
  cplx& at(int j, int k) { return data_[index(j, k)]; }
  const cplx& at(int j, int k) const { return data_[index(j, k)]; }

 private:
  std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(j + p_) * (2 * p_ + 1) + (k + p_);
  }
  int p_;
  std::vector<cplx> data_;
};

OddExpanded expand_to_odd(const BivariateFourier& C);

/// Coefficients of the even/odd trigonometric form
///   f(lambda, theta) = sum_{j=0}^{p} sum_{k=-p}^{p} g_j^k e^{i k lambda}/sqrt(2 pi)
///                      * { cos(j theta)      k even
///                        { sin((j+1) theta)  k odd,
/// columns ordered k = 0, -1, +1, -2, +2, ..., -p, +p. Odd-k columns have a
/// structurally zero bottom row (sin((p+1) theta) is outside the band).
class GCoefficients {
 public:
  explicit GCoefficients(int p)
      : p_(p), data_(static_cast<std::size_t>(p + 1) * (2 * p + 1)) {}

  int p() const { return p_; }
  static int column_of(int k) { return k == 0 ? 0 : (k < 0 ? -2 * k - 1 : 2 * k); }

  cplx& at(int j, int k) { return data_[index(j, k)]; }
  const cplx& at(int j, int k) const { return data_[index(j, k)]; }

 private:
  std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(j) * (2 * p_ + 1) + column_of(k);
  }
  int p_;
  std::vector<cplx> data_;
};

GCoefficients to_g_coefficients(const OddExpanded& X);

/// Largest magnitude of the trigonometric-parity violations of X: even-k
/// theta-profiles must be even (X_{j,k} = X_{-j,k}), odd-k profiles odd
/// (X_{j,k} = -X_{-j,k} and X_{0,k} = 0). Zero for exact sphere data.
double parity_defect(const OddExpanded& X);

/// Order-by-order projection of the trigonometric profiles onto normalized
/// associated Legendre functions with a (p+1)-node Gauss-Legendre rule in
/// cos(theta) -- exact for band-limited inputs. Returns the coefficient
/// triangle with ell_max = p.
SphCoeffTriangle g_to_alm(const GCoefficients& g, int p);

/// Same projection with a caller-provided rule and cos/sin tables
/// (cos_table[j*(p+1)+q] = cos(j*theta_q), likewise sin); used by the
/// pipeline plan to amortize the trigonometry.
SphCoeffTriangle g_to_alm_with_tables(const GCoefficients& g, int p,
                                      const GaussLegendreRule& rule,
                                      const std::vector<double>& cos_table,
                                      const std::vector<double>& sin_table);

}  // namespace hp2sph

#endif
