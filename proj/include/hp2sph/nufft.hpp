#ifndef HP2SPH_NUFFT_HPP
#define HP2SPH_NUFFT_HPP

#include <complex>
#include <span>
#include <vector>

namespace hp2sph {

using cplx = std::complex<double>;

/// Sample locations for a type-II nonuniform DFT, sorted ascending in [0, 1).
/// gamma = n * max_j |x_j - j/n| measures the departure from the equispaced
/// grid (the conditioning heuristic; the transforms themselves accept any
/// nodes).
class NonuniformNodes {
 public:
  explicit NonuniformNodes(std::vector<double> x);

  int size() const { return static_cast<int>(x_.size()); }
  const std::vector<double>& x() const { return x_; }
  double gamma() const { return gamma_; }

 private:
  std::vector<double> x_;
  double gamma_;
};

/// O(n^2) reference transform: f_j = sum_{k=0}^{n-1} c_k exp(-2*pi*i*x_j*k).
std::vector<cplx> nudft2_direct(std::span<const cplx> c,
                                const NonuniformNodes& nodes);

/// Precomputed low-rank correction relating the nonuniform transform to the
/// uniform FFT. Each node is matched to its nearest grid point and the
/// residual phase exp(-2*pi*i*u*k/n) is expanded in a rank-K Chebyshev series
/// in k with Bessel-function coefficients, so one transform costs K FFTs.
/// Immutable after construction; shareable across threads.
class NufftPlan {
 public:
  NufftPlan(const NonuniformNodes& nodes, int rank);

  int size() const { return n_; }
  int rank() const { return rank_; }

  /// f = F2_hat c (length n).
  std::vector<cplx> apply(std::span<const cplx> c) const;
  /// F2_hat^* f (length n): adjoint transform, entry k is
  /// sum_j exp(+2*pi*i*x_j*k) f_j.
  std::vector<cplx> adjoint(std::span<const cplx> f) const;

 private:
  int n_;
  int rank_;
  std::vector<int> nearest_;     // nearest grid index per node, mod n
  std::vector<cplx> node_fac_;   // [j*rank + r]
  std::vector<double> cheb_;     // [r*n + k] = T_r(2k/n - 1)
};

/// Fast NUFFT-II with rank-K correction; matches nudft2_direct to roughly
/// machine precision at K = 14 for near-equispaced nodes and degrades
/// gracefully otherwise.
std::vector<cplx> nufft2_apply(std::span<const cplx> c,
                               const NonuniformNodes& nodes, int rank = 14);

std::vector<cplx> nufft2_adjoint(std::span<const cplx> f,
                                 const NonuniformNodes& nodes, int rank = 14);

/// First column of the Hermitian Toeplitz Gram matrix F2_hat^* F2_hat
/// truncated to m terms: column_k = sum_j exp(+2*pi*i*x_j*k), k = 0..m-1.
struct ToeplitzGram {
  std::vector<cplx> first_column;
};

ToeplitzGram gram_toeplitz_column(const NonuniformNodes& nodes, int m,
                                  int rank = 14);

/// Circulant embedding of the Gram matrix (size next_fast_len(2m)) with its
/// FFT cached, so each matvec is two FFTs. Immutable; shareable.
class ToeplitzOperator {
 public:
  explicit ToeplitzOperator(const ToeplitzGram& gram);

  int m() const { return m_; }
  void apply(std::span<const cplx> v, std::span<cplx> out) const;

 private:
  int m_;
  int len_;
  std::vector<cplx> spectrum_;
};

std::vector<cplx> toeplitz_apply(const ToeplitzGram& gram,
                                 std::span<const cplx> v);

struct LsqResult {
  std::vector<cplx> coeffs;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Conjugate gradients on the (truncated) Toeplitz normal equations
/// G c = b with G from a precomputed operator. Starts from c0 = b/n (the
/// exact solution in the equispaced case) when diag_n > 0. Stops when
/// ||G c - b|| <= tol * ||b||; throws NonConvergence (best iterate attached)
/// after max_iter steps.
LsqResult cg_toeplitz_solve(const ToeplitzOperator& gram_op,
                            std::span<const cplx> rhs, double tol,
                            int max_iter, double diag_n);

/// Least-squares inverse NUFFT-II: c (length m <= n) minimizing
/// ||F2_hat^{(n x m)} c - f||_2, solved by CG on the m x m Toeplitz normal
/// equations with right-hand side given by the truncated adjoint transform.
LsqResult inufft2_lsq(std::span<const cplx> f, const NonuniformNodes& nodes,
                      int m, double tol = 1e-12, int max_iter = 200,
                      int rank = 14);

}  // namespace hp2sph

#endif
