#include "hp2sph/nufft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hp2sph/errors.hpp"
#include "hp2sph/fft.hpp"

namespace hp2sph {

namespace {
constexpr double kPi = std::numbers::pi;
}

NonuniformNodes::NonuniformNodes(std::vector<double> x) : x_(std::move(x)) {
  if (x_.empty()) throw std::invalid_argument("NonuniformNodes: empty node set");
  if (!std::is_sorted(x_.begin(), x_.end()))
    throw std::invalid_argument("NonuniformNodes: nodes must be sorted ascending");
  if (x_.front() < 0.0 || x_.back() >= 1.0)
    throw std::invalid_argument("NonuniformNodes: nodes must lie in [0, 1)");
  const int n = static_cast<int>(x_.size());
  gamma_ = 0.0;
  for (int j = 0; j < n; ++j)
    gamma_ = std::max(gamma_, n * std::abs(x_[j] - static_cast<double>(j) / n));
}

std::vector<cplx> nudft2_direct(std::span<const cplx> c,
                                const NonuniformNodes& nodes) {
  const int n = nodes.size();
  if (static_cast<int>(c.size()) != n)
    throw std::invalid_argument("nudft2_direct: length mismatch");
  std::vector<cplx> f(n);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    const cplx w = std::polar(1.0, -2.0 * kPi * nodes.x()[j]);
    cplx phase{1.0, 0.0};
    cplx acc{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      acc += c[k] * phase;
      phase *= w;
    }
    f[j] = acc;
  }
  return f;
}

NufftPlan::NufftPlan(const NonuniformNodes& nodes, int rank)
    : n_(nodes.size()), rank_(rank) {
  if (rank < 1) throw std::invalid_argument("NufftPlan: rank must be >= 1");
  nearest_.resize(n_);
  node_fac_.resize(static_cast<std::size_t>(n_) * rank);
  for (int j = 0; j < n_; ++j) {
    const double scaled = nodes.x()[j] * n_;
    const long r = std::lround(scaled);
    const double u = scaled - r;  // in [-1/2, 1/2]
    nearest_[j] = static_cast<int>(((r % n_) + n_) % n_);
    // exp(-2*pi*i*u*k/n) = exp(-pi*i*u) exp(-pi*i*u*s) with s = 2k/n - 1;
    // Chebyshev coefficients of exp(i*w*s) are (2 - delta_r0) i^r J_r(w).
    const cplx lead = std::polar(1.0, -kPi * u);
    for (int r2 = 0; r2 < rank; ++r2) {
      double jr = std::cyl_bessel_j(r2, kPi * std::abs(u));
      if (u < 0.0 && r2 % 2 == 1) jr = -jr;
      cplx ipow;  // (-i)^r
      switch (r2 % 4) {
        case 0: ipow = {1.0, 0.0}; break;
        case 1: ipow = {0.0, -1.0}; break;
        case 2: ipow = {-1.0, 0.0}; break;
        default: ipow = {0.0, 1.0}; break;
      }
      node_fac_[static_cast<std::size_t>(j) * rank + r2] =
          lead * ((r2 == 0) ? 1.0 : 2.0) * ipow * jr;
    }
  }
  cheb_.resize(static_cast<std::size_t>(rank) * n_);
  for (int k = 0; k < n_; ++k) {
    const double s = 2.0 * k / n_ - 1.0;
    cheb_[k] = 1.0;
    if (rank > 1) cheb_[n_ + k] = s;
    for (int r = 2; r < rank; ++r)
      cheb_[static_cast<std::size_t>(r) * n_ + k] =
          2.0 * s * cheb_[static_cast<std::size_t>(r - 1) * n_ + k] -
          cheb_[static_cast<std::size_t>(r - 2) * n_ + k];
  }
}

std::vector<cplx> NufftPlan::apply(std::span<const cplx> c) const {
  if (static_cast<int>(c.size()) != n_)
    throw std::invalid_argument("NufftPlan::apply: length mismatch");
  std::vector<cplx> out(n_, cplx{0.0, 0.0});
  std::vector<cplx> scaled(n_), transformed(n_);
  for (int r = 0; r < rank_; ++r) {
    const double* t = cheb_.data() + static_cast<std::size_t>(r) * n_;
    for (int k = 0; k < n_; ++k) scaled[k] = t[k] * c[k];
    fft::forward(std::span<const cplx>(scaled), std::span<cplx>(transformed));
    for (int j = 0; j < n_; ++j)
      out[j] += node_fac_[static_cast<std::size_t>(j) * rank_ + r] *
                transformed[nearest_[j]];
  }
  return out;
}

std::vector<cplx> NufftPlan::adjoint(std::span<const cplx> f) const {
  if (static_cast<int>(f.size()) != n_)
    throw std::invalid_argument("NufftPlan::adjoint: length mismatch");
  std::vector<cplx> out(n_, cplx{0.0, 0.0});
  std::vector<cplx> scattered(n_), transformed(n_);
  for (int r = 0; r < rank_; ++r) {
    std::fill(scattered.begin(), scattered.end(), cplx{0.0, 0.0});
    for (int j = 0; j < n_; ++j)
      scattered[nearest_[j]] +=
          std::conj(node_fac_[static_cast<std::size_t>(j) * rank_ + r]) * f[j];
    // (F^* s)_k = sum_i exp(+2*pi*i*i*k/n) s_i: one unnormalized backward FFT.
    fft::backward(std::span<const cplx>(scattered), std::span<cplx>(transformed));
    const double* t = cheb_.data() + static_cast<std::size_t>(r) * n_;
    for (int k = 0; k < n_; ++k) out[k] += t[k] * transformed[k];
  }
  return out;
}

std::vector<cplx> nufft2_apply(std::span<const cplx> c,
                               const NonuniformNodes& nodes, int rank) {
  return NufftPlan(nodes, rank).apply(c);
}

std::vector<cplx> nufft2_adjoint(std::span<const cplx> f,
                                 const NonuniformNodes& nodes, int rank) {
  return NufftPlan(nodes, rank).adjoint(f);
}

ToeplitzGram gram_toeplitz_column(const NonuniformNodes& nodes, int m,
                                  int rank) {
  const int n = nodes.size();
  if (m < 1 || m > n)
    throw std::invalid_argument("gram_toeplitz_column: requires 1 <= m <= n");
  // F2^* F2 e_1 = F2^* 1: the adjoint transform of the all-ones vector.
  std::vector<cplx> ones(n, cplx{1.0, 0.0});
  std::vector<cplx> full = NufftPlan(nodes, rank).adjoint(ones);
  ToeplitzGram gram;
  gram.first_column.assign(full.begin(), full.begin() + m);
  return gram;
}

ToeplitzOperator::ToeplitzOperator(const ToeplitzGram& gram)
    : m_(static_cast<int>(gram.first_column.size())) {
  if (m_ < 1) throw std::invalid_argument("ToeplitzOperator: empty column");
  len_ = fft::next_fast_len(2 * m_);
  std::vector<cplx> circulant(len_, cplx{0.0, 0.0});
  circulant[0] = gram.first_column[0].real();  // Hermitian diagonal
  for (int d = 1; d < m_; ++d) {
    circulant[d] = gram.first_column[d];
    circulant[len_ - d] = std::conj(gram.first_column[d]);
  }
  spectrum_.resize(len_);
  fft::forward(std::span<const cplx>(circulant), std::span<cplx>(spectrum_));
}

void ToeplitzOperator::apply(std::span<const cplx> v,
                             std::span<cplx> out) const {
  if (static_cast<int>(v.size()) != m_ || static_cast<int>(out.size()) != m_)
    throw std::invalid_argument("ToeplitzOperator::apply: length mismatch");
  std::vector<cplx> padded(len_, cplx{0.0, 0.0});
  std::copy(v.begin(), v.end(), padded.begin());
  std::vector<cplx> vhat(len_);
  fft::forward(std::span<const cplx>(padded), std::span<cplx>(vhat));
  for (int i = 0; i < len_; ++i) vhat[i] *= spectrum_[i] / static_cast<double>(len_);
  fft::backward(std::span<const cplx>(vhat), std::span<cplx>(padded));
  std::copy(padded.begin(), padded.begin() + m_, out.begin());
}

std::vector<cplx> toeplitz_apply(const ToeplitzGram& gram,
                                 std::span<const cplx> v) {
  ToeplitzOperator op(gram);
  std::vector<cplx> out(v.size());
  op.apply(v, std::span<cplx>(out));
  return out;
}

LsqResult cg_toeplitz_solve(const ToeplitzOperator& gram_op,
                            std::span<const cplx> rhs, double tol,
                            int max_iter, double diag_n) {
  if (tol <= 0.0) throw std::invalid_argument("cg_toeplitz_solve: tol must be > 0");
  const int m = gram_op.m();
  LsqResult result;
  result.coeffs.assign(m, cplx{0.0, 0.0});

  double b_norm = 0.0;
  for (const cplx& v : rhs) b_norm += std::norm(v);
  b_norm = std::sqrt(b_norm);
  if (b_norm == 0.0) return result;

  std::vector<cplx> r(rhs.begin(), rhs.end());
  if (diag_n > 0.0) {
    // The Gram diagonal is n, so b/n solves the equispaced case exactly and
    // is a strong start in general.
    for (int i = 0; i < m; ++i) result.coeffs[i] = rhs[i] / diag_n;
    std::vector<cplx> gc(m);
    gram_op.apply(result.coeffs, std::span<cplx>(gc));
    for (int i = 0; i < m; ++i) r[i] = rhs[i] - gc[i];
  }
  std::vector<cplx> p(r);
  std::vector<cplx> gp(m);
  double rs = 0.0;
  for (const cplx& v : r) rs += std::norm(v);

  int it = 0;
  while (std::sqrt(rs) > tol * b_norm) {
    if (it >= max_iter) {
      NonConvergence err("cg_toeplitz_solve: CG did not reach tolerance", it,
                         std::sqrt(rs) / b_norm, 0.0, result.coeffs);
      throw err;
    }
    gram_op.apply(p, std::span<cplx>(gp));
    cplx pdot{0.0, 0.0};
    for (int i = 0; i < m; ++i) pdot += std::conj(p[i]) * gp[i];
    const double alpha = rs / pdot.real();
    for (int i = 0; i < m; ++i) {
      result.coeffs[i] += alpha * p[i];
      r[i] -= alpha * gp[i];
    }
    double rs_next = 0.0;
    for (const cplx& v : r) rs_next += std::norm(v);
    const double beta = rs_next / rs;
    for (int i = 0; i < m; ++i) p[i] = r[i] + beta * p[i];
    rs = rs_next;
    ++it;
  }
  result.iterations = it;
  result.relative_residual = std::sqrt(rs) / b_norm;
  return result;
}

LsqResult inufft2_lsq(std::span<const cplx> f, const NonuniformNodes& nodes,
                      int m, double tol, int max_iter, int rank) {
  const int n = nodes.size();
  if (static_cast<int>(f.size()) != n)
    throw std::invalid_argument("inufft2_lsq: data length mismatch");
  if (m < 1 || m > n)
    throw std::invalid_argument("inufft2_lsq: requires 1 <= m <= n");
  NufftPlan plan(nodes, rank);
  std::vector<cplx> rhs_full = plan.adjoint(f);
  std::vector<cplx> rhs(rhs_full.begin(), rhs_full.begin() + m);
  ToeplitzOperator gram_op(gram_toeplitz_column(nodes, m, rank));
  return cg_toeplitz_solve(gram_op, rhs, tol, max_iter, n);
}

}  // namespace hp2sph
