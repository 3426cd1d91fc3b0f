#include "reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hp2sph::ref {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;
}  // namespace

SphCoeffTriangle analyze_direct_sum(const HealpixGrid& grid,
                                    std::span<const double> values,
                                    int ell_max) {
  if (static_cast<std::int64_t>(values.size()) != grid.n_points())
    throw std::invalid_argument("analyze_direct_sum: length mismatch");
  SphCoeffTriangle a(ell_max);
  for (std::int64_t i = 0; i < grid.n_points(); ++i) {
    auto [lambda, theta] = grid.point(i);
    for (int l = 0; l <= ell_max; ++l)
      for (int m = -l; m <= l; ++m)
        a.at(l, m) += std::conj(eval_ylm(l, m, lambda, theta)) * values[i];
  }
  const double scale = 4.0 * kPi / static_cast<double>(grid.n_points());
  for (cplx& c : a.data()) c *= scale;
  return a;
}

std::vector<cplx> synthesize_direct_sum(const HealpixGrid& grid,
                                        const SphCoeffTriangle& coeffs) {
  std::vector<cplx> out(grid.n_points(), cplx{0.0, 0.0});
  for (std::int64_t i = 0; i < grid.n_points(); ++i) {
    auto [lambda, theta] = grid.point(i);
    for (int l = 0; l <= coeffs.ell_max(); ++l)
      for (int m = -l; m <= l; ++m)
        out[i] += coeffs.at(l, m) * eval_ylm(l, m, lambda, theta);
  }
  return out;
}

std::vector<cplx> nudft2_longdouble(std::span<const cplx> c,
                                    std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (static_cast<int>(c.size()) != n)
    throw std::invalid_argument("nudft2_longdouble: length mismatch");
  std::vector<cplx> f(n);
  for (int j = 0; j < n; ++j) {
    long double re = 0.0L, im = 0.0L;
    for (int k = 0; k < n; ++k) {
      const long double phase = -2.0L * kPiL * static_cast<long double>(x[j]) * k;
      const long double cr = std::cos(phase), ci = std::sin(phase);
      re += c[k].real() * cr - c[k].imag() * ci;
      im += c[k].real() * ci + c[k].imag() * cr;
    }
    f[j] = cplx{static_cast<double>(re), static_cast<double>(im)};
  }
  return f;
}

std::vector<cplx> nudft2_adjoint_longdouble(std::span<const cplx> f,
                                            std::span<const double> x, int m) {
  const int n = static_cast<int>(x.size());
  if (static_cast<int>(f.size()) != n)
    throw std::invalid_argument("nudft2_adjoint_longdouble: length mismatch");
  std::vector<cplx> out(m);
  for (int k = 0; k < m; ++k) {
    long double re = 0.0L, im = 0.0L;
    for (int j = 0; j < n; ++j) {
      const long double phase = 2.0L * kPiL * static_cast<long double>(x[j]) * k;
      const long double cr = std::cos(phase), ci = std::sin(phase);
      re += f[j].real() * cr - f[j].imag() * ci;
      im += f[j].real() * ci + f[j].imag() * cr;
    }
    out[k] = cplx{static_cast<double>(re), static_cast<double>(im)};
  }
  return out;
}

std::vector<cplx> toeplitz_dense_apply(std::span<const cplx> first_column,
                                       std::span<const cplx> v) {
  const int m = static_cast<int>(v.size());
  if (static_cast<int>(first_column.size()) != m)
    throw std::invalid_argument("toeplitz_dense_apply: length mismatch");
  std::vector<cplx> out(m, cplx{0.0, 0.0});
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const int d = a - b;
      const cplx t = d >= 0 ? first_column[d] : std::conj(first_column[-d]);
      out[a] += t * v[b];
    }
  return out;
}

long double plm_longdouble(int ell, int m, long double x) {
  if (m < 0 || m > ell)
    throw std::invalid_argument("plm_longdouble: requires 0 <= m <= ell");
  long double pmm = 1.0L / std::sqrt(4.0L * kPiL);
  const long double sin_theta = std::sqrt((1.0L - x) * (1.0L + x));
  for (int k = 1; k <= m; ++k)
    pmm *= std::sqrt((2.0L * k + 1.0L) / (2.0L * k)) * sin_theta;
  if (m % 2 == 1) pmm = -pmm;
  if (ell == m) return pmm;
  long double prev = pmm;
  long double cur = x * std::sqrt(2.0L * m + 3.0L) * pmm;
  long double oldfact = std::sqrt(2.0L * m + 3.0L);
  for (int l = m + 2; l <= ell; ++l) {
    const long double fact = std::sqrt(
        (4.0L * l * l - 1.0L) /
        (static_cast<long double>(l) * l - static_cast<long double>(m) * m));
    const long double next = (x * cur - prev / oldfact) * fact;
    prev = cur;
    cur = next;
    oldfact = fact;
  }
  return cur;
}

cplx eval_ring_expansion(std::span<const cplx> row, double lambda) {
  const int width = static_cast<int>(row.size());
  cplx acc{0.0, 0.0};
  for (int col = 0; col < width; ++col) {
    const int n = col - width / 2;
    acc += row[col] * std::polar(1.0, n * lambda);
  }
  return acc;
}

}  // namespace hp2sph::ref
