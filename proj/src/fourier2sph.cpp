#include "hp2sph/fourier2sph.hpp"

#include <cmath>
#include <numbers>

namespace hp2sph {

namespace {
constexpr double kPi = std::numbers::pi;
}

OddExpanded expand_to_odd(const BivariateFourier& C) {
  const int p = C.p();
  OddExpanded X(p);
  for (int j = -p; j <= p; ++j) {
    for (int k = -p + 1; k <= p - 1; ++k) X.at(j, k) = C.at(j, k);
    X.at(j, -p) = 0.5 * C.at(j, -p);
    X.at(j, p) = 0.5 * C.at(j, -p);
  }
  return X;
}

GCoefficients to_g_coefficients(const OddExpanded& X) {
  const int p = X.p();
  const double norm = std::sqrt(2.0 * kPi);
  GCoefficients g(p);
  for (int k = -p; k <= p; ++k) {
    if (((k % 2) + 2) % 2 == 0) {
      // cos branch: h_k(theta) = X_{0,k} + sum_{j>=1} (X_{j,k}+X_{-j,k}) cos(j theta)
      g.at(0, k) = norm * X.at(0, k);
      for (int j = 1; j <= p; ++j)
        g.at(j, k) = norm * (X.at(j, k) + X.at(-j, k));
    } else {
      // sin branch: odd part of h_k is sum_{j>=1} i (X_{j,k}-X_{-j,k}) sin(j theta),
      // stored against sin((j+1) theta) rows.
      for (int j = 1; j <= p; ++j)
        g.at(j - 1, k) = norm * cplx{0.0, 1.0} * (X.at(j, k) - X.at(-j, k));
      g.at(p, k) = cplx{0.0, 0.0};
    }
  }
  return g;
}

double parity_defect(const OddExpanded& X) {
  const int p = X.p();
  double worst = 0.0;
  for (int k = -p; k <= p; ++k) {
    const bool even = ((k % 2) + 2) % 2 == 0;
    if (!even) worst = std::max(worst, std::abs(X.at(0, k)));
    for (int j = 1; j <= p; ++j) {
      cplx defect = even ? (X.at(j, k) - X.at(-j, k))
                         : (X.at(j, k) + X.at(-j, k));
      worst = std::max(worst, std::abs(defect));
    }
  }
  return worst;
}

SphCoeffTriangle g_to_alm_with_tables(const GCoefficients& g, int p,
                                      const GaussLegendreRule& rule,
                                      const std::vector<double>& cos_table,
                                      const std::vector<double>& sin_table) {
  const int nq = p + 1;
  SphCoeffTriangle a(p);
#pragma omp parallel for schedule(dynamic)
  for (int col = 0; col < 2 * p + 1; ++col) {
    const int k = (col == 0) ? 0 : (col % 2 == 1 ? -(col + 1) / 2 : col / 2);
    const int mu = std::abs(k);
    const bool even = ((k % 2) + 2) % 2 == 0;
    // Profile f_k at the quadrature colatitudes.
    std::vector<cplx> profile(nq, cplx{0.0, 0.0});
    const double inv_norm = 1.0 / std::sqrt(2.0 * kPi);
    for (int j = 0; j <= p; ++j) {
      const cplx gj = g.at(j, k);
      if (gj == cplx{0.0, 0.0}) continue;
      const double* table =
          even ? cos_table.data() + static_cast<std::size_t>(j) * nq
               : sin_table.data() + static_cast<std::size_t>(j + 1) * nq;
      for (int q = 0; q < nq; ++q) profile[q] += gj * table[q];
    }
    for (int q = 0; q < nq; ++q) profile[q] *= inv_norm;

    // a_l^k = 2*pi * sign * sum_q w_q f_k(theta_q) P~_l^mu(x_q); the sign
    // (-1)^mu carries the m < 0 convention.
    const double sign = (k < 0 && mu % 2 == 1) ? -1.0 : 1.0;
    std::vector<double> plm(p - mu + 1);
    std::vector<cplx> acc(p - mu + 1, cplx{0.0, 0.0});
    for (int q = 0; q < nq; ++q) {
      eval_plm_sequence(p, mu, rule.nodes[q], plm.data());
      const cplx wf = rule.weights[q] * profile[q];
      for (int l = 0; l <= p - mu; ++l) acc[l] += wf * plm[l];
    }
    for (int l = mu; l <= p; ++l)
      a.at(l, k) = 2.0 * kPi * sign * acc[l - mu];
  }
  return a;
}

SphCoeffTriangle g_to_alm(const GCoefficients& g, int p) {
  GaussLegendreRule rule = gauss_legendre(p + 1);
  const int nq = p + 1;
  std::vector<double> cos_table(static_cast<std::size_t>(p + 2) * nq);
  std::vector<double> sin_table(static_cast<std::size_t>(p + 2) * nq);
  for (int j = 0; j <= p + 1; ++j)
    for (int q = 0; q < nq; ++q) {
      const double theta = std::acos(rule.nodes[q]);
      cos_table[static_cast<std::size_t>(j) * nq + q] = std::cos(j * theta);
      sin_table[static_cast<std::size_t>(j) * nq + q] = std::sin(j * theta);
    }
  return g_to_alm_with_tables(g, p, rule, cos_table, sin_table);
}

}  // namespace hp2sph
