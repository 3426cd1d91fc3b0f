#ifndef HP2SPH_GAUSS_LEGENDRE_HPP
#define HP2SPH_GAUSS_LEGENDRE_HPP

#include <vector>

namespace hp2sph {

struct GaussLegendreRule {
  std::vector<double> nodes;    // ascending in (-1, 1)
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1], exact for polynomials of degree
/// <= 2n-1. Nodes from Newton iteration on P_n with the usual cosine initial
/// guesses.
GaussLegendreRule gauss_legendre(int n);

}  // namespace hp2sph

#endif
