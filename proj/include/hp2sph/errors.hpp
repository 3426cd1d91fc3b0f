#ifndef HP2SPH_ERRORS_HPP
#define HP2SPH_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hp2sph {

/// Thrown when an iterative solver hits its iteration cap. Carries the last
/// state so callers can inspect or report it (CLI maps this to exit code 3).
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(std::string message, int iterations, double residual,
                 double last_estimate = 0.0,
                 std::vector<std::complex<double>> best = {})
      : std::runtime_error(std::move(message)),
        iterations(iterations),
        residual(residual),
        last_estimate(last_estimate),
        best_iterate(std::move(best)) {}

  int iterations;
  double residual;
  double last_estimate;
  std::vector<std::complex<double>> best_iterate;
  int wavenumber = -1;  // set by the pipeline when a latitude solve fails
};

}  // namespace hp2sph

#endif
