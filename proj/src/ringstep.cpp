#include "hp2sph/ringstep.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hp2sph/fft.hpp"

namespace hp2sph {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<cplx> ring_to_aligned_coeffs(std::span<const double> ring_values,
                                         int ring_index_j, RingKind kind,
                                         int n_side) {
  const int width = 4 * n_side;
  int expected = 0;
  bool shifted = false;
  int shift_j = 0;
  if (kind == RingKind::polar) {
    if (ring_index_j < 1 || ring_index_j >= n_side)
      throw std::invalid_argument("ring_to_aligned_coeffs: bad polar ring index");
    expected = 4 * ring_index_j;
    shifted = true;
    shift_j = ring_index_j;
  } else {
    if (ring_index_j < n_side || ring_index_j > 3 * n_side)
      throw std::invalid_argument(
          "ring_to_aligned_coeffs: bad equatorial ring index");
    expected = 4 * n_side;
    shifted = ((ring_index_j + 1) % 2) == 1;
    shift_j = n_side;
  }
  if (static_cast<int>(ring_values.size()) != expected)
    throw std::invalid_argument("ring_to_aligned_coeffs: ring length mismatch");

  const int len = expected;
  std::vector<cplx> samples(ring_values.begin(), ring_values.end());
  std::vector<cplx> spectrum(len);
  fft::forward(std::span<const cplx>(samples), std::span<cplx>(spectrum));
  const double inv_len = 1.0 / len;

  std::vector<cplx> out(width, cplx{0.0, 0.0});
  const int half = len / 2;
  if (shifted) {
    // De-shift c_n = c~_n * exp(-i*n*pi/(4j)), the phase built as a running
    // product (Horner) instead of per-n exponentials.
    const cplx step = std::polar(1.0, -kPi / (4.0 * shift_j));
    cplx phase{1.0, 0.0};
    for (int n = 0; n < half; ++n) {
      out[width / 2 + n] = spectrum[n] * inv_len * phase;
      phase *= step;
    }
    phase = std::conj(step);
    for (int n = -1; n >= -half; --n) {
      out[width / 2 + n] = spectrum[n + len] * inv_len * phase;
      phase *= std::conj(step);
    }
  } else {
    for (int n = -half; n < half; ++n)
      out[width / 2 + n] = spectrum[(n + len) % len] * inv_len;
  }
  return out;
}

AlignedRingCoeffs upsample_map(const MapValues& map) {
  const HealpixGrid& grid = map.grid();
  AlignedRingCoeffs aligned(grid.n_side(), grid.n_rings());
  const int n_rings = grid.n_rings();
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < n_rings; ++r) {
    const RingSpec& ring = grid.ring(r);
    std::span<const double> vals(map.values().data() + ring.first_index,
                                 static_cast<std::size_t>(ring.count));
    aligned.row(r) = ring_to_aligned_coeffs(
        vals, ring.region_j,
        ring.polar ? RingKind::polar : RingKind::equatorial, grid.n_side());
  }
  return aligned;
}

}  // namespace hp2sph
