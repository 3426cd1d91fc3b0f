#ifndef HP2SPH_FFT_HPP
#define HP2SPH_FFT_HPP

#include <complex>
#include <span>
#include <vector>

namespace hp2sph {

using cplx = std::complex<double>;

/// Thin wrapper around FFTW's 1-d complex transforms. Plans are cached per
/// (length, direction) behind a mutex; execution is lock-free and safe to
/// call from many threads at once. Transforms are unnormalized:
///   forward:  out[s] = sum_k in[k] * exp(-2*pi*i*s*k/n)
///   backward: out[k] = sum_s in[s] * exp(+2*pi*i*s*k/n)
namespace fft {

void forward(std::span<const cplx> in, std::span<cplx> out);
void backward(std::span<const cplx> in, std::span<cplx> out);

std::vector<cplx> forward(const std::vector<cplx>& in);
std::vector<cplx> backward(const std::vector<cplx>& in);

/// Smallest 5-smooth integer >= n (sizes FFTW handles at O(n log n) without
/// falling back to generic prime-length algorithms).
int next_fast_len(int n);

}  // namespace fft
}  // namespace hp2sph

#endif
