#include "hp2sph/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace hp2sph::fft {

namespace {

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    // Dummy buffers only; FFTW_ESTIMATE never reads them and FFTW_UNALIGNED
    // lets us execute on arbitrary caller buffers later.
    std::vector<cplx> a(n), b(n);
    fftw_plan plan = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(a.data()),
        reinterpret_cast<fftw_complex*>(b.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

void execute(std::span<const cplx> in, std::span<cplx> out, int sign) {
  if (in.size() != out.size()) throw std::invalid_argument("fft: size mismatch");
  if (in.empty()) return;
  const int n = static_cast<int>(in.size());
  fftw_plan plan = PlanCache::instance().get(n, sign);
  if (in.data() == out.data()) {
    std::vector<cplx> tmp(in.begin(), in.end());
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
  } else {
    fftw_execute_dft(
        plan,
        reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
        reinterpret_cast<fftw_complex*>(out.data()));
  }
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) {
  execute(in, out, FFTW_FORWARD);
}

void backward(std::span<const cplx> in, std::span<cplx> out) {
  execute(in, out, FFTW_BACKWARD);
}

std::vector<cplx> forward(const std::vector<cplx>& in) {
  std::vector<cplx> out(in.size());
  forward(std::span<const cplx>(in), std::span<cplx>(out));
  return out;
}

std::vector<cplx> backward(const std::vector<cplx>& in) {
  std::vector<cplx> out(in.size());
  backward(std::span<const cplx>(in), std::span<cplx>(out));
  return out;
}

int next_fast_len(int n) {
  if (n <= 1) return 1;
  for (int candidate = n;; ++candidate) {
    int r = candidate;
    while (r % 2 == 0) r /= 2;
    while (r % 3 == 0) r /= 3;
    while (r % 5 == 0) r /= 5;
    if (r == 1) return candidate;
  }
}

}  // namespace hp2sph::fft
