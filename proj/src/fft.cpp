#include "fastspread/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "fastspread/ops.hpp"

namespace fastspread::fft {

namespace {

// FFTW planning is not thread-safe; execution via fftw_execute_dft is.
// Plans use FFTW_ESTIMATE so the chosen algorithm is deterministic.
class PlanCache {
 public:
  fftw_plan get(const GridSpec& g, int sign) {
    const Key key{g.dim, g.n[0], g.n[1], g.n[2], sign};
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<fftw_complex> buf(g.size());
    fftw_plan p = nullptr;
    if (g.dim == 2)
      p = fftw_plan_dft_2d(g.n[0], g.n[1], buf.data(), buf.data(), sign,
                           FFTW_ESTIMATE);
    else
      p = fftw_plan_dft_3d(g.n[0], g.n[1], g.n[2], buf.data(), buf.data(), sign,
                           FFTW_ESTIMATE);
    if (!p) throw std::runtime_error("fft: plan creation failed");
    plans_.emplace(key, p);
    return p;
  }

 private:
  using Key = std::tuple<int, int, int, int, int>;
  std::map<Key, fftw_plan> plans_;
  std::mutex mutex_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void require_spectral(const GridSpec& g) {
  if (!g.spectral_capable())
    throw std::invalid_argument("fft: grid sizes must be powers of two");
}

}  // namespace

SpectralField forward(const ScalarField& f) {
  require_spectral(f.grid);
  SpectralField F(f.grid);
  ops::indexed_fill(
      std::span<double>(reinterpret_cast<double*>(F.modes.data()),
                        2 * F.modes.size()),
      [&](std::size_t i) { return i % 2 == 0 ? f.values[i / 2] : 0.0; });
  fftw_plan p = cache().get(f.grid, FFTW_FORWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(F.modes.data()),
                   reinterpret_cast<fftw_complex*>(F.modes.data()));
  return F;
}

ScalarField inverse(const SpectralField& F) {
  require_spectral(F.grid);
  std::vector<std::complex<double>> work(F.modes);
  fftw_plan p = cache().get(F.grid, FFTW_BACKWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(work.data()),
                   reinterpret_cast<fftw_complex*>(work.data()));
  ScalarField out(F.grid);
  const double norm = 1.0 / static_cast<double>(F.grid.size());
  ops::indexed_fill(out.values,
                    [&](std::size_t i) { return work[i].real() * norm; });
  return out;
}

void dealias(SpectralField& F) {
  const GridSpec& g = F.grid;
  const std::size_t total = g.size();
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(total); ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    std::size_t rem = u;
    bool kill = false;
    for (int a = g.dim - 1; a >= 0; --a) {
      const int idx = static_cast<int>(rem % g.n[a]);
      rem /= g.n[a];
      const int m = g.mode_number(a, idx);
      if (std::abs(m) > g.n[a] / 3) {
        kill = true;
        break;
      }
    }
    if (kill) F.modes[u] = 0.0;
  }
}

double mode_energy(const SpectralField& F) {
  const double w = F.grid.cell_volume() / static_cast<double>(F.grid.size());
  return w * ops::indexed_sum(F.modes.size(), [&](std::size_t i) {
           return std::norm(F.modes[i]);
         });
}

double tail_fraction(const SpectralField& F, bool dealias_band) {
  const GridSpec& g = F.grid;
  const std::size_t total = g.size();
  const double band_scale = dealias_band ? 3.0 : 2.0;
  // two deterministic chunked sums
  const double all =
      ops::indexed_sum(total, [&](std::size_t u) { return std::norm(F.modes[u]); });
  const double tail = ops::indexed_sum(total, [&](std::size_t u) {
    std::size_t rem = u;
    double r = 0.0;
    for (int a = g.dim - 1; a >= 0; --a) {
      const int idx = static_cast<int>(rem % g.n[a]);
      rem /= g.n[a];
      const double ra = std::abs(g.mode_number(a, idx)) / (g.n[a] / band_scale);
      r = std::max(r, ra);
    }
    return r >= 2.0 / 3.0 ? std::norm(F.modes[u]) : 0.0;
  });
  return all > 0.0 ? tail / all : 0.0;
}

}  // namespace fastspread::fft
