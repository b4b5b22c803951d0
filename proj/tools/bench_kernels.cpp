// Benchmark of the OpenMP inner kernels against their serial reference
// implementations. Build and run:
//   cmake --build build --target bench_kernels && ./build/tools/bench_kernels

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include <omp.h>

#include "fastspread/grid.hpp"
#include "fastspread/ops.hpp"

using namespace fastspread;
using clk = std::chrono::steady_clock;

namespace {

double time_ms(int reps, const std::function<void()>& fn) {
  fn();  // warm up
  const auto t0 = clk::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = clk::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, int n, double serial_ms, double omp_ms) {
  std::printf("%-22s %6d  %10.3f  %10.3f  %6.2fx\n", name, n, serial_ms, omp_ms,
              serial_ms / omp_ms);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-22s %6s  %10s  %10s  %7s\n", "kernel", "n", "serial ms",
              "omp ms", "speedup");

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(0.0, 1.0);

  for (int n : {256, 512}) {
    const GridSpec g = GridSpec::square(n, 8.0);
    std::vector<double> a(g.size()), b(g.size()), out(g.size());
    for (double& x : a) x = dist(rng);
    for (double& x : b) x = dist(rng);
    std::vector<double> M(static_cast<std::size_t>(n) * n);
    for (double& x : M) x = dist(rng);

    report("axis_matvec(axis 0)", n,
           time_ms(3, [&] { ops::serial::apply_axis_operator(g, 0, M, a, out); }),
           time_ms(3, [&] { ops::apply_axis_operator(g, 0, M, a, out); }));
    report("axis_matvec(axis 1)", n,
           time_ms(3, [&] { ops::serial::apply_axis_operator(g, 1, M, a, out); }),
           time_ms(3, [&] { ops::apply_axis_operator(g, 1, M, a, out); }));
    report("pointwise multiply", n,
           time_ms(50, [&] { ops::serial::multiply(out, a, b); }),
           time_ms(50, [&] { ops::multiply(out, a, b); }));
    report("sum reduction", n,
           time_ms(50, [&] { volatile double s = ops::serial::sum(a); (void)s; }),
           time_ms(50, [&] { volatile double s = ops::sum(a); (void)s; }));
    report("max_abs reduction", n,
           time_ms(50, [&] { volatile double s = ops::serial::max_abs(a); (void)s; }),
           time_ms(50, [&] { volatile double s = ops::max_abs(a); (void)s; }));
  }
  return 0;
}
