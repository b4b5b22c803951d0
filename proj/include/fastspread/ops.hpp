#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fastspread/grid.hpp"

// Data-parallel inner kernels. Every kernel has an OpenMP implementation in
// ops:: (the one the solvers call) and a plain serial reference in
// ops::serial::, kept for equivalence tests and the benchmark target.
//
// Reductions use a fixed chunk decomposition combined in chunk order, so the
// result is independent of the thread count. This keeps diagnostics and CSV
// output byte-identical between runs of the same config.

namespace fastspread::ops {

inline constexpr std::size_t kReduceChunk = 8192;

namespace serial {

double sum(std::span<const double> v);
/// sum of f(v[i]) for a callable f, reference implementation
template <class F>
double sum_map(std::span<const double> v, F&& f) {
  double s = 0.0;
  for (double x : v) s += f(x);
  return s;
}
double max_abs(std::span<const double> v);
double min(std::span<const double> v);
void scale(std::span<double> v, double a);
void axpy(std::span<double> y, double a, std::span<const double> x);
void multiply(std::span<double> out, std::span<const double> a,
              std::span<const double> b);

/// For every 1D line of `in` along `axis`, out_line = M * in_line.
/// M is n x n row-major with n = grid.n[axis].
void apply_axis_operator(const GridSpec& grid, int axis,
                         std::span<const double> M, std::span<const double> in,
                         std::span<double> out);

}  // namespace serial

double sum(std::span<const double> v);
double max_abs(std::span<const double> v);
double min(std::span<const double> v);
void scale(std::span<double> v, double a);
void axpy(std::span<double> y, double a, std::span<const double> x);
void multiply(std::span<double> out, std::span<const double> a,
              std::span<const double> b);

void apply_axis_operator(const GridSpec& grid, int axis,
                         std::span<const double> M, std::span<const double> in,
                         std::span<double> out);

/// Deterministic chunked sum of f(i) over i in [0, n).
template <class F>
double indexed_sum(std::size_t n, F&& f) {
  const std::size_t nchunks = (n + kReduceChunk - 1) / kReduceChunk;
  if (nchunks <= 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f(i);
    return s;
  }
  std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kReduceChunk;
    const std::size_t hi = lo + kReduceChunk < n ? lo + kReduceChunk : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    partial[static_cast<std::size_t>(c)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

/// Parallel elementwise assignment: v[i] = f(i).
template <class F>
void indexed_fill(std::span<double> v, F&& f) {
  const long long n = static_cast<long long>(v.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
}

/// Parallel in-place update: v[i] = f(i, v[i]).
template <class F>
void indexed_update(std::span<double> v, F&& f) {
  const long long n = static_cast<long long>(v.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    v[u] = f(u, v[u]);
  }
}

}  // namespace fastspread::ops
