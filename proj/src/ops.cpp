#include "fastspread/ops.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fastspread::ops {

namespace serial {

double sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double min(std::span<const double> v) {
  double m = v.empty() ? 0.0 : v[0];
  for (double x : v) m = std::min(m, x);
  return m;
}

void scale(std::span<double> v, double a) {
  for (double& x : v) x *= a;
}

void axpy(std::span<double> y, double a, std::span<const double> x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void multiply(std::span<double> out, std::span<const double> a,
              std::span<const double> b) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void apply_axis_operator(const GridSpec& grid, int axis,
                         std::span<const double> M, std::span<const double> in,
                         std::span<double> out) {
  const int n = grid.n[axis];
  const std::size_t stride = grid.stride(axis);
  const std::size_t block = stride * static_cast<std::size_t>(n);
  const std::size_t nouter = grid.size() / block;
  std::vector<double> line(n), res(n);
  for (std::size_t o = 0; o < nouter; ++o) {
    for (std::size_t s = 0; s < stride; ++s) {
      const std::size_t base = o * block + s;
      for (int j = 0; j < n; ++j) line[j] = in[base + j * stride];
      for (int i = 0; i < n; ++i) {
        const double* row = M.data() + static_cast<std::size_t>(i) * n;
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += row[j] * line[j];
        res[i] = acc;
      }
      for (int i = 0; i < n; ++i) out[base + i * stride] = res[i];
    }
  }
}

}  // namespace serial

double sum(std::span<const double> v) {
  return indexed_sum(v.size(), [&](std::size_t i) { return v[i]; });
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  const long long n = static_cast<long long>(v.size());
#pragma omp parallel for schedule(static) reduction(max : m)
  for (long long i = 0; i < n; ++i)
    m = std::max(m, std::abs(v[static_cast<std::size_t>(i)]));
  return m;
}

double min(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double m = v[0];
  const long long n = static_cast<long long>(v.size());
#pragma omp parallel for schedule(static) reduction(min : m)
  for (long long i = 0; i < n; ++i)
    m = std::min(m, v[static_cast<std::size_t>(i)]);
  return m;
}

void scale(std::span<double> v, double a) {
  indexed_update(v, [a](std::size_t, double x) { return a * x; });
}

void axpy(std::span<double> y, double a, std::span<const double> x) {
  const long long n = static_cast<long long>(y.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    y[u] += a * x[u];
  }
}

void multiply(std::span<double> out, std::span<const double> a,
              std::span<const double> b) {
  const long long n = static_cast<long long>(out.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    out[u] = a[u] * b[u];
  }
}

void apply_axis_operator(const GridSpec& grid, int axis,
                         std::span<const double> M, std::span<const double> in,
                         std::span<double> out) {
  const int n = grid.n[axis];
  const std::size_t stride = grid.stride(axis);
  const std::size_t block = stride * static_cast<std::size_t>(n);
  const std::size_t nlines = grid.size() / static_cast<std::size_t>(n);
#pragma omp parallel
  {
    std::vector<double> line(n), res(n);
#pragma omp for schedule(static)
    for (long long l = 0; l < static_cast<long long>(nlines); ++l) {
      const std::size_t o = static_cast<std::size_t>(l) / stride;
      const std::size_t s = static_cast<std::size_t>(l) % stride;
      const std::size_t base = o * block + s;
      for (int j = 0; j < n; ++j) line[j] = in[base + j * stride];
      for (int i = 0; i < n; ++i) {
        const double* row = M.data() + static_cast<std::size_t>(i) * n;
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += row[j] * line[j];
        res[i] = acc;
      }
      for (int i = 0; i < n; ++i) out[base + i * stride] = res[i];
    }
  }
}

}  // namespace fastspread::ops
