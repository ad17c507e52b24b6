#pragma once

// Data-parallel kernels. Each OpenMP kernel has a plain serial counterpart
// that the tests use as reference; both produce bitwise-identical results
// because partial results are stored per index and reduced in index order.

#include <cstddef>
#include <functional>
#include <vector>

namespace spikectl::kernels {

/// 8-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr double kGaussNodes[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr double kGaussWeights[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

using ScalarFn = std::function<double(double)>;

/// Integral of f over each panel [a + k w, a + (k+1) w], k < panels.
std::vector<double> panel_integrals_serial(const ScalarFn& f, double a, double width,
                                           std::size_t panels);
std::vector<double> panel_integrals_omp(const ScalarFn& f, double a, double width,
                                        std::size_t panels);

/// Sum in index order.
double ordered_sum(const std::vector<double>& v);

/// Runs job(i) for i in [0, count), storing results by index.
template <typename Result>
std::vector<Result> run_batch_serial(std::size_t count, const std::function<Result(std::size_t)>& job) {
  std::vector<Result> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = job(i);
  return out;
}

template <typename Result>
std::vector<Result> run_batch_omp(std::size_t count, const std::function<Result(std::size_t)>& job) {
  std::vector<Result> out(count);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = job(static_cast<std::size_t>(i));
  return out;
}

/// Max over samples of |value(i)| - bound(i); negative when every sample is inside the bound.
double max_excess_serial(std::size_t count, const std::function<double(std::size_t)>& excess);
double max_excess_omp(std::size_t count, const std::function<double(std::size_t)>& excess);

}  // namespace spikectl::kernels
