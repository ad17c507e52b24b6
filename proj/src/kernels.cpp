#include "spikectl/kernels.hpp"

#include <algorithm>
#include <limits>

namespace spikectl::kernels {

namespace {

double gauss_panel(const ScalarFn& f, double lo, double width) {
  const double half = 0.5 * width;
  const double mid = lo + half;
  double s = 0.0;
  for (int k = 0; k < 8; ++k) s += kGaussWeights[k] * f(mid + half * kGaussNodes[k]);
  return half * s;
}

}  // namespace

std::vector<double> panel_integrals_serial(const ScalarFn& f, double a, double width,
                                           std::size_t panels) {
  std::vector<double> out(panels);
  for (std::size_t k = 0; k < panels; ++k) out[k] = gauss_panel(f, a + static_cast<double>(k) * width, width);
  return out;
}

std::vector<double> panel_integrals_omp(const ScalarFn& f, double a, double width,
                                        std::size_t panels) {
  std::vector<double> out(panels);
  const long n = static_cast<long>(panels);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = gauss_panel(f, a + static_cast<double>(k) * width, width);
  }
  return out;
}

double ordered_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double max_excess_serial(std::size_t count, const std::function<double(std::size_t)>& excess) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) worst = std::max(worst, excess(i));
  return worst;
}

double max_excess_omp(std::size_t count, const std::function<double(std::size_t)>& excess) {
  double worst = -std::numeric_limits<double>::infinity();
  const long n = static_cast<long>(count);
#pragma omp parallel for reduction(max : worst)
  for (long i = 0; i < n; ++i) worst = std::max(worst, excess(static_cast<std::size_t>(i)));
  return worst;
}

}  // namespace spikectl::kernels
