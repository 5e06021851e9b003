#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace sievekit::num {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double tolerance = 0.0;
  bool depth_limited = false;
};

inline constexpr int kMaxSimpsonDepth = 48;

/// Adaptive Simpson with Richardson correction and an absolute tolerance.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_depth = kMaxSimpsonDepth);

/// Adaptive Simpson over [a, b] split at the given interior points (points outside are ignored).
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  std::span<const double> breakpoints, double abs_tol,
                                  int max_depth = kMaxSimpsonDepth);

/// Integral evaluated at two tolerances; throws InternalError when the two disagree by more
/// than `max_discrepancy`.
struct CheckedIntegral {
  double value = 0.0;
  double coarse_value = 0.0;
  double tolerance = 0.0;
  double discrepancy() const { return std::abs(value - coarse_value); }
};

inline constexpr double kFineTolerance = 1e-9;
inline constexpr double kCoarseTolerance = 1e-6;

CheckedIntegral checked_integral(const std::function<double(double)>& f, double a, double b,
                                 std::span<const double> breakpoints = {},
                                 double fine_tol = kFineTolerance,
                                 double coarse_tol = kCoarseTolerance,
                                 double max_discrepancy = 1e-5);

/// Bisection on a validated sign-change bracket. Stops once the bracket is narrower than `tol`.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12,
              int max_iter = 400);

/// Fixed-order pairwise summation.
double pairwise_sum(std::span<const double> values);

/// Evaluates fn(i) for i in [0, n) on up to `threads` workers; result slot i always holds fn(i)
/// so the output does not depend on the thread count.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, unsigned threads, Fn&& fn) {
  std::vector<T> out(n);
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
    });
  }
  pool.clear();
  return out;
}

}  // namespace sievekit::num
