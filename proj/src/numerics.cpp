#include "sievekit/numerics.hpp"

#include <algorithm>
#include <sstream>

#include "sievekit/errors.hpp"

namespace sievekit::num {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  int max_depth;
  bool depth_limited = false;
  double err = 0.0;
};

double simpson_rec(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= st.max_depth) {
    st.depth_limited = true;
    st.err += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (std::abs(delta) <= 15.0 * tol) {
    st.err += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_rec(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_rec(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_depth) {
  QuadratureResult res;
  res.tolerance = abs_tol;
  if (a == b) return res;
  if (!(abs_tol > 0.0)) throw ParameterError("adaptive_simpson: tolerance must be positive");
  const double sign = a < b ? 1.0 : -1.0;
  if (b < a) std::swap(a, b);
  SimpsonState st{f, max_depth};
  // Start from four panels so that symmetric integrands cannot fool the first estimate.
  constexpr int kPanels = 4;
  const double h = (b - a) / kPanels;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + i * h;
    const double hi = i + 1 == kPanels ? b : a + (i + 1) * h;
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
    total += simpson_rec(st, lo, hi, flo, fm, fhi, whole, abs_tol / kPanels, 0);
  }
  res.value = sign * total;
  res.error_estimate = st.err;
  res.depth_limited = st.depth_limited;
  return res;
}

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  std::span<const double> breakpoints, double abs_tol,
                                  int max_depth) {
  if (a == b) return QuadratureResult{0.0, 0.0, abs_tol, false};
  const double sign = a < b ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  std::vector<double> cuts{lo};
  for (double p : breakpoints) {
    if (p > lo && p < hi) cuts.push_back(p);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadratureResult res;
  res.tolerance = abs_tol;
  const double piece_tol = abs_tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto piece = adaptive_simpson(f, cuts[i], cuts[i + 1], piece_tol, max_depth);
    res.value += piece.value;
    res.error_estimate += piece.error_estimate;
    res.depth_limited = res.depth_limited || piece.depth_limited;
  }
  res.value *= sign;
  return res;
}

CheckedIntegral checked_integral(const std::function<double(double)>& f, double a, double b,
                                 std::span<const double> breakpoints, double fine_tol,
                                 double coarse_tol, double max_discrepancy) {
  CheckedIntegral out;
  out.tolerance = fine_tol;
  out.value = adaptive_simpson(f, a, b, breakpoints, fine_tol).value;
  out.coarse_value = adaptive_simpson(f, a, b, breakpoints, coarse_tol).value;
  if (!(out.discrepancy() <= max_discrepancy)) {
    std::ostringstream msg;
    msg << "quadrature at tolerances " << fine_tol << " and " << coarse_tol << " disagree by "
        << out.discrepancy() << " on [" << a << ", " << b << "]";
    throw InternalError(msg.str());
  }
  return out;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
              int max_iter) {
  if (!(lo < hi)) throw ParameterError("bisect: empty bracket");
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    std::ostringstream msg;
    msg << "bisect: no sign change on [" << lo << ", " << hi << "]";
    throw ParameterError(msg.str());
  }
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 16;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace sievekit::num
