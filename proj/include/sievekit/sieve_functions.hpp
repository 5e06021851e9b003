#pragma once

// Special functions of sieve theory: the linear-sieve pair (F, f), the Buchstab
// function w and the dimension-2 Selberg factor.

#include <iosfwd>
#include <span>
#include <vector>

namespace sievekit::sieve {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// e^gamma.
double exp_gamma();

/// Li_2(x) for real x <= 1.
double dilog(double x);

/// Upper (F) and lower (f) linear sieve functions sampled on s = i * step, i = 0..n.
///
/// F(s) = 2e^gamma / s on (0, 3] and f(s) = 0 on (0, 2]; beyond that the pair solves
/// (sF)' = f(s-1), (sf)' = F(s-1) by the trapezoid rule on the grid. step must divide 1
/// so the lag-1 shift lands on grid points.
class SieveFunctionTable {
 public:
  static SieveFunctionTable build(double step, double s_max);
  static SieveFunctionTable load_csv(std::istream& in);

  double step() const { return step_; }
  double s_max() const { return s_max_; }
  double gamma_const() const { return kEulerGamma; }
  std::span<const double> F_values() const { return F_; }
  std::span<const double> f_values() const { return f_; }

  /// Linear interpolation of the sampled values, valid on [step, s_max].
  double F_interp(double s) const;
  double f_interp(double s) const;

  void write_csv(std::ostream& out) const;

 private:
  SieveFunctionTable() = default;
  double interp(const std::vector<double>& v, double s) const;

  double step_ = 0.0;
  double s_max_ = 0.0;
  std::vector<double> F_;
  std::vector<double> f_;
};

/// Buchstab's w(u) sampled on u = 1 + j * step.
class BuchstabTable {
 public:
  static BuchstabTable build(double step, double u_max);

  double step() const { return step_; }
  double u_max() const { return u_max_; }
  std::span<const double> w_values() const { return w_; }

  double w_interp(double u) const;
  void write_csv(std::ostream& out, double u_max, double out_step) const;

 private:
  BuchstabTable() = default;
  double step_ = 0.0;
  double u_max_ = 0.0;
  std::vector<double> w_;
};

inline constexpr double kDefaultStep = 1e-4;
inline constexpr double kDefaultSMax = 14.0;

/// F on (0, s_max]: closed forms on (0, 5], table beyond.
double eval_F(double s, const SieveFunctionTable& table);
/// f on (0, s_max]: 0 on (0, 2], 2e^gamma log(s - 1) / s on [2, 4], table beyond.
double eval_f(double s, const SieveFunctionTable& table);

/// int_2^x log(t - 1) / t dt for x in [2, 4], via the dilogarithm.
double log_ratio_integral(double x);

/// Closed form of F on [3, 5]: (2e^gamma / s)(1 + int_2^{s-1} log(t - 1) / t dt).
double F_closed_3_5(double s);

/// w(u) on [1, u_max]: 1/u on [1, 2], table beyond.
double buchstab_w(double u, const BuchstabTable& table);

/// The dimension-2 Selberg factor 8 e^{2 gamma} / s^2 on 0 < s <= 2 (the reciprocal of
/// sigma_2(s) in Selberg's normalisation). Throws BranchError for s > 2.
double selberg_sigma2(double s);

/// Both tables used by the verifiers.
struct SieveTables {
  SieveFunctionTable linear;
  BuchstabTable buchstab;

  static SieveTables build(double step = kDefaultStep, double s_max = kDefaultSMax);
};

}  // namespace sievekit::sieve
