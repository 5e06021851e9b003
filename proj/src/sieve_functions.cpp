#include "sievekit/sieve_functions.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "sievekit/errors.hpp"

namespace sievekit::sieve {

namespace {

std::size_t lag_steps(double step) {
  if (!(step > 0.0) || step > 0.01) {
    throw ParameterError("sieve table step must lie in (0, 0.01]");
  }
  const double inv = 1.0 / step;
  const auto lag = static_cast<std::size_t>(std::llround(inv));
  if (std::abs(inv - static_cast<double>(lag)) > 1e-6 * inv) {
    throw ParameterError("sieve table step must divide 1");
  }
  return lag;
}

// sum_{k>=1} z^k / k^2 for 0 <= z <= 1/2 + small.
double dilog_series(double z) {
  double term = z;
  double sum = 0.0;
  for (int k = 1; k < 400; ++k) {
    const double add = term / (static_cast<double>(k) * k);
    sum += add;
    if (std::abs(add) < 1e-19) break;
    term *= z;
  }
  return sum;
}

}  // namespace

double exp_gamma() { return std::exp(kEulerGamma); }

double dilog(double x) {
  constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  if (x > 1.0) throw DomainError("dilog: argument must be <= 1");
  if (x == 1.0) return pi2_6;
  if (x == 0.0) return 0.0;
  if (x < -1.0) {
    // Inversion to (-1, 0).
    const double l = std::log(-x);
    return -pi2_6 - 0.5 * l * l - dilog(1.0 / x);
  }
  if (x < 0.0) {
    // Landen: z = x / (x - 1) lies in (0, 1/2].
    const double l = std::log1p(-x);
    return -dilog_series(x / (x - 1.0)) - 0.5 * l * l;
  }
  if (x <= 0.5) return dilog_series(x);
  return pi2_6 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x);
}

double log_ratio_integral(double x) {
  if (!(x >= 2.0)) throw DomainError("log_ratio_integral: x must be >= 2");
  // Antiderivative of log(v)/(1+v) is log(v) log(1+v) + Li_2(-v), v = t - 1.
  return std::log(x - 1.0) * std::log(x) + dilog(1.0 - x) +
         std::numbers::pi * std::numbers::pi / 12.0;
}

double F_closed_3_5(double s) { return 2.0 * exp_gamma() / s * (1.0 + log_ratio_integral(s - 1.0)); }

SieveFunctionTable SieveFunctionTable::build(double step, double s_max) {
  const std::size_t lag = lag_steps(step);
  if (!(s_max >= 6.0)) throw ParameterError("sieve table s_max must be >= 6");
  const double h = 1.0 / static_cast<double>(lag);
  const auto n = static_cast<std::size_t>(std::ceil(s_max * lag - 1e-9));
  const double two_eg = 2.0 * exp_gamma();

  SieveFunctionTable t;
  t.step_ = h;
  t.s_max_ = static_cast<double>(n) * h;
  t.F_.assign(n + 1, 0.0);
  t.f_.assign(n + 1, 0.0);
  std::vector<double> sF(n + 1, 0.0);
  std::vector<double> sf(n + 1, 0.0);

  const std::size_t i2 = 2 * lag;
  const std::size_t i3 = 3 * lag;
  t.F_[0] = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= std::min(n, i3); ++i) {
    t.F_[i] = two_eg / (static_cast<double>(i) * h);
    sF[i] = two_eg;
  }
  for (std::size_t i = i2 + 1; i <= n; ++i) {
    const double s = static_cast<double>(i) * h;
    sf[i] = sf[i - 1] + 0.5 * h * (t.F_[i - 1 - lag] + t.F_[i - lag]);
    if (i > i3) {
      sF[i] = sF[i - 1] + 0.5 * h * (t.f_[i - 1 - lag] + t.f_[i - lag]);
      t.F_[i] = sF[i] / s;
    }
    t.f_[i] = sf[i] / s;
  }

  // F and f agree to the trapezoid error (~1e-10) past s = 10, hence the slack
  constexpr double slack = 1e-9;
  for (std::size_t i = i2 + 1; i <= n; ++i) {
    if (t.F_[i] > t.F_[i - 1] + slack || t.f_[i] < t.f_[i - 1] - slack ||
        t.F_[i] - t.f_[i] > t.F_[i - 1] - t.f_[i - 1] + slack || t.f_[i] < 0.0 || t.F_[i] < t.f_[i] - slack) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "sieve table lost monotonicity at s = " << static_cast<double>(i) * h << " F " << t.F_[i-1] << " " << t.F_[i] << " f " << t.f_[i-1] << " " << t.f_[i];
      throw InternalError(msg.str());
    }
  }
  return t;
}

double SieveFunctionTable::interp(const std::vector<double>& v, double s) const {
  if (!(s >= step_) || s > s_max_ + 1e-12) throw DomainError("sieve table: s outside [step, s_max]");
  const double pos = s / step_;
  auto i = static_cast<std::size_t>(pos);
  if (i >= v.size() - 1) return v.back();
  const double frac = pos - static_cast<double>(i);
  return v[i] + frac * (v[i + 1] - v[i]);
}

double SieveFunctionTable::F_interp(double s) const { return interp(F_, s); }
double SieveFunctionTable::f_interp(double s) const { return interp(f_, s); }

void SieveFunctionTable::write_csv(std::ostream& out) const {
  out << "s,F,f\n";
  out.precision(17);
  for (std::size_t i = 1; i < F_.size(); ++i) {
    out << static_cast<double>(i) * step_ << ',' << F_[i] << ',' << f_[i] << '\n';
  }
}

SieveFunctionTable SieveFunctionTable::load_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("s,F,f", 0) != 0) {
    throw ParameterError("sieve table csv: missing header 's,F,f'");
  }
  std::vector<double> s_col;
  SieveFunctionTable t;
  t.F_.push_back(std::numeric_limits<double>::infinity());
  t.f_.push_back(0.0);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double s = 0, F = 0, f = 0;
    char c1 = 0, c2 = 0;
    if (!(row >> s >> c1 >> F >> c2 >> f) || c1 != ',' || c2 != ',') {
      throw ParameterError("sieve table csv: malformed row '" + line + "'");
    }
    s_col.push_back(s);
    t.F_.push_back(F);
    t.f_.push_back(f);
  }
  if (s_col.size() < 2) throw ParameterError("sieve table csv: too few rows");
  t.step_ = s_col[0];
  lag_steps(t.step_);
  for (std::size_t i = 0; i < s_col.size(); ++i) {
    if (std::abs(s_col[i] - static_cast<double>(i + 1) * t.step_) > 1e-9) {
      throw ParameterError("sieve table csv: rows are not on a uniform grid from step");
    }
  }
  t.s_max_ = s_col.back();
  return t;
}

double eval_F(double s, const SieveFunctionTable& table) {
  if (!(s > 0.0) || s > table.s_max()) throw DomainError("F: s must lie in (0, s_max]");
  if (s <= 3.0) return 2.0 * exp_gamma() / s;
  if (s <= 5.0) return F_closed_3_5(s);
  return table.F_interp(s);
}

double eval_f(double s, const SieveFunctionTable& table) {
  if (!(s > 0.0) || s > table.s_max()) throw DomainError("f: s must lie in (0, s_max]");
  if (s <= 2.0) return 0.0;
  if (s <= 4.0) return 2.0 * exp_gamma() * std::log(s - 1.0) / s;
  return table.f_interp(s);
}

BuchstabTable BuchstabTable::build(double step, double u_max) {
  const std::size_t lag = lag_steps(step);
  if (!(u_max >= 12.0)) throw ParameterError("Buchstab table u_max must be >= 12");
  const double h = 1.0 / static_cast<double>(lag);
  const auto n = static_cast<std::size_t>(std::ceil((u_max - 1.0) * lag - 1e-9));

  BuchstabTable t;
  t.step_ = h;
  t.u_max_ = 1.0 + static_cast<double>(n) * h;
  t.w_.assign(n + 1, 0.0);
  std::vector<double> uw(n + 1, 1.0);
  for (std::size_t j = 0; j <= std::min(n, lag); ++j) {
    t.w_[j] = 1.0 / (1.0 + static_cast<double>(j) * h);
  }
  for (std::size_t j = lag + 1; j <= n; ++j) {
    uw[j] = uw[j - 1] + 0.5 * h * (t.w_[j - 1 - lag] + t.w_[j - lag]);
    t.w_[j] = uw[j] / (1.0 + static_cast<double>(j) * h);
    if (t.w_[j] < 0.5 || t.w_[j] > 1.0) throw InternalError("Buchstab table left [1/2, 1]");
  }
  return t;
}

double BuchstabTable::w_interp(double u) const {
  if (!(u >= 1.0) || u > u_max_ + 1e-12) throw DomainError("w: u outside [1, u_max]");
  const double pos = (u - 1.0) / step_;
  auto j = static_cast<std::size_t>(pos);
  if (j >= w_.size() - 1) return w_.back();
  const double frac = pos - static_cast<double>(j);
  return w_[j] + frac * (w_[j + 1] - w_[j]);
}

void BuchstabTable::write_csv(std::ostream& out, double u_max, double out_step) const {
  if (!(out_step > 0.0)) throw ParameterError("Buchstab csv: step must be positive");
  out << "u,w\n";
  out.precision(17);
  const double hi = std::min(u_max, u_max_);
  const auto count = static_cast<long>(std::floor((hi - 1.0) / out_step + 1e-9));
  for (long k = 0; k <= count; ++k) {
    const double u = 1.0 + static_cast<double>(k) * out_step;
    out << u << ',' << buchstab_w(u, *this) << '\n';
  }
}

double buchstab_w(double u, const BuchstabTable& table) {
  if (!(u >= 1.0) || u > table.u_max()) throw DomainError("w: u must lie in [1, u_max]");
  if (u <= 2.0) return 1.0 / u;
  return table.w_interp(u);
}

double selberg_sigma2(double s) {
  if (!(s > 0.0)) throw DomainError("sigma2: s must be positive");
  if (s > 2.0) throw BranchError("sigma2: branch not defined for s > 2");
  return 8.0 * std::exp(2.0 * kEulerGamma) / (s * s);
}

SieveTables SieveTables::build(double step, double s_max) {
  return SieveTables{SieveFunctionTable::build(step, s_max), BuchstabTable::build(step, s_max)};
}

}  // namespace sievekit::sieve
