#include <cmath>

#include "sievekit/empirical_lab.hpp"
#include "sievekit/errors.hpp"
#include "sievekit/numerics.hpp"

namespace sievekit::lab {

namespace {

double psi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Smooth step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = psi(t);
  return a / (a + psi(1.0 - t));
}

}  // namespace

WeightMode parse_weight_mode(const std::string& name) {
  if (name == "sharp") return WeightMode::Sharp;
  if (name == "bump") return WeightMode::Bump;
  if (name == "plateau") return WeightMode::Plateau;
  throw ParameterError("unknown weight mode '" + name + "' (sharp, bump, plateau)");
}

std::string to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::Sharp: return "sharp";
    case WeightMode::Bump: return "bump";
    case WeightMode::Plateau: return "plateau";
  }
  return "sharp";
}

SmoothWeight::SmoothWeight(WeightMode mode, double eps) : mode_(mode), epsilon0_(eps) {
  if (mode_ == WeightMode::Plateau && !(eps > 0.0 && eps <= 0.5)) {
    throw ParameterError("plateau weight: epsilon0 must lie in (0, 1/2]");
  }
  if (mode_ != WeightMode::Sharp) {
    const double breaks[] = {1.0 + eps, 2.0 - eps};
    mass_ = num::adaptive_simpson([this](double x) { return (*this)(x); }, 1.0, 2.0, breaks, 1e-10).value;
  }
}

SmoothWeight SmoothWeight::sharp() { return SmoothWeight(WeightMode::Sharp, 0.0); }
SmoothWeight SmoothWeight::bump() { return SmoothWeight(WeightMode::Bump, 0.0); }
SmoothWeight SmoothWeight::plateau(double epsilon0) { return SmoothWeight(WeightMode::Plateau, epsilon0); }
SmoothWeight SmoothWeight::make(WeightMode mode, double epsilon0) {
  return SmoothWeight(mode, mode == WeightMode::Plateau ? epsilon0 : 0.0);
}

double SmoothWeight::operator()(double x) const {
  switch (mode_) {
    case WeightMode::Sharp:
      return x > 1.0 && x <= 2.0 ? 1.0 : 0.0;
    case WeightMode::Bump:
      if (!(x > 1.0 && x < 2.0)) return 0.0;
      return std::exp(-1.0 / ((x - 1.0) * (2.0 - x)));
    case WeightMode::Plateau:
      if (!(x > 1.0 && x < 2.0)) return 0.0;
      if (x < 1.0 + epsilon0_) return smooth_step((x - 1.0) / epsilon0_);
      if (x > 2.0 - epsilon0_) return smooth_step((2.0 - x) / epsilon0_);
      return 1.0;
  }
  return 0.0;
}

double SmoothWeight::at(u64 n, u64 X) const {
  if (mode_ == WeightMode::Sharp) return n > X && n <= 2 * X ? 1.0 : 0.0;
  return (*this)(static_cast<double>(n) / static_cast<double>(X));
}

void check_window(u64 X, const PrimeTable& primes) {
  if (X == 0) throw ParameterError("X must be positive");
  if (X > kMaxX) throw OverflowGuardError("X exceeds 1e9");
  if (2 * X > primes.limit()) throw ParameterError("prime table must reach 2X");
}

}  // namespace sievekit::lab
