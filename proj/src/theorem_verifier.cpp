#include "sievekit/theorem_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "sievekit/errors.hpp"
#include "sievekit/numerics.hpp"
#include "sievekit/prime_toolkit.hpp"

namespace sievekit::verify {

namespace {

using sieve::eval_F;
using sieve::exp_gamma;

constexpr std::int64_t kGamma12Denominator = 22072;  // 4 * 89 * 62
static_assert(4 * 89 * 62 == kGamma12Denominator);
static_assert(88288 == 4 * kGamma12Denominator);

double gamma12_quadratic(double theta) { return 8281.0 - 16198.0 * theta + 7921.0 * theta * theta; }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

// Antiderivative contribution of (2c)/(a - b theta) on [lo, hi].
double log_piece(const GammaPiece& g, double lo, double hi) {
  if (hi <= lo) return 0.0;
  const double a = static_cast<double>(g.a);
  const double b = static_cast<double>(g.b);
  return 2.0 * static_cast<double>(g.c) / b * std::log((a - b * lo) / (a - b * hi));
}

}  // namespace

Rational GammaPiece::at(Rational theta) const {
  std::int64_t num = a * theta.den - b * theta.num;
  std::int64_t den = c * theta.den;
  const std::int64_t g = std::gcd(num, den);
  if (g != 0) {
    num /= g;
    den /= g;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

double gamma_theta(double theta) {
  if (!(theta >= kThetaStart.value()) || !(theta < kThetaEnd.value())) {
    throw DomainError("gamma_theta: theta must lie in [1/2, 16/17)");
  }
  if (theta < kBreak1.value()) return kGammaPieces[0].at(theta);
  if (theta < kBreak2.value()) return kGammaPieces[1].at(theta);
  return kGammaPieces[2].at(theta);
}

double eta_theta(double theta) {
  if (!(theta >= kThetaStart.value()) || !(theta < kEtaLimit.value())) {
    throw DomainError("eta_theta: theta must lie in [1/2, 112/131)");
  }
  return kGammaPieces[0].at(theta);
}

Theorem2Total theorem2_total(double vartheta) {
  if (!(vartheta >= kThetaStart.value()) || !(vartheta < kThetaEnd.value())) {
    throw DomainError("theorem2_total: vartheta must lie in [1/2, 16/17)");
  }
  const double b0 = kThetaStart.value();
  const double b1 = kBreak1.value();
  const double b2 = kBreak2.value();
  Theorem2Total t;
  t.antiderivative = log_piece(kGammaPieces[0], b0, std::min(vartheta, b1)) +
                     log_piece(kGammaPieces[1], b1, std::min(vartheta, b2)) +
                     log_piece(kGammaPieces[2], b2, vartheta);
  const double breaks[] = {b1, b2};
  t.quadrature =
      num::adaptive_simpson([](double th) { return 2.0 / gamma_theta(th); }, b0, vartheta, breaks,
                            num::kFineTolerance)
          .value;
  if (std::abs(t.antiderivative - t.quadrature) > 1e-6) {
    throw InternalError("theorem2_total: antiderivative and quadrature disagree at vartheta = " +
                        fmt(vartheta));
  }
  return t;
}

TheoremReport theorem2_integral(double vartheta) {
  if (!(vartheta >= kBreak2.value()) || !(vartheta < kThetaEnd.value())) {
    throw DomainError("theorem2_integral: vartheta must lie in [32/41, 16/17)");
  }
  const auto total = theorem2_total(vartheta);
  TheoremReport r;
  r.name = "theorem2_integral";
  r.inputs["vartheta"] = vartheta;
  r.put("total", total.antiderivative, 0.0);
  r.put("total_quadrature", total.quadrature, num::kFineTolerance);
  r.put("route_discrepancy", std::abs(total.antiderivative - total.quadrature));
  r.put("bound", 1.5);
  r.set_margin(1.5 - total.antiderivative);
  r.note("margin certifies the limiting inequality; o(1) terms are not quantified");
  return r;
}

double find_max_vartheta() {
  const double lo = kBreak2.value();
  const double hi = std::nextafter(kThetaEnd.value(), 0.0);
  return num::bisect([](double v) { return theorem2_total(v).antiderivative - 1.5; }, lo, hi, 1e-12);
}

Gamma12Optimum optimize_gamma12(double theta) {
  if (!(theta > 0.0)) throw DomainError("optimize_gamma12: theta must be positive");
  if (theta >= kGamma12Limit.value()) {
    throw InfeasibleError("optimize_gamma12: interior optimum violates gamma1 + theta < 112/131 for theta >= 8015/11659");
  }
  Gamma12Optimum out;
  out.gamma1 = (91.0 - 89.0 * theta) / 178.0;
  out.gamma2 = (91.0 - 89.0 * (out.gamma1 + theta)) / 62.0;
  const double d = 91.0 - 89.0 * theta;
  out.product = d * d / static_cast<double>(kGamma12Denominator);

  // Zooming grid search over the feasible segment.
  auto objective = [theta](double g1) { return g1 * (91.0 - 89.0 * (g1 + theta)) / 62.0; };
  double lo = std::max(0.0, 0.5 - theta);
  double hi = std::min(kEtaLimit.value() - theta, (91.0 - 89.0 * theta) / 89.0);
  constexpr int kCells = 200;
  double best = lo;
  for (int round = 0; round < 60 && hi - lo > 1e-15; ++round) {
    const double h = (hi - lo) / kCells;
    double best_val = -1.0;
    for (int k = 0; k <= kCells; ++k) {
      const double g1 = lo + k * h;
      const double v = objective(g1);
      if (v > best_val) {
        best_val = v;
        best = g1;
      }
    }
    lo = std::max(lo, best - 2 * h);
    hi = std::min(hi, best + 2 * h);
  }
  out.grid_gamma1 = best;
  out.grid_product = objective(best);
  return out;
}

double solve_delta() {
  auto g = [](double d) { return 1.0 / (1.0 - 2.0 * d) - kGamma12Denominator / gamma12_quadratic(d); };
  return num::bisect(g, 1e-9, 0.5 - 1e-9, 1e-14);
}

double solve_delta_quadratic() {
  const DeltaQuadratic q;
  const double a = static_cast<double>(q.a);
  const double b = static_cast<double>(q.b);
  const double c = static_cast<double>(q.c);
  // Stable form of the positive root: 2c / (-b - sqrt(b^2 - 4ac)).
  return 2.0 * c / (-b - std::sqrt(b * b - 4.0 * a * c));
}

WeightedSieveParams WeightedSieveParams::make(double alpha, double beta, int r) {
  return make(alpha, beta, r, std::min(solve_delta(), beta));
}

WeightedSieveParams WeightedSieveParams::make(double alpha, double beta, int r, double delta) {
  WeightedSieveParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.r = r;
  p.delta = delta;
  p.validate();
  return p;
}

void WeightedSieveParams::validate() const {
  if (r < 1) throw ParameterError("weighted sieve: r must be >= 1");
  if (!(alpha > 0.0 && alpha < delta && delta <= beta && beta < 1.0)) {
    throw ParameterError("weighted sieve: need 0 < alpha < delta <= beta < 1");
  }
  if (!(beta > 2.0 / (r + 1))) throw ParameterError("weighted sieve: need beta > 2/(r+1)");
  if (!(eta() > 0.0)) throw ParameterError("weighted sieve: eta must be positive");
  if (!(beta < kBetaHypothesis)) throw HypothesisError("weighted sieve: requires beta < 0.68");
}

double c1_integral(const WeightedSieveParams& params, const sieve::SieveFunctionTable& table) {
  const double a = params.alpha;
  const double b = params.beta;
  if (params.delta <= a) return 0.0;
  auto integrand = [&](double th) { return (1.0 / th - 1.0 / b) * eval_F((1.0 - 2.0 * th) / (2.0 * a), table); };
  const double breaks[] = {(1.0 - 6.0 * a) / 2.0, (1.0 - 10.0 * a) / 2.0, (1.0 - 4.0 * a) / 2.0};
  return num::checked_integral(integrand, a, params.delta, breaks, 1e-10, 1e-7, 1e-6).value;
}

double c2_integral(const WeightedSieveParams& params) {
  const double b = params.beta;
  if (!(b < kBetaHypothesis)) throw HypothesisError("c2: requires beta < 0.68");
  const double d = params.delta;
  if (d >= b) return 0.0;
  if (d < solve_delta() - 1e-12) throw ParameterError("c2: delta below the crossover root");
  auto integrand = [b](double th) { return (1.0 / th - 1.0 / b) * 88288.0 / gamma12_quadratic(th); };
  const double integral = num::checked_integral(integrand, d, b, {}, 1e-10, 1e-7, 1e-6).value;
  return exp_gamma() * params.alpha * integral;
}

CTerms compute_C_terms(const WeightedSieveParams& params, const sieve::SieveFunctionTable& table) {
  params.validate();
  CTerms t;
  t.eta = params.eta();
  t.f_term = sieve::eval_f(1.0 / (2.0 * params.alpha), table);
  t.c1 = c1_integral(params, table);
  t.c2 = c2_integral(params);
  t.C = t.f_term - t.c1 / t.eta - t.c2 / t.eta;
  return t;
}

TheoremReport compute_C(const WeightedSieveParams& params, const sieve::SieveFunctionTable& table) {
  const CTerms t = compute_C_terms(params, table);
  TheoremReport r;
  r.name = "compute_C";
  r.inputs["alpha"] = params.alpha;
  r.inputs["beta"] = params.beta;
  r.inputs["delta"] = params.delta;
  r.inputs["r"] = params.r;
  r.put("eta", t.eta);
  r.put("f_term", t.f_term, table.step() * table.step());
  r.put("c1", t.c1, 1e-10);
  r.put("c2", t.c2, 1e-10);
  double C = t.C;

  if (std::abs(params.alpha - 1.0 / 12.0) < 1e-15 && params.delta >= 0.25) {
    // With alpha = 1/12 the argument 6(1 - 2 theta) of F runs through [3,5] on
    // [1/12, 1/4] and through [1,3] on [1/4, delta].
    const double b = params.beta;
    auto outer = [b](double th) {
      return (1.0 / th - 1.0 / b) * (1.0 + sieve::log_ratio_integral(6.0 * (1.0 - 2.0 * th) - 1.0)) /
             (1.0 - 2.0 * th);
    };
    auto middle = [b](double th) { return (1.0 / th - 1.0 / b) / (1.0 - 2.0 * th); };
    auto tail = [b](double th) {
      return (1.0 / th - 1.0 / b) * static_cast<double>(kGamma12Denominator) / gamma12_quadratic(th);
    };
    const double i1 = num::checked_integral(outer, 1.0 / 12.0, 0.25, {}, 1e-10, 1e-7, 1e-6).value;
    const double i2 = num::checked_integral(middle, 0.25, params.delta, {}, 1e-10, 1e-7, 1e-6).value;
    const double i3 = params.delta < b
                          ? num::checked_integral(tail, params.delta, b, {}, 1e-10, 1e-7, 1e-6).value
                          : 0.0;
    const double explicit_C = t.f_term - exp_gamma() / (3.0 * t.eta) * (i1 + i2 + i3);
    r.put("C_generic", t.C, 1e-9);
    r.put("C_explicit_split", explicit_C, 1e-9);
    if (std::abs(explicit_C - t.C) > 1e-7) {
      throw InternalError("compute_C: explicit split and generic quadrature disagree");
    }
    C = explicit_C;
  }
  r.put("C", C, 1e-9);
  r.set_margin(C);
  r.note("margin certifies the limiting inequality; o(1) terms are not quantified");
  return r;
}

BetaCurve optimize_beta(int r, double alpha, const sieve::SieveFunctionTable& table, unsigned threads) {
  if (r < 1) throw ParameterError("optimize_beta: r must be >= 1");
  const double eta_floor = 2.0 / (r + 1);
  const double delta_root = solve_delta();
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double beta = kBetaGridLo + k * kBetaGridStep;
    if (beta >= kBetaHypothesis - 1e-12) break;
    if (beta > eta_floor && beta > alpha) grid.push_back(beta);
  }
  auto values = num::parallel_map<double>(grid.size(), threads, [&](std::size_t i) {
    const auto p = WeightedSieveParams::make(alpha, grid[i], r, std::min(delta_root, grid[i]));
    return compute_C_terms(p, table).C;
  });
  BetaCurve curve;
  curve.C_star = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    curve.points.push_back({grid[i], values[i]});
    if (values[i] > curve.C_star) {
      curve.C_star = values[i];
      curve.beta_star = grid[i];
    }
  }
  return curve;
}

DartygeTerms dartyge_terms(double u, double theta0, const sieve::SieveTables& tables, Sigma2Policy policy) {
  if (!(u > 1.0 && u <= 13.0)) throw DomainError("dartyge: u must lie in (1, 13]");
  if (!(theta0 > kThetaEnd.value() && theta0 < 1.0)) throw DomainError("dartyge: theta0 must lie in (16/17, 1)");
  const auto& F_table = tables.linear;
  DartygeTerms t;

  // Kinks of F(u gamma(theta)) where the argument crosses 3 or 5.
  std::vector<double> breaks{kBreak1.value(), kBreak2.value()};
  for (const auto& g : kGammaPieces) {
    for (double s : {3.0, 5.0}) {
      breaks.push_back((static_cast<double>(g.a) - static_cast<double>(g.c) * s / u) / static_cast<double>(g.b));
    }
  }
  t.brun_titchmarsh_quadratic =
      num::checked_integral(
          [&](double th) {
            // the closed right end 16/17 is only a limit of gamma's domain
            const double g = th < kThetaEnd.value() ? gamma_theta(th) : kGammaPieces[2].at(th);
            return eval_F(u * g, F_table);
          },
                            kThetaStart.value(), kThetaEnd.value(), breaks)
          .value;

  const double classical_breaks[] = {1.0 - 3.0 / u, 1.0 - 5.0 / u};
  t.brun_titchmarsh_classical =
      num::checked_integral([&](double th) { return eval_F(u * (1.0 - th), F_table); }, kThetaEnd.value(),
                            theta0, classical_breaks)
          .value;

  const double cap = sieve::selberg_sigma2(2.0);
  auto selberg_integrand = [&](double th) {
    const double s = (2.0 / 3.0 - th / 2.0) * u;
    t.max_sigma2_argument = std::max(t.max_sigma2_argument, s);
    if (s > 2.0) {
      t.sigma2_contained = false;
      if (policy == Sigma2Policy::Strict) {
        std::ostringstream msg;
        msg << "dartyge: sigma2 argument (2/3 - theta/2) u = " << s << " exceeds 2 at theta = " << th
            << ", u = " << u;
        throw BranchError(msg.str());
      }
      return th * cap;
    }
    return th * sieve::selberg_sigma2(s);
  };
  t.selberg = u / exp_gamma() * num::checked_integral(selberg_integrand, theta0, 1.0).value;

  t.lhs = t.brun_titchmarsh_quadratic + t.brun_titchmarsh_classical + t.selberg;
  t.rhs = 1.5 * exp_gamma() * sieve::buchstab_w(u, tables.buchstab);
  return t;
}

TheoremReport dartyge_margin(double u, double theta0, const sieve::SieveTables& tables, Sigma2Policy policy) {
  const DartygeTerms t = dartyge_terms(u, theta0, tables, policy);
  TheoremReport r;
  r.name = "dartyge_margin";
  r.inputs["u"] = u;
  r.inputs["theta0"] = theta0;
  r.inputs["sigma2_policy"] = policy == Sigma2Policy::Strict ? "strict" : "monotone_cap";
  r.put("quadratic_brun_titchmarsh_integral", t.brun_titchmarsh_quadratic, num::kFineTolerance);
  r.put("classical_brun_titchmarsh_integral", t.brun_titchmarsh_classical, num::kFineTolerance);
  r.put("selberg_integral", t.selberg, num::kFineTolerance);
  r.put("lhs", t.lhs, num::kFineTolerance);
  r.put("rhs", t.rhs, tables.buchstab.step() * tables.buchstab.step());
  r.put("max_sigma2_argument", t.max_sigma2_argument);
  r.put("sigma2_contained", t.sigma2_contained ? 1.0 : 0.0);
  r.set_margin(t.rhs - t.lhs);
  if (!t.sigma2_contained) {
    r.note("sigma2 argument exceeded 2; bounded by the value at s = 2 (sigma2 is non-decreasing)");
  }
  r.note("margin certifies the limiting inequality; o(1) terms are not quantified");
  return r;
}

double find_min_u(double theta0, double grid_step, const sieve::SieveTables& tables) {
  if (!(grid_step > 0.0)) throw ParameterError("find_min_u: grid step must be positive");
  double last_positive = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0;; ++k) {
    const double u = kDartygeScanStart - k * grid_step;
    if (u <= 1.0) break;
    const auto t = dartyge_terms(u, theta0, tables, Sigma2Policy::MonotoneCap);
    if (!(t.rhs - t.lhs > 0.0)) break;
    last_positive = u;
  }
  return last_positive;
}

double compute_Hq(std::uint64_t q) {
  if (q == 2 || !arith::is_prime_u64(q)) throw DomainError("compute_Hq: q must be an odd prime");
  const double rq = static_cast<double>(arith::rho(q));
  const double qd = static_cast<double>(q);
  return (1.0 - rq / qd) / (1.0 - (1.0 + rq) / qd);
}

double compute_H(const std::map<std::uint64_t, double>& g1, const std::map<std::uint64_t, double>& g2) {
  std::set<std::uint64_t> support;
  for (const auto& [p, v] : g1) support.insert(p);
  for (const auto& [p, v] : g2) support.insert(p);
  auto value = [](const std::map<std::uint64_t, double>& g, std::uint64_t p) {
    const auto it = g.find(p);
    const double v = it == g.end() ? 0.0 : it->second;
    if (!(v >= 0.0 && v <= 0.5)) {
      throw HypothesisError("compute_H: densities must lie in [0, 1/2] at p = " + std::to_string(p));
    }
    return v;
  };
  double h = 1.0;
  for (std::uint64_t p : support) {
    if (!arith::is_prime_u64(p)) throw DomainError("compute_H: support must consist of primes");
    const double one_minus = 1.0 - 1.0 / static_cast<double>(p);
    h *= (1.0 - value(g1, p) - value(g2, p)) / (one_minus * one_minus);
  }
  return h;
}

FrakC compute_frak_c(std::uint64_t prime_limit) {
  if (prime_limit < 5) throw ParameterError("compute_frak_c: prime_limit must be >= 5");
  const auto table = arith::PrimeTable::build(prime_limit);
  // Products are accumulated as sums of logs for stability over millions of factors.
  double log_partial = 0.0;
  double log_smooth = 0.0;
  for (std::uint32_t p32 : table.primes()) {
    if (p32 == 2) continue;
    const double p = p32;
    const double chi = p32 % 4 == 1 ? 1.0 : -1.0;
    const double rho = 1.0 + chi;
    const double factor = (1.0 - rho / (p - 1.0)) * p / (p - 1.0);
    log_partial += std::log(factor);
    log_smooth += std::log(factor) - std::log1p(-chi / p);
  }
  FrakC out;
  out.partial = 2.0 * std::exp(log_partial);
  // prod_{p>2} (1 - chi(p)/p) = 1 / L(1, chi_4) = 4 / pi.
  out.accelerated = 2.0 * (4.0 / std::numbers::pi) * std::exp(log_smooth);
  return out;
}

double dimension_sum(std::uint64_t z) {
  const auto table = arith::PrimeTable::build(std::max<std::uint64_t>(z, 2));
  double s = 0.0;
  for (std::uint32_t p : table.primes()) {
    if (p > z) break;
    const double rho = p == 2 ? 1.0 : (p % 4 == 1 ? 2.0 : 0.0);
    s += rho * std::log(static_cast<double>(p)) / (p - 1.0);
  }
  return s;
}

double sieve_density_V(std::uint64_t z) {
  const auto table = arith::PrimeTable::build(std::max<std::uint64_t>(z, 2));
  double log_v = 0.0;
  for (std::uint32_t p : table.primes()) {
    if (p > z) break;
    if (p == 2 || p % 4 == 3) continue;
    log_v += std::log1p(-2.0 / (p - 1.0));
  }
  return std::exp(log_v);
}

}  // namespace sievekit::verify
