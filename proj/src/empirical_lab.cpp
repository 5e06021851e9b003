#include "sievekit/empirical_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "sievekit/errors.hpp"
#include "sievekit/numerics.hpp"
#include "sievekit/quadratic_sieve.hpp"

namespace sievekit::lab {

namespace {

using arith::CongruenceRootSet;
using arith::Factorization;

// Weighted sum over ascending n.
double weighted_sum(std::vector<u64>& ns, u64 X, const SmoothWeight& w) {
  std::sort(ns.begin(), ns.end());
  std::vector<double> terms;
  terms.reserve(ns.size());
  for (u64 n : ns) terms.push_back(w.at(n, X));
  return num::pairwise_sum(terms);
}

// First n > X with n = r (mod m).
u64 first_above(u64 X, u64 r, u64 m) {
  const u64 base = X + 1;
  return base + (r + m - base % m) % m;
}

bool is_rough(u64 n, double exponent_u, const PrimeTable& primes) {
  if (n == 1) return true;
  const double spf = primes.spf(n);
  return std::pow(spf, exponent_u) > static_cast<double>(n);
}

double relative_gap(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

std::string key_of(const char* prefix, u64 X) {
  std::ostringstream s;
  s << prefix << "_X" << X;
  return s.str();
}

}  // namespace

// -- congruence sums -------------------------------------------------------------

double Q_ell(u64 X, u64 ell, const SmoothWeight& w, const PrimeTable& primes) {
  check_window(X, primes);
  if (ell == 0) throw DomainError("Q_ell: l must be positive");
  const CongruenceRootSet roots = arith::roots_mod(ell);
  std::vector<u64> hits;
  for (u64 r : roots.roots) {
    for (u64 n = first_above(X, r, ell); n <= 2 * X; n += ell) {
      if (primes.is_prime(n)) hits.push_back(n);
    }
  }
  return weighted_sum(hits, X, w);
}

double Q_ell_bruteforce(u64 X, u64 ell, const SmoothWeight& w, const PrimeTable& primes) {
  check_window(X, primes);
  if (ell == 0) throw DomainError("Q_ell: l must be positive");
  std::vector<u64> hits;
  for (std::uint32_t p : primes.primes_in(X, 2 * X)) {
    if ((arith::mulmod(p, p, ell) + 1) % ell == 0) hits.push_back(p);
  }
  return weighted_sum(hits, X, w);
}

double Q_ell_u(u64 X, u64 ell, double u, const SmoothWeight& w, const PrimeTable& primes) {
  check_window(X, primes);
  if (!(u >= 1.0)) throw DomainError("Q_ell_u: u must be >= 1");
  const CongruenceRootSet roots = arith::roots_mod(ell);
  std::vector<u64> hits;
  for (u64 r : roots.roots) {
    for (u64 n = first_above(X, r, ell); n <= 2 * X; n += ell) {
      if (is_rough(n, u, primes)) hits.push_back(n);
    }
  }
  return weighted_sum(hits, X, w);
}

double Q_ell_u_bruteforce(u64 X, u64 ell, double u, const SmoothWeight& w, const PrimeTable& primes) {
  check_window(X, primes);
  if (!(u >= 1.0)) throw DomainError("Q_ell_u: u must be >= 1");
  std::vector<u64> hits;
  for (u64 n = X + 1; n <= 2 * X; ++n) {
    if ((arith::mulmod(n, n, ell) + 1) % ell == 0 && is_rough(n, u, primes)) hits.push_back(n);
  }
  return weighted_sum(hits, X, w);
}

double phi_sifted(u64 X, double z, u64 d, u64 a, const SmoothWeight& w, const PrimeTable& primes) {
  check_window(X, primes);
  if (d == 0) throw DomainError("phi_sifted: d must be positive");
  if (arith::gcd(a % d, d) != 1 && d != 1) throw DomainError("phi_sifted: gcd(a, d) must be 1");
  std::vector<u64> hits;
  for (u64 n = first_above(X, a % d, d); n <= 2 * X; n += d) {
    if (n >= 2 && primes.spf(n) > z) hits.push_back(n);
  }
  return weighted_sum(hits, X, w);
}

double phi_sifted_coprime(u64 X, double z, u64 d, const SmoothWeight& w, const PrimeTable& primes) {
  check_window(X, primes);
  if (d == 0) throw DomainError("phi_sifted_coprime: d must be positive");
  std::vector<u64> hits;
  for (u64 n = X + 1; n <= 2 * X; ++n) {
    if (arith::gcd(n, d) == 1 && primes.spf(n) > z) hits.push_back(n);
  }
  return weighted_sum(hits, X, w);
}

double A_d_count(u64 X, u64 ell, u64 d, const SmoothWeight& w) {
  if (X > kMaxX) throw OverflowGuardError("X exceeds 1e9");
  if (ell == 0 || d == 0) throw DomainError("A_d: l and d must be positive");
  const CongruenceRootSet roots = arith::roots_mod(ell);
  const u64 g = arith::gcd(d, ell);
  const unsigned __int128 lcm128 = static_cast<unsigned __int128>(d / g) * ell;
  if (lcm128 > static_cast<unsigned __int128>(1) << 62) throw OverflowGuardError("A_d: lcm(d, l) too large");
  const auto lcm = static_cast<u64>(lcm128);
  std::vector<u64> hits;
  for (u64 r : roots.roots) {
    // n = 0 (mod d), n = r (mod l) is solvable iff g | r.
    if (r % g != 0) continue;
    const u64 lg = ell / g;
    const u64 dg = d / g;
    // n = d t with d t = r (mod l)  <=>  dg t = r/g (mod lg).
    const u64 t = lg == 1 ? 0 : arith::mulmod((r / g) % lg, arith::invmod(dg % lg, lg), lg);
    const u64 cls = static_cast<u64>(static_cast<unsigned __int128>(d) * t % lcm);
    for (u64 n = first_above(X, cls, lcm); n <= 2 * X; n += lcm) hits.push_back(n);
  }
  return weighted_sum(hits, X, w);
}

double A_d_count_bruteforce(u64 X, u64 ell, u64 d, const SmoothWeight& w) {
  if (ell == 0 || d == 0) throw DomainError("A_d: l and d must be positive");
  std::vector<u64> hits;
  for (u64 n = X + 1; n <= 2 * X; ++n) {
    if (n % d == 0 && (arith::mulmod(n, n, ell) + 1) % ell == 0) hits.push_back(n);
  }
  return weighted_sum(hits, X, w);
}

double r_d_error(u64 X, u64 ell, u64 d, const SmoothWeight& w) {
  const double rho = static_cast<double>(arith::rho(ell));
  return A_d_count(X, ell, d, w) -
         w.mass() * rho * static_cast<double>(X) / (static_cast<double>(d) * static_cast<double>(ell));
}

// -- averaged errors ------------------------------------------------------------

namespace {

// Shared core of the two error averages: `members` ascending, each with weight g(n/X).
double class_error_average(u64 X, int k, const std::vector<u64>& members, const std::vector<double>& weights,
                           bool compare_with_coprime_total) {
  const auto D = static_cast<u64>(std::floor(arith::x_flat(static_cast<double>(X))));
  double total = 0.0;
  for (u64 d = 1; d <= D; ++d) {
    std::vector<double> cls(d, 0.0);
    double all = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      cls[members[i] % d] += weights[i];
      all += weights[i];
    }
    if (compare_with_coprime_total) {
      all = 0.0;
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (arith::gcd(members[i], d) == 1) all += weights[i];
      }
    }
    const auto mv = arith::multiplicative_suite(d);
    const double mean = all / static_cast<double>(mv.phi);
    double worst = 0.0;
    for (u64 a = 0; a < d; ++a) {
      if (arith::gcd(a, d) != 1 && d != 1) continue;
      worst = std::max(worst, std::abs(cls[a] - mean));
    }
    total += std::pow(static_cast<double>(mv.tau), k) * worst;
  }
  return total;
}

}  // namespace

double bv_error_value(u64 X, int k, const SmoothWeight& w, const PrimeTable& primes) {
  check_window(X, primes);
  if (k < 0) throw ParameterError("bv_error: tau exponent must be >= 0");
  std::vector<u64> members;
  std::vector<double> weights;
  for (std::uint32_t p : primes.primes_in(X, 2 * X)) {
    members.push_back(p);
    weights.push_back(w.at(p, X));
  }
  return class_error_average(X, k, members, weights, false);
}

double wolke_error_value(u64 X, double z, int k, const SmoothWeight& w, const PrimeTable& primes) {
  check_window(X, primes);
  if (k < 0) throw ParameterError("wolke_error: tau exponent must be >= 0");
  if (!(z >= 2.0)) throw DomainError("wolke_error: z must be >= 2");
  std::vector<u64> members;
  std::vector<double> weights;
  for (u64 n = X + 1; n <= 2 * X; ++n) {
    if (primes.spf(n) > z) {
      members.push_back(n);
      weights.push_back(w.at(n, X));
    }
  }
  return class_error_average(X, k, members, weights, true);
}

namespace {

ExperimentReport error_average_report(const std::string& name, std::span<const u64> Xs, int k,
                                      const SmoothWeight& w, const std::function<double(u64)>& value) {
  ExperimentReport r;
  r.name = name;
  r.parameters["X"] = std::vector<u64>(Xs.begin(), Xs.end());
  r.parameters["tau_exponent"] = k;
  r.parameters["weight"] = to_string(w.mode());
  double previous = std::numeric_limits<double>::infinity();
  bool decreasing = true;
  for (u64 X : Xs) {
    const double v = value(X);
    const double lx = std::log(static_cast<double>(X));
    const double ratio = v / (static_cast<double>(X) / (lx * lx));
    r.values[key_of("value", X)] = v;
    r.values[key_of("ratio", X)] = ratio;
    r.counters[key_of("moduli", X)] = static_cast<long long>(std::floor(arith::x_flat(static_cast<double>(X))));
    decreasing = decreasing && ratio < previous;
    previous = ratio;
  }
  r.values["ratio_decreasing"] = decreasing ? 1.0 : 0.0;
  r.note("tau exponent is a parameter (default 1) in place of the proof's 2016");
  r.note("ratio trend is report-only");
  return r;
}

}  // namespace

ExperimentReport bv_error_average(std::span<const u64> Xs, int k, const SmoothWeight& w, const PrimeTable& primes) {
  auto r = error_average_report("bv_error_average", Xs, k, w,
                                [&](u64 X) { return bv_error_value(X, k, w, primes); });
  // d = 1 compares the full sum with itself.
  for (u64 X : Xs) {
    const auto D = static_cast<u64>(std::floor(arith::x_flat(static_cast<double>(X))));
    r.require(D >= 1, "X^flat >= 1 at X = " + std::to_string(X));
  }
  return r;
}

ExperimentReport wolke_error_average(std::span<const u64> Xs, double z, int k, const SmoothWeight& w,
                                     const PrimeTable& primes) {
  auto r = error_average_report("wolke_error_average", Xs, k, w,
                                [&](u64 X) { return wolke_error_value(X, z, k, w, primes); });
  r.parameters["z"] = z;
  return r;
}

// -- Chebyshev-Hooley -----------------------------------------------------------

ChebyshevResult chebyshev_components(u64 X, double vartheta, const SmoothWeight& w, const PrimeTable& primes) {
  check_window(X, primes);
  if (!(vartheta > 0.5 && vartheta < 1.0)) throw DomainError("chebyshev: vartheta must lie in (1/2, 1)");
  ChebyshevResult out;
  const double Xd = static_cast<double>(X);
  out.x_flat = arith::x_flat(Xd);
  const double x_theta = std::pow(Xd, vartheta);

  std::vector<double> direct, divisor, h1, h2, h3, h4, prime_sum;
  const arith::QuadraticFactorSieve sieve(primes, 2 * X);
  sieve.for_each(X + 1, 2 * X, [&](u64 n, std::span<const arith::PrimePower> fac) {
    // Lambda(n): n must be a prime power.
    const u64 p = primes.spf(n);
    u64 m = n;
    while (m % p == 0) m /= p;
    if (m != 1) return;
    const double g = w.at(n, X);
    if (g == 0.0) return;
    const double log_p = std::log(static_cast<double>(p));
    direct.push_back(g * log_p * std::log(static_cast<double>(n * n + 1)));
    double lam_sum = 0.0;
    for (const auto& [q, e] : fac) lam_sum += e * std::log(static_cast<double>(q));
    divisor.push_back(g * log_p * lam_sum);
    if (n != p) return;

    // Q_l regrouping over prime-power divisors l = q^j of p^2 + 1.
    prime_sum.push_back(g * std::log(static_cast<double>(n * n + 1)));
    for (const auto& [q, e] : fac) {
      const double log_q = std::log(static_cast<double>(q));
      double qj = 1.0;
      for (int j = 1; j <= e; ++j) {
        qj *= static_cast<double>(q);
        const double term = g * log_q;
        if (qj <= out.x_flat) {
          h1.push_back(term);
        } else if (j == 1) {
          (static_cast<double>(q) <= x_theta ? h2 : h3).push_back(term);
        } else {
          h4.push_back(term);
        }
      }
    }
  });
  out.H_direct = num::pairwise_sum(direct);
  out.H_divisor = num::pairwise_sum(divisor);
  out.H1 = num::pairwise_sum(h1);
  out.H2 = num::pairwise_sum(h2);
  out.H3 = num::pairwise_sum(h3);
  out.H4 = num::pairwise_sum(h4);
  out.prime_sum = num::pairwise_sum(prime_sum);

  // H4 again, from the roots of n^2 + 1 modulo q^j for j >= 2.
  const unsigned __int128 top = static_cast<unsigned __int128>(2 * X) * (2 * X) + 1;
  std::vector<double> h4_roots;
  for (std::uint32_t q : primes.primes()) {
    if (q > 2 * X) break;
    if (q % 4 != 1) continue;
    u64 qj = static_cast<u64>(q) * q;
    for (int j = 2; static_cast<unsigned __int128>(qj) <= top; ++j) {
      if (static_cast<double>(qj) > out.x_flat) {
        Factorization f{qj, {{q, j}}};
        const auto roots = arith::roots_mod(f);
        std::vector<u64> hits;
        for (u64 r : roots.roots) {
          for (u64 n = first_above(X, r, qj); n <= 2 * X; n += qj) {
            if (primes.is_prime(n)) hits.push_back(n);
          }
        }
        if (!hits.empty()) h4_roots.push_back(weighted_sum(hits, X, w) * std::log(static_cast<double>(q)));
      }
      if (static_cast<unsigned __int128>(qj) * q > top) break;
      qj *= q;
    }
  }
  out.H4_roots = num::pairwise_sum(h4_roots);

  // Model for H1 from the expected density rho(l)/phi(l).
  double model_sum = 0.0;
  for (std::uint32_t q : primes.primes()) {
    if (q > out.x_flat) break;
    u64 qj = q;
    for (int j = 1; static_cast<double>(qj) <= out.x_flat; ++j) {
      Factorization f{qj, {{q, j}}};
      const double rho = static_cast<double>(arith::rho(f));
      const double phi = static_cast<double>(qj / q * (q - 1));
      model_sum += std::log(static_cast<double>(q)) * rho / phi;
      qj *= q;
    }
  }
  out.H1_model = w.mass() * Xd * model_sum / std::log(Xd);
  return out;
}

ExperimentReport chebyshev_decomposition(u64 X, double vartheta, const SmoothWeight& w, const PrimeTable& primes) {
  const ChebyshevResult c = chebyshev_components(X, vartheta, w, primes);
  ExperimentReport r;
  r.name = "chebyshev_decomposition";
  r.parameters["X"] = X;
  r.parameters["vartheta"] = vartheta;
  r.parameters["weight"] = to_string(w.mode());
  const double Xd = static_cast<double>(X);
  r.values["H_direct"] = c.H_direct;
  r.values["H_divisor"] = c.H_divisor;
  r.values["H1"] = c.H1;
  r.values["H2"] = c.H2;
  r.values["H3"] = c.H3;
  r.values["H4"] = c.H4;
  r.values["H4_roots"] = c.H4_roots;
  r.values["H1_model"] = c.H1_model;
  r.values["H1_over_model"] = c.H1 / c.H1_model;
  r.values["H4_over_X"] = c.H4 / Xd;
  r.values["H_over_2gX_logX"] = c.H_direct / (2.0 * w.mass() * Xd * std::log(Xd));
  r.values["x_flat"] = c.x_flat;
  r.residuals["H_identity_relative"] = relative_gap(c.H_direct, c.H_divisor);
  r.residuals["split_sum_relative"] = relative_gap(c.H1 + c.H2 + c.H3 + c.H4, c.prime_sum);
  r.residuals["H4_roots_relative"] = c.H4 == 0.0 && c.H4_roots == 0.0 ? 0.0 : relative_gap(c.H4, c.H4_roots);
  r.require(r.residuals["H_identity_relative"] <= 1e-9, "log m = sum_{l | m} Lambda(l) regrouping");
  r.require(r.residuals["split_sum_relative"] <= 1e-9, "H1 + H2 + H3 + H4 equals the prime sum");
  r.require(r.residuals["H4_roots_relative"] <= 1e-9, "H4 from factorisations equals H4 from roots mod p^k");
  r.note("H1/H1_model and H4/X are report-grade finite-size quantities");
  return r;
}

// -- Brun-Titchmarsh exceptions ---------------------------------------------------

ExperimentReport bt_exception_count(u64 X, double theta, const SmoothWeight& w, const PrimeTable& primes,
                                    unsigned threads) {
  check_window(X, primes);
  const double gam = verify::gamma_theta(theta);
  const double Xd = static_cast<double>(X);
  const double L = std::pow(Xd, theta);
  const auto lo = static_cast<u64>(std::floor(L)) + 1;
  const auto hi = static_cast<u64>(std::floor(2.0 * L));
  const std::size_t count = hi >= lo ? hi - lo + 1 : 0;

  struct Row {
    bool rho_positive = false;
    bool exception = false;
    double ratio = 0.0;
  };
  auto rows = num::parallel_map<Row>(count, threads, [&](std::size_t i) {
    const u64 ell = lo + i;
    Row row;
    const auto fac = arith::factorize(ell, &primes);
    const double rho = static_cast<double>(arith::rho(fac));
    if (rho == 0.0) return row;
    row.rho_positive = true;
    const double phi = static_cast<double>(arith::multiplicative_suite(fac).phi);
    const double bound = (2.0 / gam) * w.mass() * rho / phi * Xd / std::log(Xd);
    const double q = Q_ell(X, ell, w, primes);
    row.ratio = q / bound;
    row.exception = q > bound;
    return row;
  });

  long long rho_positive = 0, exceptions = 0;
  double max_ratio = 0.0;
  for (const auto& row : rows) {
    rho_positive += row.rho_positive;
    exceptions += row.exception;
    max_ratio = std::max(max_ratio, row.ratio);
  }
  ExperimentReport r;
  r.name = "bt_exception_count";
  r.parameters["X"] = X;
  r.parameters["theta"] = theta;
  r.parameters["weight"] = to_string(w.mode());
  r.values["L"] = L;
  r.values["gamma_theta"] = gam;
  r.counters["moduli"] = static_cast<long long>(count);
  r.counters["rho_positive"] = rho_positive;
  r.counters["exceptions"] = exceptions;
  r.values["exception_fraction"] = count == 0 ? 0.0 : static_cast<double>(exceptions) / static_cast<double>(count);
  r.values["max_Q_over_bound"] = max_ratio;
  r.note("the bound drops the o(1) term; the exception fraction is report-only");
  return r;
}

// -- character sums and the square sieve ----------------------------------------

namespace {

void check_weil_primes(u64 p, u64 q) {
  if (p == q) throw DomainError("weil: p and q must be distinct");
  if (p == 2 || q == 2 || !arith::is_prime_u64(p) || !arith::is_prime_u64(q)) {
    throw DomainError("weil: p and q must be odd primes");
  }
}

long long local_sum(u64 mod, u64 m) {
  long long s = 0;
  for (u64 l = 0; l < mod; ++l) {
    const u64 v = (arith::mulmod(m % mod, arith::mulmod(l, l, mod), mod) + mod - 1) % mod;
    s += arith::jacobi(static_cast<arith::i64>(v), mod);
  }
  return s;
}

}  // namespace

WeilSum weil_sum(u64 p, u64 q, u64 m) {
  check_weil_primes(p, q);
  const u64 pq = p * q;
  if (pq > 100'000) throw DomainError("weil: pq must be <= 1e5");
  WeilSum out;
  out.S = local_sum(pq, m);
  out.S_p = local_sum(p, m);
  out.S_q = local_sum(q, m);
  out.bound = std::sqrt(static_cast<double>(pq));
  out.degenerate = arith::gcd(m % pq, pq) != 1;
  out.within_bound = out.degenerate || std::abs(static_cast<double>(out.S)) <= out.bound;
  return out;
}

ExperimentReport weil_sum_check(u64 p, u64 q, u64 m) {
  const WeilSum s = weil_sum(p, q, m);
  ExperimentReport r;
  r.name = "weil_sum_check";
  r.parameters["p"] = p;
  r.parameters["q"] = q;
  r.parameters["m"] = m;
  r.counters["S"] = s.S;
  r.counters["S_p"] = s.S_p;
  r.counters["S_q"] = s.S_q;
  r.values["abs_S"] = std::abs(static_cast<double>(s.S));
  r.values["bound"] = s.bound;
  r.counters["degenerate"] = s.degenerate;
  r.require(s.S == s.S_p * s.S_q, "S(pq) = S(p) S(q)");
  if (s.degenerate) {
    r.note("gcd(m, pq) > 1: bound not asserted");
  } else {
    r.require(s.within_bound, "|S| <= sqrt(pq)");
  }
  return r;
}

ExperimentReport weil_exhaustive(u64 max_pq, u64 max_prime) {
  if (max_prime > 1000) throw OverflowGuardError("weil_exhaustive: max_prime must be <= 1000");
  ExperimentReport r;
  r.name = "weil_exhaustive";
  r.parameters["max_pq"] = max_pq;
  r.parameters["max_prime"] = max_prime;
  std::vector<u64> odd_primes;
  for (u64 p = 3; p <= max_prime; p += 2) {
    if (arith::is_prime_u64(p)) odd_primes.push_back(p);
  }
  long long pairs = 0, checked = 0, violations = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < odd_primes.size(); ++i) {
    for (std::size_t j = i + 1; j < odd_primes.size(); ++j) {
      const u64 p = odd_primes[i], q = odd_primes[j], pq = p * q;
      if (pq > max_pq) continue;
      ++pairs;
      std::vector<int> jac(pq);
      for (u64 x = 0; x < pq; ++x) jac[x] = arith::jacobi(static_cast<arith::i64>(x), pq);
      // multiplicity of each square l^2 mod pq, so S(m) = sum_s mult(s) (m s - 1 / pq)
      std::vector<long long> mult(pq, 0);
      for (u64 l = 0; l < pq; ++l) ++mult[l * l % pq];
      std::vector<std::pair<u64, long long>> squares;
      for (u64 s = 0; s < pq; ++s) {
        if (mult[s] != 0) squares.emplace_back(s, mult[s]);
      }
      const double bound = std::sqrt(static_cast<double>(pq));
      for (u64 m = 1; m <= pq; ++m) {
        if (arith::gcd(m, pq) != 1) continue;
        long long S = 0;
        for (const auto& [s, k] : squares) S += k * jac[(m * s + pq - 1) % pq];
        ++checked;
        const double a = std::abs(static_cast<double>(S));
        worst = std::max(worst, a / bound);
        if (a > bound) ++violations;
      }
    }
  }
  r.counters["pairs"] = pairs;
  r.counters["triples_checked"] = checked;
  r.counters["violations"] = violations;
  r.values["max_abs_S_over_bound"] = worst;
  r.require(violations == 0, "|S| <= sqrt(pq) for every coprime m");
  return r;
}

u64 square_sieve_count(u64 X, u64 L) {
  if (X > kMaxX) throw OverflowGuardError("X exceeds 1e9");
  if (L == 0 || L > X) throw DomainError("square_sieve_count: need 1 <= L <= X");
  if (2 * L > arith::kMaxQuadraticArgument) throw OverflowGuardError("square_sieve_count: l^2 too large");
  u64 total = 0;
  for (u64 ell = L + 1; ell <= 2 * L; ++ell) {
    auto fac = arith::factorize(ell);
    if (arith::rho(fac) == 0) continue;
    for (auto& pp : fac.factors) pp.e *= 2;
    fac.n = ell * ell;
    const auto roots = arith::roots_mod(fac);
    for (u64 r : roots.roots) {
      const u64 first = first_above(X, r, fac.n);
      if (first <= 2 * X) total += (2 * X - first) / fac.n + 1;
    }
  }
  return total;
}

u64 square_sieve_count_bruteforce(u64 X, u64 L) {
  u64 total = 0;
  for (u64 ell = L + 1; ell <= 2 * L; ++ell) {
    const u64 mod = ell * ell;
    for (u64 n = X + 1; n <= 2 * X; ++n) {
      if ((arith::mulmod(n, n, mod) + 1) % mod == 0) ++total;
    }
  }
  return total;
}

}  // namespace sievekit::lab
