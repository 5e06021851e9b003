#pragma once

// Desk-scale realisations of the counting objects: Q_l, sifted counts, A_d / r_d,
// error averages, the Chebyshev-Hooley decomposition, the weighted sieve and surveys.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sievekit/prime_toolkit.hpp"
#include "sievekit/report.hpp"
#include "sievekit/theorem_verifier.hpp"

namespace sievekit::lab {

using arith::PrimeTable;
using arith::u64;

enum class WeightMode { Sharp, Bump, Plateau };

WeightMode parse_weight_mode(const std::string& name);
std::string to_string(WeightMode mode);

/// Test weight g supported in [1, 2] with its mass g^(0) = int g.
class SmoothWeight {
 public:
  static constexpr double kDefaultEpsilon = 0.1;

  static SmoothWeight sharp();
  static SmoothWeight bump();
  static SmoothWeight plateau(double epsilon0 = kDefaultEpsilon);
  static SmoothWeight make(WeightMode mode, double epsilon0 = kDefaultEpsilon);

  WeightMode mode() const { return mode_; }
  double epsilon0() const { return epsilon0_; }
  double mass() const { return mass_; }

  double operator()(double x) const;
  /// g(n / X); the sharp mode is decided in integers so n = 2X is always inside.
  double at(u64 n, u64 X) const;

 private:
  SmoothWeight(WeightMode mode, double eps);
  WeightMode mode_;
  double epsilon0_;
  double mass_ = 1.0;
};

/// Overflow guard shared by every experiment: X <= 1e9.
inline constexpr u64 kMaxX = 1'000'000'000ULL;
void check_window(u64 X, const PrimeTable& primes);

struct ExperimentConfig {
  u64 X = 10'000;
  SmoothWeight weight = SmoothWeight::sharp();
  unsigned threads = 1;
  u64 seed = 20160847;
};

// -- congruence sums -------------------------------------------------------------

/// Q_l(X) = sum over primes p with l | p^2 + 1 of g(p/X), enumerating the progressions
/// n = root (mod l).
double Q_ell(u64 X, u64 ell, const SmoothWeight& w, const PrimeTable& primes);
/// Same sum by looping over every prime in the window.
double Q_ell_bruteforce(u64 X, u64 ell, const SmoothWeight& w, const PrimeTable& primes);

/// Sum of g(n/X) over n with l | n^2 + 1 whose prime factors all exceed n^{1/u}.
double Q_ell_u(u64 X, u64 ell, double u, const SmoothWeight& w, const PrimeTable& primes);
double Q_ell_u_bruteforce(u64 X, u64 ell, double u, const SmoothWeight& w, const PrimeTable& primes);

/// Phi(X, z; d, a): z-rough n = a (mod d); requires gcd(a, d) = 1.
double phi_sifted(u64 X, double z, u64 d, u64 a, const SmoothWeight& w, const PrimeTable& primes);
/// Phi(X, z; d): z-rough n coprime to d.
double phi_sifted_coprime(u64 X, double z, u64 d, const SmoothWeight& w, const PrimeTable& primes);

/// A_d(X; l): n with l | n^2 + 1 and d | n, summed over the CRT classes.
double A_d_count(u64 X, u64 ell, u64 d, const SmoothWeight& w);
double A_d_count_bruteforce(u64 X, u64 ell, u64 d, const SmoothWeight& w);
/// r_d(X; l) = A_d(X; l) - g^(0) rho(l) X / (d l).
double r_d_error(u64 X, u64 ell, u64 d, const SmoothWeight& w);

// -- averaged errors ------------------------------------------------------------

inline constexpr int kDefaultTauExponent = 1;

/// sum_{d <= X^flat} tau(d)^k max_{(a,d)=1} |sum_{p = a (d)} g(p/X) - (1/phi(d)) sum_p g(p/X)|.
double bv_error_value(u64 X, int k, const SmoothWeight& w, const PrimeTable& primes);
ExperimentReport bv_error_average(std::span<const u64> Xs, int k, const SmoothWeight& w,
                                  const PrimeTable& primes);

/// Same shape with z-rough n in place of primes.
double wolke_error_value(u64 X, double z, int k, const SmoothWeight& w, const PrimeTable& primes);
ExperimentReport wolke_error_average(std::span<const u64> Xs, double z, int k, const SmoothWeight& w,
                                     const PrimeTable& primes);

// -- Chebyshev-Hooley -----------------------------------------------------------

struct ChebyshevResult {
  double H_direct = 0.0;   // sum g(n/X) Lambda(n) log(n^2 + 1)
  double H_divisor = 0.0;  // same with log(n^2 + 1) = sum_{l | n^2+1} Lambda(l)
  double H1 = 0.0, H2 = 0.0, H3 = 0.0, H4 = 0.0;
  double H4_roots = 0.0;   // H4 recomputed from roots_mod(p^k)
  double H1_model = 0.0;
  double x_flat = 0.0;
  double prime_sum = 0.0;  // sum_p g(p/X) log(p^2 + 1) = H1 + H2 + H3 + H4
};

ChebyshevResult chebyshev_components(u64 X, double vartheta, const SmoothWeight& w, const PrimeTable& primes);
ExperimentReport chebyshev_decomposition(u64 X, double vartheta, const SmoothWeight& w, const PrimeTable& primes);

// -- Brun-Titchmarsh exceptions ---------------------------------------------------

ExperimentReport bt_exception_count(u64 X, double theta, const SmoothWeight& w, const PrimeTable& primes,
                                    unsigned threads = 1);

// -- character sums and the square sieve ----------------------------------------

struct WeilSum {
  long long S = 0;
  long long S_p = 0;
  long long S_q = 0;
  double bound = 0.0;
  bool degenerate = false;  // gcd(m, pq) > 1
  bool within_bound = true;
};

/// S = sum_{l mod pq} (m l^2 - 1 / pq) for distinct odd primes p, q.
WeilSum weil_sum(u64 p, u64 q, u64 m);
ExperimentReport weil_sum_check(u64 p, u64 q, u64 m);
/// Every pair of distinct odd primes p < q <= max_prime with pq <= max_pq, and every
/// m in [1, pq] coprime to pq.
ExperimentReport weil_exhaustive(u64 max_pq, u64 max_prime = 97);

/// sum_{L < l <= 2L} #{X < n <= 2X : l^2 | n^2 + 1}.
u64 square_sieve_count(u64 X, u64 L);
u64 square_sieve_count_bruteforce(u64 X, u64 L);

// -- weighted sieve and surveys -------------------------------------------------

struct WeightedSieveResult {
  double z = 0.0, y = 0.0;
  double S_A = 0.0;          // S(A, z)
  double psi_direct = 0.0;   // Psi computed per p
  double psi_identity = 0.0; // S(A, z) - eta^{-1} sum_q w_q S(A_q, z)
  long long sifted = 0;
  long long contributing = 0;          // sifted p with positive inner weight
  long long contributing_Pr = 0;       // ... with Omega(m) <= r
  long long squarefree_checked = 0;
  long long omega_bound_violations = 0;
};

WeightedSieveResult weighted_sieve_components(u64 X, const verify::WeightedSieveParams& params,
                                              const SmoothWeight& w, const PrimeTable& primes);
ExperimentReport weighted_sieve_experiment(u64 X, const verify::WeightedSieveParams& params,
                                           const SmoothWeight& w, const PrimeTable& primes);

/// Counts of primes p in (X, 2X] with Omega((p^2 + 1)/2) <= r, for r = 1..6.
std::vector<long long> almost_prime_counts(u64 X, const PrimeTable& primes);
ExperimentReport almost_prime_survey(u64 X, int r, const PrimeTable& primes);

ExperimentReport gpf_survey(u64 X, double vartheta, const PrimeTable& primes);

inline constexpr double kRatioBinWidth = 0.1;
ExperimentReport dartyge_survey(u64 X, double u, const PrimeTable& primes);

/// Histogram CSV "bin,count" from a survey report that carries one.
std::string histogram_csv(const ExperimentReport& report);

}  // namespace sievekit::lab
