#pragma once

// Exact 64-bit arithmetic: prime tables, factorisation, roots of a^2 + 1 modulo d,
// multiplicative functions and the Jacobi symbol.

#include <cstdint>
#include <span>
#include <vector>

namespace sievekit::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Largest n accepted by quadratic-sequence code: n^2 + 1 < 2^63.
inline constexpr u64 kMaxQuadraticArgument = 3'000'000'000ULL;

/// Primes up to `limit` together with the least-prime-factor array.
class PrimeTable {
 public:
  static constexpr u64 kMaxLimit = 1'000'000'000ULL;
  static PrimeTable build(u64 limit);

  u64 limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }
  /// Least prime factor of 2 <= n <= limit.
  std::uint32_t spf(u64 n) const;
  bool is_prime(u64 n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }
  /// Number of primes <= x (x <= limit).
  std::size_t pi(u64 x) const;
  /// Primes in (lo, hi].
  std::span<const std::uint32_t> primes_in(u64 lo, u64 hi) const;

 private:
  PrimeTable() = default;
  u64 limit_ = 0;
  std::vector<std::uint32_t> primes_;
  std::vector<std::uint32_t> spf_;
};

struct PrimePower {
  u64 p = 0;
  int e = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;  // ascending primes

  u64 product() const;
};

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
/// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);
u64 gcd(u64 a, u64 b);

/// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(u64 n);

/// Complete factorisation of 1 <= n < 2^63. Uses the table's spf array when n fits in it.
Factorization factorize(u64 n, const PrimeTable* table = nullptr);

struct MultiplicativeValues {
  u64 phi = 1;
  int mu = 1;
  u64 tau = 1;
  double lambda_vm = 0.0;
  int big_omega = 0;
  u64 p_plus = 1;
};

MultiplicativeValues multiplicative_suite(const Factorization& fac);
MultiplicativeValues multiplicative_suite(u64 n);

/// Residues a (mod d) with a^2 + 1 = 0 (mod d), ascending.
struct CongruenceRootSet {
  u64 modulus = 1;
  std::vector<u64> roots;
  std::size_t rho() const { return roots.size(); }
};

/// Square root of -1 modulo a prime p = 1 (mod 4) by Tonelli-Shanks.
u64 sqrt_minus_one(u64 p);
/// Tonelli-Shanks square root of a quadratic residue a modulo an odd prime p.
u64 sqrt_mod_prime(u64 a, u64 p);

CongruenceRootSet roots_mod(u64 d);
CongruenceRootSet roots_mod(const Factorization& fac);
u64 rho(u64 d);
/// rho from the factorisation alone, without enumerating roots.
u64 rho(const Factorization& fac);

/// Jacobi symbol (a / n) for odd n >= 1.
int jacobi(i64 a, u64 n);

/// X^flat = X^{1/2} exp(-(log X)^{1/2}), X > 1.
double x_flat(double X);

}  // namespace sievekit::arith
