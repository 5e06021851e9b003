#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sievekit/prime_toolkit.hpp"

namespace sievekit::arith {

/// Factors n^2 + 1 for every n in [lo, hi] by sieving the progressions n = +-r (mod p)
/// for primes p <= hi, where r^2 = -1 (mod p). Whatever survives is 1 or a single prime
/// above hi, because n^2 + 1 < (hi + 1)^2.
class QuadraticFactorSieve {
 public:
  /// Table must reach hi; hi <= kMaxQuadraticArgument.
  QuadraticFactorSieve(const PrimeTable& table, u64 hi);

  using Visitor = std::function<void(u64 n, std::span<const PrimePower> factors)>;

  /// Calls visit(n, factors of n^2 + 1) for n = lo..hi in increasing order.
  void for_each(u64 lo, u64 hi, const Visitor& visit) const;

  u64 hi() const { return hi_; }

 private:
  struct SievingPrime {
    u64 p;
    u64 r1;
    u64 r2;  // equal to r1 when only one root exists (p = 2)
  };
  u64 hi_;
  std::vector<SievingPrime> primes_;
};

}  // namespace sievekit::arith
