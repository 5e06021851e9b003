#include "sievekit/quadratic_sieve.hpp"

#include <algorithm>

#include "sievekit/errors.hpp"

namespace sievekit::arith {

namespace {
constexpr u64 kBlock = 1 << 18;
}

QuadraticFactorSieve::QuadraticFactorSieve(const PrimeTable& table, u64 hi) : hi_(hi) {
  if (hi > kMaxQuadraticArgument) throw OverflowGuardError("quadratic sieve: n^2 + 1 would overflow");
  if (hi > table.limit()) throw ParameterError("quadratic sieve: prime table too small");
  for (std::uint32_t p : table.primes()) {
    if (p > hi) break;
    if (p == 2) {
      primes_.push_back({2, 1, 1});
    } else if (p % 4 == 1) {
      const u64 r = sqrt_minus_one(p);
      primes_.push_back({p, r, p - r});
    }
  }
}

void QuadraticFactorSieve::for_each(u64 lo, u64 hi, const Visitor& visit) const {
  if (hi > hi_) throw ParameterError("quadratic sieve: range beyond configured limit");
  if (lo == 0) lo = 1;
  struct Hit {
    std::uint32_t idx;
    PrimePower pp;
  };
  std::vector<u64> residual;
  std::vector<Hit> hits;
  std::vector<std::uint32_t> start;
  std::vector<PrimePower> sorted;
  std::vector<PrimePower> local;

  for (u64 block_lo = lo; block_lo <= hi; block_lo += kBlock) {
    const u64 block_hi = std::min(hi, block_lo + kBlock - 1);
    const auto len = static_cast<std::size_t>(block_hi - block_lo + 1);
    residual.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
      const u64 n = block_lo + i;
      residual[i] = n * n + 1;
    }
    hits.clear();
    for (const auto& sp : primes_) {
      auto strike = [&](u64 root) {
        u64 first = block_lo + (root + sp.p - block_lo % sp.p) % sp.p;
        for (u64 n = first; n <= block_hi; n += sp.p) {
          const auto i = static_cast<std::size_t>(n - block_lo);
          int e = 0;
          while (residual[i] % sp.p == 0) {
            residual[i] /= sp.p;
            ++e;
          }
          hits.push_back({static_cast<std::uint32_t>(i), {sp.p, e}});
        }
      };
      strike(sp.r1);
      if (sp.r2 != sp.r1) strike(sp.r2);
    }
    // Bucket hits by index; primes arrive in increasing order for each index.
    start.assign(len + 1, 0);
    for (const auto& h : hits) ++start[h.idx + 1];
    for (std::size_t i = 0; i < len; ++i) start[i + 1] += start[i];
    sorted.resize(hits.size());
    {
      std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
      for (const auto& h : hits) sorted[fill[h.idx]++] = h.pp;
    }
    for (std::size_t i = 0; i < len; ++i) {
      local.assign(sorted.begin() + start[i], sorted.begin() + start[i + 1]);
      if (residual[i] > 1) local.push_back({residual[i], 1});
      visit(block_lo + i, local);
    }
  }
}

}  // namespace sievekit::arith
