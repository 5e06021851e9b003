#include "sievekit/prime_toolkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sievekit/errors.hpp"

namespace sievekit::arith {

namespace {

using u128 = unsigned __int128;

// Fixed seed for every randomised search so runs are reproducible.
constexpr u64 kSearchSeed = 0x5eed'2016'0847ULL;

constexpr std::uint32_t kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                          41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(kSearchSeed ^ n);
  while (true) {
    const u64 c = rng() % (n - 1) + 1;
    u64 y = rng() % n;
    const u64 m = 128;
    u64 g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  split_into(d, out);
  split_into(n / d, out);
}

void push_factor(std::vector<PrimePower>& f, u64 p) {
  if (!f.empty() && f.back().p == p) {
    ++f.back().e;
  } else {
    f.push_back({p, 1});
  }
}

// Roots of x^2 + 1 modulo p^k, p prime.
std::vector<u64> prime_power_roots(u64 p, int k, u64& modulus) {
  modulus = 1;
  for (int i = 0; i < k; ++i) modulus *= p;
  if (p == 2) {
    if (k == 1) return {1};
    return {};
  }
  if (p % 4 == 3) return {};
  u64 r = sqrt_minus_one(p);
  u64 pk = p;
  for (int i = 1; i < k; ++i) {
    // Newton step r <- r - (r^2 + 1) / (2r) modulo p^{i+1}.
    const u64 next = pk * p;
    const u64 fr = (mulmod(r, r, next) + 1) % next;
    const u64 inv = invmod((2 * r) % next, next);
    r = (r + next - mulmod(fr, inv, next)) % next;
    pk = next;
  }
  const u64 other = modulus - r;
  return r < other ? std::vector<u64>{r, other} : std::vector<u64>{other, r};
}

}  // namespace

PrimeTable PrimeTable::build(u64 limit) {
  if (limit < 2 || limit > kMaxLimit) throw ParameterError("prime table limit must lie in [2, 1e9]");
  PrimeTable t;
  t.limit_ = limit;
  t.spf_.assign(limit + 1, 0);
  // Linear sieve: every composite is struck once, by its least prime factor.
  for (u64 i = 2; i <= limit; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = static_cast<std::uint32_t>(i);
      t.primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t si = t.spf_[i];
    for (std::uint32_t p : t.primes_) {
      if (p > si || static_cast<u64>(p) * i > limit) break;
      t.spf_[static_cast<u64>(p) * i] = p;
    }
  }
  return t;
}

std::uint32_t PrimeTable::spf(u64 n) const {
  if (n < 2 || n > limit_) throw DomainError("spf: n outside [2, limit]");
  return spf_[n];
}

std::size_t PrimeTable::pi(u64 x) const {
  if (x > limit_) throw DomainError("pi: x beyond table limit");
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

std::span<const std::uint32_t> PrimeTable::primes_in(u64 lo, u64 hi) const {
  if (hi > limit_) throw DomainError("primes_in: range beyond table limit");
  if (hi <= lo) return {};
  const auto b = std::upper_bound(primes_.begin(), primes_.end(), lo);
  const auto e = std::upper_bound(primes_.begin(), primes_.end(), hi);
  return {primes_.data() + (b - primes_.begin()), static_cast<std::size_t>(e - b)};
}

u64 Factorization::product() const {
  u64 out = 1;
  for (const auto& [p, e] : factors) {
    for (int i = 0; i < e; ++i) out *= p;
  }
  return out;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 result = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 invmod(u64 a, u64 m) {
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    const i64 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw DomainError("invmod: not invertible");
  if (t < 0) t += static_cast<i64>(m);
  return static_cast<u64>(t);
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(u64 n, const PrimeTable* table) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  if (n >= (1ULL << 63)) throw OverflowGuardError("factorize: n must be below 2^63");
  Factorization fac;
  fac.n = n;
  if (table != nullptr && n <= table->limit()) {
    while (n > 1) {
      push_factor(fac.factors, table->spf(n));
      n /= table->spf(n);
    }
    return fac;
  }
  auto trial = [&](u64 p) {
    while (n % p == 0) {
      push_factor(fac.factors, p);
      n /= p;
    }
  };
  u64 bound = 1000;
  if (table != nullptr) {
    bound = std::min<u64>(table->limit(), 1'000'000);
    for (std::uint32_t p : table->primes()) {
      if (p > bound || static_cast<u64>(p) * p > n) break;
      trial(p);
    }
  } else {
    trial(2);
    for (u64 p = 3; p <= bound && p * p <= n; p += 2) trial(p);
  }
  if (n > 1) {
    std::vector<u64> rest;
    split_into(n, rest);
    std::sort(rest.begin(), rest.end());
    for (u64 p : rest) push_factor(fac.factors, p);
  }
  return fac;
}

MultiplicativeValues multiplicative_suite(const Factorization& fac) {
  MultiplicativeValues v;
  for (const auto& [p, e] : fac.factors) {
    u64 pe1 = 1;
    for (int i = 1; i < e; ++i) pe1 *= p;
    v.phi *= pe1 * (p - 1);
    v.mu = e > 1 ? 0 : -v.mu;
    v.tau *= static_cast<u64>(e + 1);
    v.big_omega += e;
    v.p_plus = std::max(v.p_plus, p);
  }
  if (fac.factors.size() == 1) v.lambda_vm = std::log(static_cast<double>(fac.factors.front().p));
  return v;
}

MultiplicativeValues multiplicative_suite(u64 n) { return multiplicative_suite(factorize(n)); }

u64 sqrt_mod_prime(u64 a, u64 p) {
  a %= p;
  if (p == 2 || a == 0) return a;
  if (powmod(a, (p - 1) / 2, p) != 1) throw DomainError("sqrt_mod_prime: not a quadratic residue");
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::mt19937_64 rng(kSearchSeed);
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) z = 2 + rng() % (p - 2);
  u64 m = static_cast<u64>(s);
  u64 c = powmod(z, q, p);
  u64 t = powmod(a, q, p);
  u64 r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0;
    u64 tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

u64 sqrt_minus_one(u64 p) {
  if (p % 4 != 1) throw DomainError("sqrt_minus_one: p must be 1 mod 4");
  const u64 r = sqrt_mod_prime(p - 1, p);
  return std::min(r, p - r);
}

CongruenceRootSet roots_mod(const Factorization& fac) {
  CongruenceRootSet out;
  out.modulus = 1;
  out.roots = {0};
  for (const auto& [p, e] : fac.factors) {
    u64 pk = 1;
    const auto local = prime_power_roots(p, e, pk);
    if (local.empty()) {
      out.modulus = fac.n;
      out.roots.clear();
      return out;
    }
    // CRT: x = a (mod M), x = b (mod pk).
    const u64 M = out.modulus;
    const u64 newM = M * pk;
    const u64 inv = M == 1 ? 0 : invmod(M % pk, pk);
    std::vector<u64> next;
    next.reserve(out.roots.size() * local.size());
    for (u64 a : out.roots) {
      for (u64 b : local) {
        const u64 diff = (b + pk - a % pk) % pk;
        const u64 t = M == 1 ? b : mulmod(diff, inv, pk);
        const u64 x = M == 1 ? b : (a + static_cast<u64>(static_cast<u128>(M) * t % newM)) % newM;
        next.push_back(x);
      }
    }
    out.modulus = newM;
    out.roots = std::move(next);
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

CongruenceRootSet roots_mod(u64 d) {
  if (d == 0) throw DomainError("roots_mod: d must be positive");
  return roots_mod(factorize(d));
}

u64 rho(const Factorization& fac) {
  u64 r = 1;
  for (const auto& [p, e] : fac.factors) {
    if (p == 2) {
      if (e > 1) return 0;
    } else if (p % 4 == 3) {
      return 0;
    } else {
      r *= 2;
    }
  }
  return r;
}

u64 rho(u64 d) {
  if (d == 0) throw DomainError("rho: d must be positive");
  return roots_mod(d).rho();
}

int jacobi(i64 a, u64 n) {
  if (n == 0 || n % 2 == 0) throw DomainError("jacobi: n must be odd and positive");
  const i64 sn = static_cast<i64>(n);
  u64 x = static_cast<u64>(((a % sn) + sn) % sn);
  int result = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const u64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, n);
    if (x % 4 == 3 && n % 4 == 3) result = -result;
    x %= n;
  }
  return n == 1 ? result : 0;
}

double x_flat(double X) {
  if (!(X > 1.0)) throw DomainError("x_flat: X must exceed 1");
  return std::sqrt(X) * std::exp(-std::sqrt(std::log(X)));
}

}  // namespace sievekit::arith
