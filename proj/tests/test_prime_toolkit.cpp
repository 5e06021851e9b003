#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sievekit/errors.hpp"
#include "sievekit/prime_toolkit.hpp"
#include "sievekit/quadratic_sieve.hpp"

using namespace sievekit;
using namespace sievekit::arith;

namespace {

const PrimeTable& table() {
  static const PrimeTable t = PrimeTable::build(200'000);
  return t;
}

u64 product_of(const Factorization& f) {
  u64 n = 1;
  for (const auto& [p, e] : f.factors)
    for (int i = 0; i < e; ++i) n *= p;
  return n;
}

}  // namespace

TEST_CASE("prime table") {
  const auto& t = table();
  CHECK(t.pi(10) == 4);
  CHECK(t.pi(100) == 25);
  CHECK(t.pi(100'000) == 9592);
  CHECK(t.primes_in(1000, 2000).size() == 135);
  for (u64 n = 2; n < 3000; ++n) {
    REQUIRE(t.is_prime(n) == oracle::is_prime(n));
    REQUIRE(t.spf(n) == oracle::prime_factors_with_multiplicity(n).front());
  }
  CHECK_THROWS_AS(PrimeTable::build(1), ParameterError);
}

TEST_CASE("miller rabin") {
  for (u64 n = 0; n < 5000; ++n) REQUIRE(is_prime_u64(n) == oracle::is_prime(n));
  CHECK(is_prime_u64(1'000'000'007ULL));
  CHECK(is_prime_u64(2'305'843'009'213'693'951ULL));  // 2^61 - 1
  CHECK_FALSE(is_prime_u64(3'215'031'751ULL));         // strong pseudoprime to 2, 3, 5, 7
  CHECK_FALSE(is_prime_u64(1'000'000'007ULL * 998'244'353ULL));
}

TEST_CASE("factorisation") {
  for (u64 n = 1; n < 3000; ++n) {
    const auto f = factorize(n, &table());
    REQUIRE(product_of(f) == n);
    std::vector<u64> flat;
    for (const auto& [p, e] : f.factors)
      for (int i = 0; i < e; ++i) flat.push_back(p);
    REQUIRE(flat == oracle::prime_factors_with_multiplicity(n));
  }
  const u64 big = 1'000'000'007ULL * 998'244'353ULL;
  const auto f = factorize(big);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].p == 998'244'353ULL);
  CHECK(f.factors[1].p == 1'000'000'007ULL);
  CHECK(factorize(1ULL << 62).factors == std::vector<PrimePower>{{2, 62}});
  CHECK_THROWS_AS(factorize(0), DomainError);
  CHECK_THROWS_AS(factorize(1ULL << 63), OverflowGuardError);
}

TEST_CASE("multiplicative functions") {
  const auto v = multiplicative_suite(360);
  CHECK(v.phi == 96);
  CHECK(v.mu == 0);
  CHECK(v.tau == 24);
  CHECK(v.big_omega == 6);
  CHECK(v.p_plus == 5);
  CHECK(v.lambda_vm == 0.0);
  CHECK(multiplicative_suite(30).mu == -1);
  CHECK(multiplicative_suite(27).lambda_vm == doctest::Approx(std::log(3.0)));
  CHECK(multiplicative_suite(1).phi == 1);
}

TEST_CASE("modular arithmetic") {
  CHECK(mulmod(~0ULL - 1, ~0ULL - 2, ~0ULL) == 2);
  CHECK(powmod(2, 10, 1000) == 24);
  CHECK(invmod(3, 7) == 5);
  CHECK(gcd(0, 12) == 12);
  for (u64 p : {5ULL, 13ULL, 17ULL, 1'000'000'009ULL}) {
    const u64 r = sqrt_minus_one(p);
    CHECK(mulmod(r, r, p) == p - 1);
    CHECK(r <= p - r);
  }
  CHECK(sqrt_mod_prime(2, 7) * sqrt_mod_prime(2, 7) % 7 == 2);
}

TEST_CASE("rho against brute force") {
  for (u64 d = 1; d <= 2000; ++d) REQUIRE(rho(d) == oracle::rho(d));
  CHECK(rho(1) == 1);
  CHECK(rho(2) == 1);
  CHECK(rho(4) == 0);
  CHECK(rho(5) == 2);
  CHECK(rho(65) == 4);
  CHECK(rho(25) == 2);
}

TEST_CASE("roots mod d are sorted and correct") {
  for (u64 d : {1ULL, 2ULL, 5ULL, 10ULL, 65ULL, 125ULL, 1105ULL, 5525ULL, 2ULL * 5 * 13 * 17 * 29}) {
    const auto r = roots_mod(d);
    CHECK(r.modulus == d);
    CHECK(std::is_sorted(r.roots.begin(), r.roots.end()));
    CHECK(r.rho() == oracle::rho(d));
    for (u64 a : r.roots) CHECK((a * a + 1) % d == 0);
  }
  const u64 big = 1'000'000'009ULL * 1'000'000'021ULL;  // both = 1 mod 4
  const auto r = roots_mod(big);
  CHECK(r.rho() == 4);
  for (u64 a : r.roots) CHECK(mulmod(a, a, big) == big - 1);
}

TEST_CASE("jacobi symbol") {
  for (u64 n = 1; n < 200; n += 2)
    for (long long a = -30; a < 60; ++a) REQUIRE(jacobi(a, n) == oracle::jacobi(a, n));
  CHECK_THROWS(jacobi(3, 8));
}

TEST_CASE("x flat") {
  CHECK(x_flat(1e4) == doctest::Approx(100.0 * std::exp(-std::sqrt(std::log(1e4)))));
  CHECK_THROWS_AS(x_flat(1.0), DomainError);
}

TEST_CASE("quadratic sieve factors n^2 + 1") {
  const u64 lo = 100'001, hi = 101'000;
  const QuadraticFactorSieve sieve(table(), hi);
  u64 expected = lo;
  sieve.for_each(lo, hi, [&](u64 n, std::span<const PrimePower> fac) {
    REQUIRE(n == expected++);
    u64 prod = 1;
    std::vector<u64> flat;
    for (const auto& [p, e] : fac)
      for (int i = 0; i < e; ++i) {
        prod *= p;
        flat.push_back(p);
      }
    REQUIRE(prod == n * n + 1);
    std::sort(flat.begin(), flat.end());
    REQUIRE(flat == oracle::prime_factors_with_multiplicity(n * n + 1));
  });
  CHECK(expected == hi + 1);
}
