#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sievekit/empirical_lab.hpp"
#include "sievekit/errors.hpp"
#include "sievekit/numerics.hpp"
#include "sievekit/theorem_verifier.hpp"

using namespace sievekit;
using arith::u64;

namespace {

constexpr u64 kSeed = 20160847;

const sieve::SieveTables& tables() {
  static const sieve::SieveTables t = sieve::SieveTables::build();
  return t;
}

const arith::PrimeTable& primes() {
  static const arith::PrimeTable t = arith::PrimeTable::build(200'000);
  return t;
}

}  // namespace

TEST_CASE("F decreasing, f increasing, f <= 1 <= F") {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> dist(2.0, 13.9);
  for (int i = 0; i < 500; ++i) {
    const double a = dist(rng), b = dist(rng);
    const double lo = std::min(a, b), hi = std::max(a, b);
    REQUIRE(sieve::eval_F(lo, tables().linear) >= sieve::eval_F(hi, tables().linear) - 1e-9);
    REQUIRE(sieve::eval_f(lo, tables().linear) <= sieve::eval_f(hi, tables().linear) + 1e-9);
    REQUIRE(sieve::eval_F(lo, tables().linear) >= 1.0 - 1e-9);
    REQUIRE(sieve::eval_f(lo, tables().linear) <= 1.0 + 1e-9);
  }
}

TEST_CASE("w stays in [1/2, 1] and approaches exp(-gamma)") {
  std::mt19937_64 rng(kSeed + 1);
  std::uniform_real_distribution<double> dist(1.0, 12.0);
  for (int i = 0; i < 500; ++i) {
    const double w = sieve::buchstab_w(dist(rng), tables().buchstab);
    REQUIRE(w >= 0.5);
    REQUIRE(w <= 1.0);
  }
  for (double u = 8.0; u <= 12.0; u += 0.5)
    CHECK(std::abs(sieve::buchstab_w(u, tables().buchstab) - std::exp(-oracle::kEulerGamma)) < 1e-4);
}

TEST_CASE("rho is multiplicative and matches residue classes") {
  std::mt19937_64 rng(kSeed + 2);
  std::uniform_int_distribution<u64> dist(1, 100'000);
  for (int i = 0; i < 300; ++i) {
    const u64 a = dist(rng), b = dist(rng);
    if (arith::gcd(a, b) != 1) continue;
    REQUIRE(arith::rho(a * b) == arith::rho(a) * arith::rho(b));
  }
  for (u64 p : primes().primes()) {
    if (p > 100'000) break;
    const u64 expect = p == 2 ? 1 : (p % 4 == 1 ? 2 : 0);
    REQUIRE(arith::rho(p) == expect);
  }
}

TEST_CASE("Q_ell splits over the root classes") {
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_int_distribution<u64> dist(1, 200);
  const auto w = lab::SmoothWeight::plateau();
  for (int i = 0; i < 40; ++i) {
    const u64 ell = dist(rng);
    const auto roots = arith::roots_mod(ell);
    std::vector<double> parts;
    for (u64 r : roots.roots) {
      std::vector<double> cls;
      for (u64 p : primes().primes_in(5000, 10'000))
        if (p % ell == r) cls.push_back(w.at(p, 5000));
      parts.push_back(num::pairwise_sum(cls));
    }
    double total = 0;
    for (double v : parts) total += v;
    REQUIRE(lab::Q_ell(5000, ell, w, primes()) == doctest::Approx(total).epsilon(1e-12));
  }
}

TEST_CASE("A_d over CRT classes reproduces the direct count") {
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_int_distribution<u64> dl(1, 500), dd(1, 60);
  const auto w = lab::SmoothWeight::sharp();
  for (int i = 0; i < 100; ++i) {
    const u64 ell = dl(rng), d = dd(rng);
    REQUIRE(lab::A_d_count(3000, ell, d, w) == lab::A_d_count_bruteforce(3000, ell, d, w));
  }
}

TEST_CASE("Weil sum factors over p and q") {
  std::mt19937_64 rng(kSeed + 5);
  std::vector<u64> odd;
  for (u64 p : primes().primes()) {
    if (p > 97) break;
    if (p > 2) odd.push_back(p);
  }
  std::uniform_int_distribution<std::size_t> pick(0, odd.size() - 1);
  int done = 0;
  while (done < 50) {
    const u64 p = odd[pick(rng)], q = odd[pick(rng)];
    if (p == q) continue;
    const u64 m = std::uniform_int_distribution<u64>(1, p * q)(rng);
    const auto s = lab::weil_sum(p, q, m);
    REQUIRE(s.S == s.S_p * s.S_q);
    if (!s.degenerate) REQUIRE(std::abs(double(s.S)) <= std::sqrt(double(p * q)));
    ++done;
  }
}

TEST_CASE("gamma1 gamma2 optimum matches the closed form") {
  std::mt19937_64 rng(kSeed + 6);
  std::uniform_real_distribution<double> dist(0.01, 8015.0 / 11659.0 - 1e-6);
  for (int i = 0; i < 100; ++i) {
    const double th = dist(rng);
    const auto o = verify::optimize_gamma12(th);
    const double closed = (91 - 89 * th) * (91 - 89 * th) / 22072;
    REQUIRE(std::abs(o.product - closed) < 1e-9);
    REQUIRE(std::abs(o.grid_product - closed) < 1e-9);
    REQUIRE(o.gamma1 + th < 112.0 / 131.0);
  }
}

TEST_CASE("three-piece total is increasing and both routes agree") {
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_real_distribution<double> dist(0.5, 0.94);
  for (int i = 0; i < 50; ++i) {
    double a = dist(rng), b = dist(rng);
    if (a > b) std::swap(a, b);
    const auto ta = verify::theorem2_total(a), tb = verify::theorem2_total(b);
    REQUIRE(ta.antiderivative <= tb.antiderivative);
    REQUIRE(std::abs(ta.antiderivative - ta.quadrature) < 1e-6);
  }
}

TEST_CASE("reports: passed iff margin > 0, tolerances for every value") {
  for (double v : {0.80, 0.847, 0.8472, 0.85, 0.9}) {
    const auto r = verify::theorem2_integral(v);
    REQUIRE(r.passed == (r.margin > 0));
    for (const auto& [k, val] : r.computed) REQUIRE(r.tolerances.contains(k));
  }
  const auto j = to_json(verify::theorem2_integral(0.847));
  const auto back = theorem_report_from_json(j);
  CHECK(to_json(back) == j);
}

TEST_CASE("parallel map and pairwise sum are deterministic") {
  std::mt19937_64 rng(kSeed + 8);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(10'001);
  for (auto& x : v) x = dist(rng) * 1e6;
  const double s = num::pairwise_sum(v);
  for (unsigned t : {1u, 2u, 3u, 8u}) {
    const auto out = num::parallel_map<double>(v.size(), t, [&](std::size_t i) { return v[i] * 2; });
    REQUIRE(num::pairwise_sum(out) == 2 * s);
  }
}

TEST_CASE("sifted n with positive Richert weight respect the Omega bound") {
  // Sum_{q | m} (1 - log q / log y) = Omega(m) - log m / log y for squarefree m.
  std::mt19937_64 rng(kSeed + 9);
  std::uniform_int_distribution<u64> dist(2, 1'000'000);
  const double log_y = std::log(5000.0);
  for (int i = 0; i < 300; ++i) {
    const u64 m = dist(rng);
    const auto f = oracle::prime_factors_with_multiplicity(m);
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) continue;
    double s = 0;
    for (u64 q : f) s += 1 - std::log(double(q)) / log_y;
    REQUIRE(s == doctest::Approx(double(f.size()) - std::log(double(m)) / log_y).epsilon(1e-12));
  }
}
