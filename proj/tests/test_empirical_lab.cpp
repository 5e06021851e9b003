#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "sievekit/empirical_lab.hpp"
#include "sievekit/errors.hpp"

using namespace sievekit;
using namespace sievekit::lab;

namespace {

const PrimeTable& table() {
  static const PrimeTable t = PrimeTable::build(2'000'000);
  return t;
}

const std::vector<SmoothWeight>& weights() {
  static const std::vector<SmoothWeight> w{SmoothWeight::sharp(), SmoothWeight::bump(), SmoothWeight::plateau()};
  return w;
}

}  // namespace

TEST_CASE("smooth weights") {
  const auto sharp = SmoothWeight::sharp();
  CHECK(sharp.mass() == 1.0);
  CHECK(sharp.at(10, 10) == 0.0);
  CHECK(sharp.at(11, 10) == 1.0);
  CHECK(sharp.at(20, 10) == 1.0);
  CHECK(sharp.at(21, 10) == 0.0);
  const auto bump = SmoothWeight::bump();
  const double mass = oracle::simpson([](double x) { return x <= 1 || x >= 2 ? 0.0 : std::exp(-1 / ((x - 1) * (2 - x))); },
                                      1.0, 2.0, 20000);
  CHECK(bump.mass() == doctest::Approx(mass).epsilon(1e-9));
  CHECK(bump(1.0) == 0.0);
  CHECK(bump(2.0) == 0.0);
  const auto plateau = SmoothWeight::plateau(0.1);
  CHECK(plateau(1.5) == 1.0);
  CHECK(plateau(1.0) == 0.0);
  CHECK(plateau.mass() > 0.85);
  CHECK(plateau.mass() < 1.0);
  CHECK(parse_weight_mode("bump") == WeightMode::Bump);
  CHECK(to_string(WeightMode::Plateau) == "plateau");
  CHECK_THROWS_AS(parse_weight_mode("gauss"), ParameterError);
  CHECK_THROWS_AS(SmoothWeight::plateau(0.6), ParameterError);
}

TEST_CASE("window guard") {
  CHECK_THROWS_AS(check_window(2'000'000, table()), ParameterError);
  CHECK_THROWS_AS(check_window(2'000'000'000ULL, table()), OverflowGuardError);
}

TEST_CASE("Q_ell fast path equals brute force") {
  for (const auto& w : weights()) {
    for (u64 ell = 1; ell <= 60; ++ell) {
      REQUIRE(Q_ell(1000, ell, w, table()) == Q_ell_bruteforce(1000, ell, w, table()));
    }
  }
  // independent trial-division oracle, sharp weight
  for (u64 ell : {2ULL, 5ULL, 10ULL, 13ULL, 65ULL}) {
    double c = 0;
    for (u64 p = 1001; p <= 2000; ++p)
      if (oracle::is_prime(p) && (p * p + 1) % ell == 0) c += 1;
    CHECK(Q_ell(1000, ell, SmoothWeight::sharp(), table()) == c);
  }
  CHECK(Q_ell(1000, 3, SmoothWeight::sharp(), table()) == 0.0);
  CHECK(Q_ell(1000, 4, SmoothWeight::sharp(), table()) == 0.0);
}

TEST_CASE("Q_ell(.; u)") {
  for (const auto& w : weights()) {
    for (u64 ell : {1ULL, 2ULL, 5ULL, 17ULL, 50ULL}) {
      REQUIRE(Q_ell_u(2000, ell, 3.0, w, table()) == Q_ell_u_bruteforce(2000, ell, 3.0, w, table()));
    }
  }
  const auto sharp = SmoothWeight::sharp();
  // u = 2 keeps exactly the primes
  CHECK(Q_ell_u(10, 5, 2.0, sharp, table()) == 2.0);
  CHECK(Q_ell_u(1000, 5, 2.0, sharp, table()) == Q_ell(1000, 5, sharp, table()));
  CHECK(Q_ell_u(1000, 1, 2.0, sharp, table()) == Q_ell(1000, 1, sharp, table()));
  CHECK(Q_ell_u(1000, 5, 1.0, sharp, table()) == 0.0);
  CHECK(Q_ell_u(10, 25, 13.0, sharp, table()) == 1.0);  // n = 18
}

TEST_CASE("sifted counts") {
  double c = 0, cc = 0;
  for (u64 n = 1001; n <= 2000; ++n) {
    const auto spf = oracle::prime_factors_with_multiplicity(n).front();
    if (spf > 11 && n % 4 == 1) c += 1;
    if (spf > 11 && n % 2 == 1) cc += 1;
  }
  CHECK(phi_sifted(1000, 11, 4, 1, SmoothWeight::sharp(), table()) == c);
  CHECK(phi_sifted_coprime(1000, 11, 4, SmoothWeight::sharp(), table()) == cc);
  CHECK_THROWS_AS(phi_sifted(1000, 11, 4, 2, SmoothWeight::sharp(), table()), DomainError);
}

TEST_CASE("A_d and r_d") {
  for (const auto& w : weights()) {
    for (u64 ell : {1ULL, 2ULL, 5ULL, 10ULL, 25ULL, 65ULL, 130ULL})
      for (u64 d : {1ULL, 2ULL, 3ULL, 5ULL, 10ULL, 13ULL, 26ULL})
        REQUIRE(A_d_count(5000, ell, d, w) == A_d_count_bruteforce(5000, ell, d, w));
  }
  const auto sharp = SmoothWeight::sharp();
  CHECK(r_d_error(1000, 5, 1, sharp) == doctest::Approx(A_d_count(1000, 5, 1, sharp) - 2.0 * 1000 / 5));
  CHECK(std::abs(r_d_error(1000, 5, 1, sharp)) <= 2.0);
}

TEST_CASE("BV and Wolke averages") {
  const auto sharp = SmoothWeight::sharp();
  CHECK(bv_error_value(1000, 0, sharp, table()) == 0.0);
  CHECK(bv_error_value(10'000, 0, sharp, table()) == doctest::Approx(4.0));
  CHECK(bv_error_value(10'000, 1, sharp, table()) == doctest::Approx(8.5));
  CHECK(bv_error_value(100'000, 0, sharp, table()) == doctest::Approx(87.0));
  CHECK(wolke_error_value(10'000, 11, 0, sharp, table()) == doctest::Approx(2.0));
  CHECK(wolke_error_value(10'000, 11, 1, sharp, table()) == doctest::Approx(5.0));
  CHECK(wolke_error_value(10'000, 100, 0, sharp, table()) == doctest::Approx(2.0));
  const u64 Xs[] = {10'000, 100'000};
  const auto r = bv_error_average(Xs, 1, sharp, table());
  CHECK(r.invariants_ok);
  CHECK(r.values.at("value_X10000") == doctest::Approx(8.5));
}

TEST_CASE("Chebyshev-Hooley decomposition") {
  // log m = sum_{l | m} Lambda(l) for m = p^2 + 1
  for (u64 p : {3ULL, 5ULL, 13ULL}) {
    const u64 m = p * p + 1;
    double s = 0;
    for (u64 l = 2; l <= m; ++l) {
      if (m % l) continue;
      const auto f = oracle::prime_factors_with_multiplicity(l);
      if (f.front() == f.back()) s += std::log(double(f.front()));
    }
    CHECK(s == doctest::Approx(std::log(double(m))).epsilon(1e-14));
  }
  for (const auto& w : weights()) {
    const auto c = chebyshev_components(10'000, 0.847, w, table());
    CHECK(c.H_direct == doctest::Approx(c.H_divisor).epsilon(1e-9));
    CHECK(c.H1 + c.H2 + c.H3 + c.H4 == doctest::Approx(c.prime_sum).epsilon(1e-9));
    CHECK(c.H4 == doctest::Approx(c.H4_roots).epsilon(1e-9));
    CHECK(c.H4 / 10'000 < 0.1);
  }
  CHECK(chebyshev_decomposition(10'000, 0.847, SmoothWeight::sharp(), table()).invariants_ok);
  CHECK_THROWS_AS(chebyshev_components(10'000, 0.5, SmoothWeight::sharp(), table()), DomainError);
}

TEST_CASE("Brun-Titchmarsh exceptions") {
  const auto r = bt_exception_count(100'000, 0.55, SmoothWeight::sharp(), table(), 4);
  CHECK(r.counters.at("moduli") == 562);
  CHECK(r.counters.at("rho_positive") == 99);
  CHECK(r.counters.at("exceptions") == 0);
  CHECK(r.values.at("exception_fraction") == 0.0);
  const auto serial = bt_exception_count(100'000, 0.55, SmoothWeight::sharp(), table(), 1);
  CHECK(to_json(serial) == to_json(r));
  const auto r65 = bt_exception_count(100'000, 0.65, SmoothWeight::sharp(), table(), 4);
  CHECK(r65.counters.at("moduli") == 1778);
  CHECK(r65.counters.at("rho_positive") == 293);
}

TEST_CASE("Weil sums") {
  const auto s = weil_sum(3, 5, 1);
  CHECK(s.S == 1);
  CHECK(s.bound == doctest::Approx(std::sqrt(15.0)));
  CHECK(s.S == s.S_p * s.S_q);
  long long direct = 0;
  for (long long l = 0; l < 15; ++l) direct += oracle::jacobi(l * l - 1, 15);
  CHECK(direct == 1);
  const auto deg = weil_sum(3, 5, 3);
  CHECK(deg.degenerate);
  CHECK(weil_sum_check(3, 5, 3).invariants_ok);
  CHECK_THROWS_AS(weil_sum(7, 7, 1), DomainError);
  CHECK_THROWS_AS(weil_sum(2, 7, 1), DomainError);
  const auto ex = weil_exhaustive(10'000, 31);
  CHECK(ex.invariants_ok);
  CHECK(ex.counters.at("violations") == 0);
}

TEST_CASE("square sieve count") {
  CHECK(square_sieve_count(10, 2) == 0);
  CHECK(square_sieve_count(10, 4) == 1);
  for (u64 L : {1ULL, 7ULL, 30ULL, 100ULL}) CHECK(square_sieve_count(5000, L) == square_sieve_count_bruteforce(5000, L));
  CHECK_THROWS_AS(square_sieve_count(10, 11), DomainError);
}

TEST_CASE("weighted sieve") {
  const auto params = verify::WeightedSieveParams::make(1.0 / 12, 0.622, 4);
  const auto res = weighted_sieve_components(100'000, params, SmoothWeight::sharp(), table());
  CHECK(res.psi_direct == doctest::Approx(res.psi_identity).epsilon(1e-9));
  CHECK(res.omega_bound_violations == 0);
  CHECK(res.contributing_Pr <= res.contributing);
  CHECK(res.contributing <= res.sifted);
  const auto big = weighted_sieve_components(1'000'000, params, SmoothWeight::sharp(), table());
  CHECK(big.S_A == 70435.0);
  CHECK(big.sifted == 70435);
  const auto rep = weighted_sieve_experiment(100'000, params, SmoothWeight::bump(), table());
  CHECK(rep.invariants_ok);
}

TEST_CASE("surveys") {
  const auto counts = almost_prime_counts(10'000, table());
  CHECK(counts == std::vector<long long>{117, 464, 803, 974, 1025, 1031});
  CHECK(almost_prime_counts(2, table())[0] == 1);  // p = 3: (9 + 1)/2 = 5
  CHECK(almost_prime_survey(10'000, 4, table()).counters.at("count") == 974);
  CHECK(almost_prime_survey(10'000, 9, table()).counters.at("count") == 1033);

  const auto g = gpf_survey(2, 0.847, table());  // p = 3
  CHECK(g.counters.at("qualifying") == 1);
  const auto g13 = gpf_survey(12, 0.847, table());  // p = 13, 17, 19, 23
  CHECK(g13.counters.at("primes") == 4);
  CHECK(g13.counters.at("qualifying") >= 1);

  const auto d = dartyge_survey(100'000, 11.2, table());
  CHECK(d.counters.at("qualifiers") == 50000);
  CHECK(d.counters.at("ratio_above_1") == 37389);
  CHECK(d.counters.at("ratio_above_1_P11") == 37389);
  const std::string csv = histogram_csv(d);
  CHECK(csv.rfind("bin,count\n", 0) == 0);
  CHECK(csv.find("\n1.9,5921\n") != std::string::npos);
  CHECK(csv.find("\n0.3,4\n") != std::string::npos);
  CHECK_THROWS_AS(histogram_csv(g), ParameterError);
  // n = 11: P+(122) = 61
  const auto d11 = dartyge_survey(10, 11.2, table());
  CHECK(d11.counters.at("ratio_above_1") >= 1);
}
