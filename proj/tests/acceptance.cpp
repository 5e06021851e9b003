// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "sievekit/empirical_lab.hpp"
#include "sievekit/errors.hpp"
#include "sievekit/theorem_verifier.hpp"

using namespace sievekit;
using arith::u64;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  o.detail.precision(10);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.ok = false;
    o.detail << " [over time budget " << budget_s << " s]";
  }
  failures += !o.ok;
  std::printf("%s %d %s:%s (%.2f s)\n", o.ok ? "PASS" : "FAIL", id, title, o.detail.str().c_str(), secs);
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "three-piece integral at vartheta = 0.847", 1.0, [](Outcome& o) {
    const auto t = verify::theorem2_total(0.847);
    const double v = verify::find_max_vartheta();
    o.detail << " total=" << t.antiderivative << " quadrature=" << t.quadrature << " max_vartheta=" << v;
    o.check(t.antiderivative < 1.5, "total < 3/2");
    o.check(std::abs(t.antiderivative - t.quadrature) < 1e-3, "routes within 1e-3");
    o.check(std::abs(t.antiderivative - 1.4985) < 1e-3, "total near 1.4985");
    o.check(v >= 0.847, "max vartheta >= 0.847");
  });

  criterion(2, "u = 11.2 inequality", 10.0, [](Outcome& o) {
    const auto tables = sieve::SieveTables::build(1e-4, 14.0);
    const auto m11 = verify::dartyge_margin(11.2, verify::kDartygeTheta0, tables);
    const auto m12 = verify::dartyge_margin(12.2, verify::kDartygeTheta0, tables, verify::Sigma2Policy::MonotoneCap);
    o.detail << " margin(11.2)=" << m11.margin << " sigma2 max arg=" << m11.computed.at("max_sigma2_argument")
             << " margin(12.2, capped sigma2)=" << m12.margin;
    o.check(m11.margin > 0, "margin(11.2) > 0");
    o.check(m11.computed.at("sigma2_contained") == 1.0, "sigma2 containment at u = 11.2");
    o.check(m12.margin > 0, "margin(12.2) > 0");
  });

  criterion(3, "weighted-sieve constants", 30.0, [](Outcome& o) {
    const double delta = verify::solve_delta();
    o.check(delta >= 0.435 && delta <= 0.445, "delta in [0.435, 0.445]");
    std::mt19937_64 rng(20160847);
    std::uniform_real_distribution<double> dist(0.0, 8015.0 / 11659.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      double th = dist(rng);
      if (th == 0.0) th = 1e-6;
      const auto g = verify::optimize_gamma12(th);
      worst = std::max(worst, std::abs(g.grid_product - (91 - 89 * th) * (91 - 89 * th) / 22072));
    }
    o.check(worst < 1e-9, "gamma1 gamma2 within 1e-9");
    bool infeasible = false;
    try {
      verify::optimize_gamma12(8015.0 / 11659.0);
    } catch (const InfeasibleError&) {
      infeasible = true;
    }
    o.check(infeasible, "boundary at 8015/11659");
    const auto tables = sieve::SieveTables::build();
    const auto C = verify::compute_C(verify::WeightedSieveParams::make(1.0 / 12, 0.622, 4), tables.linear);
    o.detail << " delta=" << delta << " max|grid-closed|=" << worst << " C=" << C.margin;
    o.check(std::abs(C.margin - 0.0568) <= 3e-3, "C = 0.0568 +- 0.003");
    o.check(C.passed, "C > 0");
  });

  criterion(4, "sieve-function suite", 10.0, [](Outcome& o) {
    const auto tables = sieve::SieveTables::build();
    double wF = 0, wf = 0;
    for (double s = 1.0; s <= 5.0; s += 0.001) {
      const double ref = s <= 3.0 ? 2 * oracle::exp_gamma() / s : oracle::F_3_5(s);
      wF = std::max(wF, std::abs(tables.linear.F_interp(s) - ref));
    }
    for (double s = 0.001; s <= 4.0; s += 0.001) {
      const double ref = s <= 2.0 ? 0.0 : oracle::f_2_4(s);
      wf = std::max(wf, std::abs(tables.linear.f_interp(s) - ref));
    }
    double gap = 0;
    for (auto br : {verify::kBreak1, verify::kBreak2}) {
      const double t = br.value();
      gap = std::max(gap, std::abs(verify::gamma_theta(std::nextafter(t, 0.0)) - verify::gamma_theta(std::nextafter(t, 1.0))));
    }
    double uw = 0;
    for (double u = 1.0; u <= 2.0; u += 1e-3) uw = std::max(uw, std::abs(u * sieve::buchstab_w(u, tables.buchstab) - 1.0));
    const double w112 = sieve::buchstab_w(11.2, tables.buchstab);
    o.detail << " |F-ref|=" << wF << " |f-ref|=" << wf << " gamma gap=" << gap << " |uw-1|=" << uw
             << " w(11.2)=" << w112;
    o.check(wF < 1e-6 && wf < 1e-6, "closed form agreement 1e-6");
    o.check(gap < 1e-12, "gamma continuity 1e-12");
    o.check(uw <= 2.3e-16, "uw = 1 on [1,2]");
    o.check(std::abs(w112 - std::exp(-oracle::kEulerGamma)) < 5e-3, "|w(11.2) - e^-gamma| < 5e-3");
  });

  criterion(5, "arithmetic oracle suite", 120.0, [](Outcome& o) {
    long long bad_rho = 0, bad_class = 0, bad_q = 0;
    for (u64 d = 1; d <= 5000; ++d) bad_rho += arith::rho(d) != oracle::rho(d);
    const auto primes = arith::PrimeTable::build(100'000);
    for (u64 p : primes.primes()) bad_class += arith::rho(p) != (p == 2 ? 1u : (p % 4 == 1 ? 2u : 0u));
    const auto small = arith::PrimeTable::build(20'000);
    for (auto mode : {lab::WeightMode::Sharp, lab::WeightMode::Bump, lab::WeightMode::Plateau}) {
      const auto w = lab::SmoothWeight::make(mode);
      for (u64 X : {1000ULL, 10'000ULL})
        for (u64 ell = 1; ell <= 200; ++ell) bad_q += lab::Q_ell(X, ell, w, small) != lab::Q_ell_bruteforce(X, ell, w, small);
    }
    const auto weil = lab::weil_exhaustive(97 * 89, 97);
    o.detail << " rho mismatches=" << bad_rho << " class mismatches=" << bad_class << " Q_ell mismatches=" << bad_q
             << " Weil triples=" << weil.counters.at("triples_checked") << " violations=" << weil.counters.at("violations");
    o.check(bad_rho == 0 && bad_class == 0, "rho oracle");
    o.check(bad_q == 0, "Q_ell oracle");
    o.check(weil.invariants_ok && weil.counters.at("pairs") == 276, "Weil exhaustive");
  });

  criterion(6, "Chebyshev-Hooley identity and decomposition", 300.0, [](Outcome& o) {
    const auto primes = arith::PrimeTable::build(2'000'000);
    double prev = 1e300, ratio = 0;
    bool decreasing = true;
    for (u64 X : {10'000ULL, 100'000ULL, 1'000'000ULL}) {
      const auto c = lab::chebyshev_components(X, 0.847, lab::SmoothWeight::sharp(), primes);
      const double rel = std::abs(c.H_direct - c.H_divisor) / c.H_direct;
      const double h4 = c.H4 / static_cast<double>(X);
      o.detail << " X=" << X << ": rel=" << rel << " H4/X=" << h4;
      o.check(rel <= 1e-9, "dual H(X) at X=" + std::to_string(X));
      decreasing = decreasing && h4 < prev;
      prev = h4;
      ratio = c.H1 / c.H1_model;
    }
    o.detail << " H1/model(1e6)=" << ratio;
    o.check(ratio >= 0.95 && ratio <= 1.05, "H1/H1_model in [0.95, 1.05]");
    o.check(decreasing, "H4/X decreasing");
  });

  criterion(7, "weighted-sieve experiment", 300.0, [](Outcome& o) {
    const auto primes = arith::PrimeTable::build(2'000'000);
    const auto params = verify::WeightedSieveParams::make(1.0 / 12, 0.622, 4);
    const auto big = lab::weighted_sieve_components(1'000'000, params, lab::SmoothWeight::sharp(), primes);
    const double rel = std::abs(big.psi_direct - big.psi_identity) / std::abs(big.psi_direct);
    const auto mid = lab::weighted_sieve_components(100'000, params, lab::SmoothWeight::sharp(), primes);
    const auto survey = lab::almost_prime_survey(1'000'000, 4, primes);
    o.detail << " identity rel=" << rel << " squarefree checked(1e5)=" << mid.squarefree_checked
             << " violations=" << mid.omega_bound_violations << " P4 count(1e6)=" << survey.counters.at("count");
    o.check(rel <= 1e-9, "identity 1e-9");
    o.check(mid.omega_bound_violations == 0 && big.omega_bound_violations == 0, "Omega bound");
    o.check(survey.counters.at("count") > 0, "almost primes present");
  });

  criterion(8, "surveys (report-grade)", 300.0, [](Outcome& o) {
    const auto primes = arith::PrimeTable::build(2'000'000);
    const auto g = lab::gpf_survey(1'000'000, 0.847, primes);
    const auto d = lab::dartyge_survey(100'000, 11.2, primes);
    o.detail << " gpf fraction=" << g.values.at("fraction") << " dartyge ratio>1 among P11=" << d.counters.at("ratio_above_1_P11")
             << " of " << d.counters.at("qualifiers");
    o.check(g.values.at("fraction") > 0, "gpf fraction positive");
    o.check(d.counters.at("ratio_above_1_P11") > 0, "dartyge count positive");
  });

  return failures == 0 ? 0 : 1;
}
