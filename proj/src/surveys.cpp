#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "sievekit/empirical_lab.hpp"
#include "sievekit/errors.hpp"
#include "sievekit/numerics.hpp"
#include "sievekit/quadratic_sieve.hpp"

namespace sievekit::lab {

namespace {

using arith::PrimePower;

void check_survey_window(u64 X, const PrimeTable& primes) {
  if (X > 10'000'000ULL) throw OverflowGuardError("survey: X must be <= 1e7");
  check_window(X, primes);
}

int big_omega(std::span<const PrimePower> fac) {
  int k = 0;
  for (const auto& pp : fac) k += pp.e;
  return k;
}

u64 largest_prime(std::span<const PrimePower> fac) {
  u64 best = 1;
  for (const auto& pp : fac) best = std::max(best, pp.p);
  return best;
}

// Visits primes p in (X, 2X] with the factorisation of (p^2 + 1) / 2.
template <class Fn>
void for_each_prime_half(u64 X, const PrimeTable& primes, Fn&& fn) {
  const arith::QuadraticFactorSieve sieve(primes, 2 * X);
  std::vector<PrimePower> half;
  sieve.for_each(X + 1, 2 * X, [&](u64 n, std::span<const PrimePower> fac) {
    if (!primes.is_prime(n)) return;
    half.assign(fac.begin(), fac.end());
    for (auto it = half.begin(); it != half.end(); ++it) {
      if (it->p == 2) {
        if (--it->e == 0) half.erase(it);
        break;
      }
    }
    fn(n, std::span<const PrimePower>(half));
  });
}

}  // namespace

// -- weighted sieve -------------------------------------------------------------

WeightedSieveResult weighted_sieve_components(u64 X, const verify::WeightedSieveParams& params,
                                              const SmoothWeight& w, const PrimeTable& primes) {
  check_survey_window(X, primes);
  params.validate();
  WeightedSieveResult out;
  const double Xd = static_cast<double>(X);
  out.z = std::pow(Xd, params.alpha);
  out.y = std::pow(Xd, params.beta);
  const double eta = params.eta();
  const double log_y = std::log(out.y);

  std::vector<double> s_a, psi;
  std::map<u64, std::vector<double>> s_q;  // S(A_q, z) contributions by q
  for_each_prime_half(X, primes, [&](u64 p, std::span<const PrimePower> fac) {
    const double g = w.at(p, X);
    if (g == 0.0) return;
    // gcd(m, P(z)) = 1 with P(z) the odd primes below z; m is odd for odd p
    for (const auto& pp : fac) {
      if (pp.p > 2 && static_cast<double>(pp.p) < out.z) return;
    }
    ++out.sifted;
    s_a.push_back(g);
    double inner = 0.0;
    for (const auto& pp : fac) {
      const auto q = static_cast<double>(pp.p);
      if (q >= out.z && q < out.y) {
        inner += 1.0 - std::log(q) / log_y;
        s_q[pp.p].push_back(g);
      }
    }
    const double weight = 1.0 - inner / eta;
    psi.push_back(g * weight);
    if (weight <= 0.0) return;
    ++out.contributing;
    const int omega = big_omega(fac);
    if (omega <= params.r) ++out.contributing_Pr;
    const bool squarefree = std::all_of(fac.begin(), fac.end(), [](const PrimePower& pp) { return pp.e == 1; });
    if (squarefree) {
      ++out.squarefree_checked;
      const double m = (static_cast<double>(p) * static_cast<double>(p) + 1.0) / 2.0;
      if (!(omega < eta + std::log(m) / log_y)) ++out.omega_bound_violations;
    }
  });
  out.S_A = num::pairwise_sum(s_a);
  out.psi_direct = num::pairwise_sum(psi);
  std::vector<double> weighted_q;
  weighted_q.reserve(s_q.size());
  for (const auto& [q, gs] : s_q) {
    weighted_q.push_back((1.0 - std::log(static_cast<double>(q)) / log_y) * num::pairwise_sum(gs));
  }
  out.psi_identity = out.S_A - num::pairwise_sum(weighted_q) / eta;
  return out;
}

ExperimentReport weighted_sieve_experiment(u64 X, const verify::WeightedSieveParams& params,
                                           const SmoothWeight& w, const PrimeTable& primes) {
  const WeightedSieveResult res = weighted_sieve_components(X, params, w, primes);
  ExperimentReport r;
  r.name = "weighted_sieve_experiment";
  r.parameters["X"] = X;
  r.parameters["alpha"] = params.alpha;
  r.parameters["beta"] = params.beta;
  r.parameters["delta"] = params.delta;
  r.parameters["r"] = params.r;
  r.parameters["weight"] = to_string(w.mode());
  r.values["z"] = res.z;
  r.values["y"] = res.y;
  r.values["eta"] = params.eta();
  r.values["S_A_z"] = res.S_A;
  r.values["psi"] = res.psi_direct;
  r.values["psi_identity"] = res.psi_identity;
  const double Xd = static_cast<double>(X);
  const double lx = std::log(Xd);
  r.values["psi_over_X_log2"] = res.psi_direct / (Xd / (lx * lx));
  r.counters["sifted"] = res.sifted;
  r.counters["contributing"] = res.contributing;
  r.counters["contributing_Pr"] = res.contributing_Pr;
  r.counters["squarefree_checked"] = res.squarefree_checked;
  r.counters["omega_bound_violations"] = res.omega_bound_violations;
  const double scale = std::max({std::abs(res.psi_direct), std::abs(res.S_A), 1e-300});
  r.residuals["identity_relative"] = std::abs(res.psi_direct - res.psi_identity) / scale;
  if (res.z <= 3.0) r.note("warning: z <= 3, the sifting set P(z) is empty");
  r.require(r.residuals["identity_relative"] <= 1e-9, "Psi = S(A,z) - eta^-1 sum w_q S(A_q,z)");
  r.require(res.omega_bound_violations == 0, "Omega(m) < eta + log m / log y on squarefree sifted m");
  return r;
}

// -- surveys --------------------------------------------------------------------

std::vector<long long> almost_prime_counts(u64 X, const PrimeTable& primes) {
  check_survey_window(X, primes);
  std::vector<long long> counts(6, 0);
  for_each_prime_half(X, primes, [&](u64, std::span<const PrimePower> fac) {
    const int omega = big_omega(fac);
    for (int r = std::max(omega, 1); r <= 6; ++r) ++counts[r - 1];
  });
  return counts;
}

ExperimentReport almost_prime_survey(u64 X, int r, const PrimeTable& primes) {
  if (r < 1) throw ParameterError("almost_prime_survey: r must be >= 1");
  const auto counts = almost_prime_counts(X, primes);
  ExperimentReport rep;
  rep.name = "almost_prime_survey";
  rep.parameters["X"] = X;
  rep.parameters["r"] = r;
  for (int k = 1; k <= 6; ++k) rep.counters["count_r" + std::to_string(k)] = counts[k - 1];
  long long count = 0;
  if (r <= 6) {
    count = counts[r - 1];
  } else {
    for_each_prime_half(X, primes, [&](u64, std::span<const PrimePower> fac) { count += big_omega(fac) <= r; });
  }
  rep.counters["count"] = count;
  rep.counters["primes"] = static_cast<long long>(primes.primes_in(X, 2 * X).size());
  rep.require(std::is_sorted(counts.begin(), counts.end()), "counts non-decreasing in r");
  return rep;
}

ExperimentReport gpf_survey(u64 X, double vartheta, const PrimeTable& primes) {
  check_survey_window(X, primes);
  if (!(vartheta > 0.0 && vartheta < 2.0)) throw DomainError("gpf_survey: vartheta must lie in (0, 2)");
  long long total = 0, hits = 0;
  for_each_prime_half(X, primes, [&](u64 p, std::span<const PrimePower> fac) {
    ++total;
    const auto big = static_cast<double>(largest_prime(fac));
    if (std::log(big) > vartheta * std::log(static_cast<double>(p))) ++hits;
  });
  ExperimentReport r;
  r.name = "gpf_survey";
  r.parameters["X"] = X;
  r.parameters["vartheta"] = vartheta;
  r.counters["primes"] = total;
  r.counters["qualifying"] = hits;
  r.values["fraction"] = total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
  r.note("report-grade: the underlying claim is an infinitude statement");
  return r;
}

ExperimentReport dartyge_survey(u64 X, double u, const PrimeTable& primes) {
  check_survey_window(X, primes);
  if (!(u > 1.0)) throw DomainError("dartyge_survey: u must exceed 1");
  long long qualifiers = 0, above = 0, above_p11 = 0, p11 = 0;
  std::map<long long, long long> bins;
  const arith::QuadraticFactorSieve sieve(primes, 2 * X);
  sieve.for_each(X + 1, 2 * X, [&](u64 n, std::span<const PrimePower> fac) {
    const double log_n = std::log(static_cast<double>(n));
    if (!(u * std::log(static_cast<double>(primes.spf(n))) > log_n)) return;
    ++qualifiers;
    const auto omega_n = arith::multiplicative_suite(arith::factorize(n, &primes)).big_omega;
    const bool is_p11 = omega_n <= 11;
    p11 += is_p11;
    const double ratio = std::log(static_cast<double>(largest_prime(fac))) / log_n;
    ++bins[static_cast<long long>(std::floor(ratio / kRatioBinWidth))];
    if (ratio > 1.0) {
      ++above;
      above_p11 += is_p11;
    }
  });
  ExperimentReport r;
  r.name = "dartyge_survey";
  r.parameters["X"] = X;
  r.parameters["u"] = u;
  r.counters["qualifiers"] = qualifiers;
  r.counters["ratio_above_1"] = above;
  r.counters["P11_qualifiers"] = p11;
  r.counters["ratio_above_1_P11"] = above_p11;
  Json hist = Json::array();
  for (const auto& [b, c] : bins) {
    hist.push_back({{"bin", static_cast<double>(b) * kRatioBinWidth}, {"count", c}});
  }
  r.extra["histogram"] = hist;
  r.extra["bin_width"] = kRatioBinWidth;
  r.note("histogram bins hold log P+(n^2+1) / log n, lower edges");
  return r;
}

std::string histogram_csv(const ExperimentReport& report) {
  if (!report.extra.contains("histogram")) throw ParameterError("report " + report.name + " has no histogram");
  std::ostringstream out;
  out << "bin,count\n";
  for (const auto& row : report.extra["histogram"]) {
    out << row["bin"].get<double>() << ',' << row["count"].get<long long>() << '\n';
  }
  return out.str();
}

}  // namespace sievekit::lab
