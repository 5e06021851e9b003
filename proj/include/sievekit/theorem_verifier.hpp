#pragma once

// Recomputation of the constants, integrals, optimisations and roots behind the
// P_4, P^+ > p^0.847 and u = 11.2 results.

#include <cstdint>
#include <map>
#include <vector>

#include "sievekit/report.hpp"
#include "sievekit/sieve_functions.hpp"

namespace sievekit::verify {

/// Exact rational kept as an integer pair; converted to double only on evaluation.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline constexpr Rational kThetaStart{1, 2};
inline constexpr Rational kBreak1{64, 97};
inline constexpr Rational kBreak2{32, 41};
inline constexpr Rational kThetaEnd{16, 17};
inline constexpr Rational kEtaLimit{112, 131};
inline constexpr Rational kGamma12Limit{8015, 11659};
inline constexpr double kBetaHypothesis = 0.68;

/// One linear piece (a - b theta) / c of gamma(theta).
struct GammaPiece {
  std::int64_t a, b, c;
  constexpr double at(double theta) const {
    return (static_cast<double>(a) - static_cast<double>(b) * theta) / static_cast<double>(c);
  }
  /// Exact value at a rational point, reduced.
  Rational at(Rational theta) const;
};

inline constexpr GammaPiece kGammaPieces[3] = {{91, 89, 62}, {86, 83, 60}, {19, 18, 14}};

/// Level function of the quadratic Brun-Titchmarsh bound; theta in [1/2, 16/17).
double gamma_theta(double theta);
/// Level of distribution (91 - 89 theta) / 62 for theta in [1/2, 112/131).
double eta_theta(double theta);

struct Theorem2Total {
  double antiderivative = 0.0;
  double quadrature = 0.0;
};

/// Sum of the three integrals of 2 / gamma(theta) from 1/2 to vartheta, both routes.
Theorem2Total theorem2_total(double vartheta);
/// Report with margin 3/2 - total; throws InternalError if the routes differ by > 1e-6.
TheoremReport theorem2_integral(double vartheta);
/// Largest vartheta with total(vartheta) <= 3/2 (bisection to 1e-12).
double find_max_vartheta();

struct Gamma12Optimum {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double product = 0.0;       // closed form (91 - 89 theta)^2 / 22072
  double grid_product = 0.0;  // numeric grid search
  double grid_gamma1 = 0.0;
};

/// Maximises gamma1 * gamma2 on gamma2 = (91 - 89(gamma1 + theta)) / 62,
/// gamma1 + theta < 112/131. Throws InfeasibleError for theta >= 8015/11659.
Gamma12Optimum optimize_gamma12(double theta);

struct DeltaQuadratic {
  std::int64_t a = 7921, b = 27946, c = -13791;
};

/// Root in (0, 1/2) of 1/(1 - 2d) = 22072 / (8281 - 16198 d + 7921 d^2), by bisection.
double solve_delta();
/// Same root from the quadratic formula applied to 7921 d^2 + 27946 d - 13791 = 0.
double solve_delta_quadratic();

/// Parameters of the weighted sieve: z = X^alpha, y = X^beta, eta = r + 1 - 2/beta.
struct WeightedSieveParams {
  double alpha = 1.0 / 12.0;
  double beta = 0.622;
  double delta = 0.0;
  int r = 4;

  double eta() const { return r + 1 - 2.0 / beta; }

  /// Validated parameters; delta defaults to min(solve_delta(), beta).
  static WeightedSieveParams make(double alpha, double beta, int r);
  static WeightedSieveParams make(double alpha, double beta, int r, double delta);
  /// Throws ParameterError unless 0 < alpha < delta <= beta < 1 and eta > 0;
  /// HypothesisError when beta >= 0.68.
  void validate() const;
};

/// int_alpha^delta (1/theta - 1/beta) F((1 - 2 theta) / (2 alpha)) dtheta.
double c1_integral(const WeightedSieveParams& params, const sieve::SieveFunctionTable& table);
/// e^gamma alpha int_delta^beta (1/theta - 1/beta) 88288 / (8281 - 16198 theta + 7921 theta^2).
double c2_integral(const WeightedSieveParams& params);

struct CTerms {
  double f_term = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double eta = 0.0;
  double C = 0.0;
};

CTerms compute_C_terms(const WeightedSieveParams& params, const sieve::SieveFunctionTable& table);
/// Report with margin C; for alpha = 1/12 the explicit [1,3]/[3,5] split of c1 is used and
/// cross-checked against the generic quadrature.
TheoremReport compute_C(const WeightedSieveParams& params, const sieve::SieveFunctionTable& table);

struct BetaCurvePoint {
  double beta = 0.0;
  double C = 0.0;
};

struct BetaCurve {
  double beta_star = 0.0;
  double C_star = 0.0;
  std::vector<BetaCurvePoint> points;
};

inline constexpr double kBetaGridLo = 0.41;
inline constexpr double kBetaGridStep = 1e-3;

/// C on the grid beta = 0.41 + k/1000 below 0.68 (and above 2/(r+1)).
BetaCurve optimize_beta(int r, double alpha, const sieve::SieveFunctionTable& table,
                        unsigned threads = 1);

/// How the sigma_2 factor is treated when (2/3 - theta/2) u exceeds 2.
enum class Sigma2Policy {
  Strict,        // throw BranchError naming (theta, u)
  MonotoneCap,   // bound by the value at s = 2 (sigma_2 is non-decreasing)
};

struct DartygeTerms {
  double brun_titchmarsh_quadratic = 0.0;
  double brun_titchmarsh_classical = 0.0;
  double selberg = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool sigma2_contained = true;
  double max_sigma2_argument = 0.0;
};

DartygeTerms dartyge_terms(double u, double theta0, const sieve::SieveTables& tables,
                           Sigma2Policy policy = Sigma2Policy::Strict);
/// Report with margin (3/2) e^gamma w(u) - LHS.
TheoremReport dartyge_margin(double u, double theta0, const sieve::SieveTables& tables,
                             Sigma2Policy policy = Sigma2Policy::Strict);

inline constexpr double kDartygeTheta0 = 0.9926;
inline constexpr double kDartygeScanStart = 12.2;

/// Scans u = 12.2, 12.2 - step, ... and returns the last grid point with positive margin.
double find_min_u(double theta0, double grid_step, const sieve::SieveTables& tables);

/// H_q / c = (1 - rho(q)/q)(1 - (1 + rho(q))/q)^{-1} for an odd prime q.
double compute_Hq(std::uint64_t q);

/// prod_p (1 - g1(p) - g2(p))(1 - 1/p)^{-2} over the union of supports.
double compute_H(const std::map<std::uint64_t, double>& g1, const std::map<std::uint64_t, double>& g2);

struct FrakC {
  double partial = 0.0;
  double accelerated = 0.0;
};

/// Singular series 2 prod_{p>2} (1 - rho(p)/phi(p))(1 - 1/p)^{-1}: raw partial product and the
/// value accelerated through L(1, chi_4) = pi/4.
FrakC compute_frak_c(std::uint64_t prime_limit);

/// sum_{p<=z} rho(p) log p / phi(p).
double dimension_sum(std::uint64_t z);
/// V(z) = prod_{2<p<=z} (1 - rho(p)/phi(p)).
double sieve_density_V(std::uint64_t z);

}  // namespace sievekit::verify
