#pragma once

#include <cstdint>

#include "degx/common.hpp"

namespace degx {

// Limiting law of the rescaled k-th extreme: generalized Gamma with scale
// lambda, shape count K (the rank) and shape exponent c (b on the max side,
// a on the min side). Rescaling metadata: a_n = n^{1/c}, b_n = 1.
struct GenGammaLaw {
  double scale = 1.0;            // lambda
  std::int64_t shape_count = 1;  // K
  double shape_exponent = 1.0;   // c
  Side side = Side::MaxSide;

  double a_n(std::int64_t n) const;     // n^{1/shape_exponent}
  static constexpr double b_n = 1.0;
};

GenGammaLaw gen_gamma_law(const BetaParams& params, RankSpec rank_spec);

// Two closed-form approximations of the mean/variance of the rank-th extreme
// normalized degree: the gamma-ratio ("beta-ratio") form and its simplified
// power form. The beta-ratio form is the sharper one at small ranks.
struct TheoryPrediction {
  RankSpec rank_spec;
  double mean_beta_ratio = 0.0;
  double mean_simplified = 0.0;
  double var_beta_ratio = 0.0;
  double var_simplified = 0.0;
  std::int64_t n = 0;
  BetaParams params;
};

// P(X_(j) <= x) for the j-th smallest of n iid Beta(a,b) draws:
// sum_{i=j}^{n} C(n,i) F^i (1-F)^{n-i}, log-space terms, stable summation.
double exact_order_stat_cdf(double x, std::int64_t j, std::int64_t n,
                            const BetaParams& params);

// Density of X_(j): C(n,j) j F^{j-1} (1-F)^{n-j} f(x).
double exact_order_stat_pdf(double x, std::int64_t j, std::int64_t n,
                            const BetaParams& params);

// theta * j/(n+1): the j-th smallest of n uniforms on [0, theta], exactly.
double expected_uniform_order_stat(std::int64_t j, std::int64_t n, double theta);

// Asymptotic mean/variance of the rank-th extreme (rank <= n/2 enforced).
// Throws RegimeError when a formula value lands outside [0,1] -- that signals
// parameters/rank outside the asymptotic regime and is never clamped.
TheoryPrediction predict_extreme(RankSpec rank_spec, std::int64_t n,
                                 const BetaParams& params);

// Max side (u <= 0): exp[-(-u)^b/(B(a,b) b)], the limiting CDF of
// n^{1/b}(max - 1) -- a reversed-Weibull (Type III) law.
// Min side (u >= 0): exp[-u^a/(B(a,b) a)] evaluated exactly as written in the
// source derivation. Note it is *decreasing* in u: the survival function of
// the rescaled minimum (Type II family), not a CDF. See limit_interpretation.
double limiting_cdf_G(double u, const BetaParams& params, Side side);

enum class LimitInterpretation { CdfOfRescaledMax, SurvivalOfRescaledMin };
LimitInterpretation limit_interpretation(Side side);

struct FiniteNCdf {
  double g_n = 0.0;        // [I_{1+u n^{-1/b}}(a,b)]^n
  double f_ab_bound = 0.0; // |f_ab| <= ((a-1)/(b+1)) (-u n^{-1/b}) (1+u n^{-1/b})^{1-a}, 0 for a<2
};

// Finite-n law of the rescaled maximum, integer a,b only.
FiniteNCdf finite_n_cdf_Gn(double u, std::int64_t n, const BetaParams& params);

// Limiting CDF of the k-th largest: G(u) * sum_{i<k} (-ln G(u))^i / i!.
double limiting_kth_extreme_cdf(double u, std::int64_t k, const BetaParams& params);

// E[X^m] for X ~ GenGamma(law): lambda^m Gamma(K + m/c)/Gamma(K), log space.
double gen_gamma_moment(std::int64_t m, const GenGammaLaw& law);

// Independent brute-force oracle: integral of x^m f_{X_(j)}(x) dx by adaptive
// quadrature split at the density mode; relative error <= 1e-9. n <= 1e5.
double oracle_order_stat_moment(std::int64_t j, std::int64_t n,
                                const BetaParams& params, std::int64_t m);

}  // namespace degx
