#include "degx/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "degx/quadrature.hpp"
#include "degx/special.hpp"

namespace degx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_rank(std::int64_t j, std::int64_t n, const char* who) {
  if (n < 1) throw std::domain_error(std::string(who) + ": requires n >= 1");
  if (j < 1 || j > n) throw std::domain_error(std::string(who) + ": rank out of [1,n]");
}

double ln_choose(std::int64_t n, std::int64_t k) {
  return ln_gamma(double(n) + 1.0) - ln_gamma(double(k) + 1.0) -
         ln_gamma(double(n - k) + 1.0);
}

// log of C(n,j) j F^{j-1} (1-F)^{n-j} f(x), all pieces guarded so that the
// j=1 / j=n boundary terms never produce 0 * inf.
double log_order_stat_pdf(double x, std::int64_t j, std::int64_t n,
                          const BetaParams& p) {
  const double F = reg_inc_beta(x, p.a, p.b);
  double lf = (p.a - 1.0) * std::log(x) + (p.b - 1.0) * std::log1p(-x) -
              ln_beta(p.a, p.b);
  double t1 = 0.0, t2 = 0.0;
  if (j > 1) t1 = (F > 0.0) ? (j - 1.0) * std::log(F) : -kInf;
  if (j < n) t2 = (F < 1.0) ? (n - j) * std::log1p(-F) : -kInf;
  return ln_choose(n, j) + std::log(double(j)) + t1 + t2 + lf;
}

}  // namespace

double GenGammaLaw::a_n(std::int64_t n) const {
  return std::pow(double(n), 1.0 / shape_exponent);
}

GenGammaLaw gen_gamma_law(const BetaParams& params, RankSpec rank_spec) {
  validate(params);
  if (rank_spec.rank < 1) throw std::domain_error("gen_gamma_law: rank >= 1 required");
  const double lnB = ln_beta(params.a, params.b);
  GenGammaLaw law;
  law.shape_count = rank_spec.rank;
  law.side = rank_spec.side;
  if (rank_spec.side == Side::MaxSide) {
    law.shape_exponent = params.b;
    law.scale = std::exp((lnB + std::log(params.b)) / params.b);
  } else {
    law.shape_exponent = params.a;
    law.scale = std::exp((lnB + std::log(params.a)) / params.a);
  }
  return law;
}

double exact_order_stat_cdf(double x, std::int64_t j, std::int64_t n,
                            const BetaParams& params) {
  validate(params);
  check_rank(j, n, "exact_order_stat_cdf");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("exact_order_stat_cdf: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double F = reg_inc_beta(x, params.a, params.b);
  if (F <= 0.0) return 0.0;
  if (F >= 1.0) return 1.0;
  const double lF = std::log(F);
  const double l1F = std::log1p(-F);

  // P(Bin(n,F) >= j). Sum whichever binomial tail is the small one, in
  // log space with the max term factored out; complement if needed.
  auto tail_sum = [&](std::int64_t lo, std::int64_t hi) {
    double lmax = -kInf;
    std::vector<double> logs;
    logs.reserve(size_t(hi - lo + 1));
    for (std::int64_t i = lo; i <= hi; ++i) {
      const double L = ln_choose(n, i) + double(i) * lF + double(n - i) * l1F;
      logs.push_back(L);
      lmax = std::max(lmax, L);
    }
    if (lmax == -kInf) return 0.0;
    double s = 0.0, comp = 0.0;  // Kahan
    for (double L : logs) {
      const double y = std::exp(L - lmax) - comp;
      const double t = s + y;
      comp = (t - s) - y;
      s = t;
    }
    return std::exp(lmax) * s;
  };

  double r;
  if (double(j) - 1.0 < double(n) * F)
    r = 1.0 - tail_sum(0, j - 1);  // left tail is the small one
  else
    r = tail_sum(j, n);
  return std::min(1.0, std::max(0.0, r));
}

double exact_order_stat_pdf(double x, std::int64_t j, std::int64_t n,
                            const BetaParams& params) {
  validate(params);
  check_rank(j, n, "exact_order_stat_pdf");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("exact_order_stat_pdf: x outside [0,1]");
  if (x == 0.0) {
    if (params.a < 1.0)
      throw std::domain_error("exact_order_stat_pdf: density unbounded at x=0 for a<1");
    if (params.a > 1.0 || j > 1) return 0.0;
    // a == 1, j == 1: n (1-F(0))^{n-1} f(0) = n * b
    return double(n) * params.b;
  }
  if (x == 1.0) {
    if (params.b < 1.0)
      throw std::domain_error("exact_order_stat_pdf: density unbounded at x=1 for b<1");
    if (params.b > 1.0 || j < n) return 0.0;
    return double(n) * params.a;  // b == 1, j == n
  }
  const double lg = log_order_stat_pdf(x, j, n, params);
  return std::exp(lg);
}

double expected_uniform_order_stat(std::int64_t j, std::int64_t n, double theta) {
  check_rank(j, n, "expected_uniform_order_stat");
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw std::domain_error("expected_uniform_order_stat: theta must be positive");
  return theta * (double(j) / double(n + 1));
}

TheoryPrediction predict_extreme(RankSpec rank_spec, std::int64_t n,
                                 const BetaParams& params) {
  validate(params);
  if (n < 2) throw std::invalid_argument("predict_extreme: requires n >= 2");
  const std::int64_t r = rank_spec.rank;
  if (r < 1) throw std::invalid_argument("predict_extreme: rank >= 1 required");
  if (r > n / 2)
    throw std::invalid_argument(
        "predict_extreme: rank > n/2 is outside the asymptotic regime");

  const double lnB = ln_beta(params.a, params.b);
  const double k = double(r);
  // exponent carrying the tail decay: b on the max side, a on the min side
  const double c = (rank_spec.side == Side::MaxSide) ? params.b : params.a;
  const double ic = 1.0 / c;
  const double base = (lnB + std::log(c) - std::log(double(n))) * ic;  // ln (B c / n)^{1/c}
  const double t_sim = std::exp(base + std::log(k) * ic);              // (B c k / n)^{1/c}
  // Gamma(1/c)/B(k,1/c) = Gamma(k+1/c)/Gamma(k)
  const double t_br = std::exp(ln_gamma(k + ic) - ln_gamma(k) + base);
  const double vfac_br = std::exp(ln_beta(k, ic) - ln_beta(k + ic, ic)) - 1.0;
  const double vfac_sim = std::pow((k + ic) / k, ic) - 1.0;

  TheoryPrediction out;
  out.rank_spec = rank_spec;
  out.n = n;
  out.params = params;
  if (rank_spec.side == Side::MaxSide) {
    out.mean_beta_ratio = 1.0 - t_br;
    out.mean_simplified = 1.0 - t_sim;
    out.var_beta_ratio = t_br * t_br * vfac_br;
    out.var_simplified = t_sim * t_sim * vfac_sim;
  } else {
    out.mean_beta_ratio = t_br;
    out.mean_simplified = t_sim;
    out.var_beta_ratio = t_br * t_br * vfac_br;
    out.var_simplified = t_sim * t_sim * vfac_sim;
  }
  for (double mv : {out.mean_beta_ratio, out.mean_simplified}) {
    if (!(mv >= 0.0 && mv <= 1.0))
      throw RegimeError(
          "predict_extreme: formula mean " + std::to_string(mv) +
          " outside [0,1] at rank " + std::to_string(r) +
          " (parameters/rank outside the asymptotic regime; not clamped)");
  }
  return out;
}

double limiting_cdf_G(double u, const BetaParams& params, Side side) {
  validate(params);
  const double lnB = ln_beta(params.a, params.b);
  if (side == Side::MaxSide) {
    if (u > 0.0) throw std::domain_error("limiting_cdf_G: max side requires u <= 0");
    const double t = std::pow(-u, params.b) / std::exp(lnB + std::log(params.b));
    return std::exp(-t);
  }
  if (u < 0.0) throw std::domain_error("limiting_cdf_G: min side requires u >= 0");
  const double t = std::pow(u, params.a) / std::exp(lnB + std::log(params.a));
  return std::exp(-t);
}

LimitInterpretation limit_interpretation(Side side) {
  return side == Side::MaxSide ? LimitInterpretation::CdfOfRescaledMax
                               : LimitInterpretation::SurvivalOfRescaledMin;
}

FiniteNCdf finite_n_cdf_Gn(double u, std::int64_t n, const BetaParams& params) {
  validate(params);
  if (n < 1) throw std::domain_error("finite_n_cdf_Gn: requires n >= 1");
  const double a = params.a, b = params.b;
  if (a != std::floor(a) || b != std::floor(b))
    throw std::domain_error("finite_n_cdf_Gn: integer a and b required");
  if (u > 0.0) throw std::domain_error("finite_n_cdf_Gn: requires u <= 0");
  const double xc = -u * std::exp(-std::log(double(n)) / b);  // 1 - x = -u n^{-1/b}
  if (!(xc >= 0.0 && xc <= 1.0))
    throw std::domain_error("finite_n_cdf_Gn: 1 + u n^{-1/b} outside [0,1]");
  // complement first: q = 1 - I_x(a,b) = I_{1-x}(b,a), keeps n*log1p accurate
  const double q = reg_inc_beta(xc, b, a);
  FiniteNCdf out;
  out.g_n = (q >= 1.0) ? 0.0 : std::exp(double(n) * std::log1p(-q));
  out.f_ab_bound =
      (a >= 2.0) ? ((a - 1.0) / (b + 1.0)) * xc * std::pow(1.0 - xc, 1.0 - a) : 0.0;
  return out;
}

double limiting_kth_extreme_cdf(double u, std::int64_t k, const BetaParams& params) {
  validate(params);
  if (k < 1) throw std::domain_error("limiting_kth_extreme_cdf: k >= 1 required");
  if (u > 0.0) throw std::domain_error("limiting_kth_extreme_cdf: requires u <= 0");
  const double t =
      std::pow(-u, params.b) / std::exp(ln_beta(params.a, params.b) + std::log(params.b));
  if (t == 0.0) return 1.0;
  // e^{-t} sum_{i=0}^{k-1} t^i/i!  via logsumexp (robust for large t)
  double lsum = -kInf;
  const double lt = std::log(t);
  for (std::int64_t i = 0; i < k; ++i) {
    const double L = double(i) * lt - ln_gamma(double(i) + 1.0);
    if (L > lsum)
      lsum = L + std::log1p(std::exp(lsum - L));
    else
      lsum = lsum + std::log1p(std::exp(L - lsum));
  }
  const double v = std::exp(-t + lsum);
  return std::min(1.0, std::max(0.0, v));
}

double gen_gamma_moment(std::int64_t m, const GenGammaLaw& law) {
  if (m < 0) throw std::domain_error("gen_gamma_moment: m >= 0 required");
  if (!(law.scale > 0.0) || !(law.shape_exponent > 0.0) || law.shape_count < 1)
    throw std::domain_error("gen_gamma_moment: invalid law");
  const double K = double(law.shape_count);
  return std::exp(double(m) * std::log(law.scale) +
                  ln_gamma(K + double(m) / law.shape_exponent) - ln_gamma(K));
}

double oracle_order_stat_moment(std::int64_t j, std::int64_t n,
                                const BetaParams& params, std::int64_t m) {
  validate(params);
  check_rank(j, n, "oracle_order_stat_moment");
  if (n > 100000)
    throw std::domain_error("oracle_order_stat_moment: n above quadrature regime (1e5)");
  if (m < 1) throw std::domain_error("oracle_order_stat_moment: m >= 1 required");

  auto log_density = [&](double x) { return log_order_stat_pdf(x, j, n, params); };
  // ternary search for the density mode: the integrand is sharply peaked for
  // extreme j, so the initial panels should straddle the peak
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (log_density(m1) < log_density(m2))
      lo = m1;
    else
      hi = m2;
  }
  const double mode = 0.5 * (lo + hi);

  auto integrand = [&](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double lg = double(m) * std::log(x) + log_density(x);
    return std::isfinite(lg) ? std::exp(lg) : 0.0;
  };
  const QuadResult q = integrate_adaptive(integrand, 0.0, 1.0, 1e-10, 0.0,
                                          {mode}, 4000);
  return q.value;
}

}  // namespace degx
