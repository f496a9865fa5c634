#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "degx/graphsim.hpp"

namespace degx {

struct MCSummary {
  std::int64_t trials = 0;
  std::int64_t n = 0;
  BetaParams params;
  Side side = Side::MaxSide;
  std::vector<std::int64_t> ranks;
  Eigen::ArrayXd empirical_mean;
  Eigen::ArrayXd empirical_var;     // unbiased, across trials
  Eigen::ArrayXd empirical_stderr;  // sqrt(var/trials)
  SequenceSource source = SequenceSource::GraphDegrees;
};

// Pooled histogram of all proportions seen across trials (equal-width bins
// on [0,1]); an optional side product of run_monte_carlo.
struct Histogram {
  int bins = 50;
  Eigen::ArrayX<std::int64_t> counts;
};

// Trial t draws from the stream (config.seed.base_seed, t), so results are
// identical for any thread count and any scheduling; aggregation reduces in
// trial order.
MCSummary run_monte_carlo(const GraphConfig& config, std::int64_t trials,
                          const std::vector<std::int64_t>& ranks, Side side,
                          SequenceSource source, int threads = 1,
                          Histogram* pooled_hist = nullptr);

struct ComparisonRow {
  std::int64_t rank = 0;
  double empirical_mean = 0.0;
  double predicted_mean_beta_ratio = 0.0;
  double predicted_mean_simplified = 0.0;
  double abs_error = 0.0;       // |empirical - predicted_mean_beta_ratio|
  double rel_tail_error = 0.0;  // abs_error / tail distance of the beta-ratio
                                // prediction (1-mean on MaxSide, mean on MinSide)
};

std::vector<ComparisonRow> compare_theory(const MCSummary& summary);

// [n/(B(a,b) b)]^{1/b} / ([n/(B(a,b) b)]^{1/b} + k^{1/b}); a max-side decay
// curve. Real k > 0 accepted so the k->0 limit is checkable; k <= n/2.
double beta_decay_curve(double k, std::int64_t n, const BetaParams& params);

struct PowerLawFit {
  double c = 0.0;      // overall scaling
  double s = 0.0;      // shift
  double gamma = 0.0;  // exponent
  double sse = 0.0;    // residual sum of squares in log space
  bool degenerate = false;
};

// Fits mean_k ~ c/(s+k)^gamma by log-space least squares: closed-form
// (ln c, gamma) at fixed s, coarse-grid bracket plus golden-section over
// s in [0, s_max]. s_max < 0 means the default 10 * max(rank). Constant
// data comes back flagged degenerate (c = the constant, s = 0, gamma = 0).
PowerLawFit fit_shifted_power_law(const std::vector<std::int64_t>& ranks,
                                  const std::vector<double>& means,
                                  double s_max = -1.0);

}  // namespace degx
