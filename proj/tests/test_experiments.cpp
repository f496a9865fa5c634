#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "degx/experiments.hpp"
#include "degx/theory.hpp"

using degx::BetaParams;
using degx::GraphConfig;
using degx::MCSummary;
using degx::SequenceSource;
using degx::Side;

namespace {

GraphConfig make_config(std::int64_t n, BetaParams p, std::uint64_t base_seed) {
  GraphConfig c;
  c.n = n;
  c.params = p;
  c.seed = {base_seed, 0};
  return c;
}

std::vector<std::int64_t> iota_ranks(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> r;
  for (std::int64_t k = lo; k <= hi; ++k) r.push_back(k);
  return r;
}

}  // namespace

TEST_CASE("run_monte_carlo: uniform order-statistic means are j/(n+1)") {
  const GraphConfig cfg = make_config(200, {1, 1}, 42);
  const std::vector<std::int64_t> ranks{1, 3, 50, 100, 200};
  const MCSummary s = degx::run_monte_carlo(cfg, 2000, ranks, Side::MinSide,
                                            SequenceSource::WeightsOnly);
  REQUIRE(s.empirical_mean.size() == 5);
  for (size_t r = 0; r < ranks.size(); ++r) {
    CAPTURE(ranks[r]);
    const double exact = degx::expected_uniform_order_stat(ranks[r], 200, 1.0);
    const auto i = Eigen::Index(r);
    CHECK(s.empirical_stderr[i] > 0.0);
    CHECK(std::abs(s.empirical_mean[i] - exact) <= 4.0 * s.empirical_stderr[i]);
  }
}

TEST_CASE("run_monte_carlo: weights-only extremes match the quadrature oracle") {
  const GraphConfig cfg = make_config(4000, {1, 9}, 42);
  const std::vector<std::int64_t> ranks{1, 2, 3};
  const MCSummary s = degx::run_monte_carlo(cfg, 100, ranks, Side::MaxSide,
                                            SequenceSource::WeightsOnly);
  for (size_t r = 0; r < ranks.size(); ++r) {
    CAPTURE(ranks[r]);
    // k-th largest of n is the (n-k+1)-th smallest
    const double oracle =
        degx::oracle_order_stat_moment(4000 - ranks[r] + 1, 4000, {1, 9}, 1);
    const auto i = Eigen::Index(r);
    CHECK(std::abs(s.empirical_mean[i] - oracle) <= 4.0 * s.empirical_stderr[i]);
  }
}

TEST_CASE("run_monte_carlo: sorted structure makes means monotone in rank") {
  const GraphConfig cfg = make_config(500, {2, 4}, 7);
  const auto ranks = iota_ranks(1, 10);
  const MCSummary mx = degx::run_monte_carlo(cfg, 50, ranks, Side::MaxSide,
                                             SequenceSource::GraphDegrees);
  const MCSummary mn = degx::run_monte_carlo(cfg, 50, ranks, Side::MinSide,
                                             SequenceSource::GraphDegrees);
  for (Eigen::Index r = 1; r < 10; ++r) {
    CHECK(mx.empirical_mean[r] <= mx.empirical_mean[r - 1]);
    CHECK(mn.empirical_mean[r] >= mn.empirical_mean[r - 1]);
  }
}

TEST_CASE("run_monte_carlo: bit-identical reruns, thread-count independent") {
  const GraphConfig cfg = make_config(500, {2, 4}, 77);
  const auto ranks = iota_ranks(1, 5);
  const MCSummary a = degx::run_monte_carlo(cfg, 50, ranks, Side::MaxSide,
                                            SequenceSource::GraphDegrees, 1);
  const MCSummary b = degx::run_monte_carlo(cfg, 50, ranks, Side::MaxSide,
                                            SequenceSource::GraphDegrees, 1);
  const MCSummary c = degx::run_monte_carlo(cfg, 50, ranks, Side::MaxSide,
                                            SequenceSource::GraphDegrees, 3);
  for (Eigen::Index r = 0; r < 5; ++r) {
    CHECK(a.empirical_mean[r] == b.empirical_mean[r]);
    CHECK(a.empirical_mean[r] == c.empirical_mean[r]);
    CHECK(a.empirical_var[r] == c.empirical_var[r]);
    CHECK(a.empirical_stderr[r] == c.empirical_stderr[r]);
  }
}

TEST_CASE("run_monte_carlo: graph and weights-only modes agree at the minimum") {
  // edge clamping never touches the small-degree end; the two sources must
  // land on the same means within combined Monte Carlo error
  const GraphConfig cfg = make_config(4000, {2, 4}, 42);
  const auto ranks = iota_ranks(1, 20);
  const MCSummary g = degx::run_monte_carlo(cfg, 100, ranks, Side::MinSide,
                                            SequenceSource::GraphDegrees);
  const MCSummary w = degx::run_monte_carlo(cfg, 100, ranks, Side::MinSide,
                                            SequenceSource::WeightsOnly);
  for (Eigen::Index r = 0; r < 20; ++r) {
    CAPTURE(r);
    const double se = std::sqrt(g.empirical_stderr[r] * g.empirical_stderr[r] +
                                w.empirical_stderr[r] * w.empirical_stderr[r]);
    CHECK(std::abs(g.empirical_mean[r] - w.empirical_mean[r]) <= 3.0 * se);
  }
}

TEST_CASE("run_monte_carlo: pooled histogram counts every proportion") {
  const GraphConfig cfg = make_config(100, {2, 4}, 5);
  degx::Histogram hist;
  const MCSummary s = degx::run_monte_carlo(cfg, 20, {1}, Side::MaxSide,
                                            SequenceSource::WeightsOnly, 1, &hist);
  CHECK(s.trials == 20);
  REQUIRE(hist.counts.size() == 50);
  CHECK(hist.counts.sum() == 20 * 100);
  CHECK((hist.counts >= 0).all());
}

TEST_CASE("run_monte_carlo: domain checks") {
  const GraphConfig cfg = make_config(100, {2, 4}, 5);
  CHECK_THROWS_AS(degx::run_monte_carlo(cfg, 1, {1}, Side::MaxSide,
                                        SequenceSource::WeightsOnly),
                  std::domain_error);
  CHECK_THROWS_AS(degx::run_monte_carlo(cfg, 10, {}, Side::MaxSide,
                                        SequenceSource::WeightsOnly),
                  std::domain_error);
  CHECK_THROWS_AS(degx::run_monte_carlo(cfg, 10, {101}, Side::MaxSide,
                                        SequenceSource::WeightsOnly),
                  std::domain_error);
}

TEST_CASE("compare_theory: exact agreement yields zero error rows") {
  MCSummary s;
  s.trials = 100;
  s.n = 4000;
  s.params = {1, 9};
  s.side = Side::MaxSide;
  s.ranks = {1, 5, 10};
  s.empirical_mean.resize(3);
  s.empirical_var = Eigen::ArrayXd::Zero(3);
  s.empirical_stderr = Eigen::ArrayXd::Zero(3);
  for (Eigen::Index r = 0; r < 3; ++r)
    s.empirical_mean[r] =
        degx::predict_extreme({s.ranks[size_t(r)], Side::MaxSide}, 4000, {1, 9})
            .mean_beta_ratio;
  const auto rows = degx::compare_theory(s);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.abs_error == 0.0);
    CHECK(row.rel_tail_error == 0.0);
    CHECK(row.empirical_mean == row.predicted_mean_beta_ratio);
  }
}

TEST_CASE("compare_theory: errors normalize by the predicted tail") {
  MCSummary s;
  s.trials = 100;
  s.n = 4000;
  s.params = {1, 9};
  s.side = Side::MaxSide;
  s.ranks = {1};
  const auto pred = degx::predict_extreme({1, Side::MaxSide}, 4000, {1, 9});
  s.empirical_mean.resize(1);
  s.empirical_mean[0] = pred.mean_beta_ratio + 0.01;
  s.empirical_var = Eigen::ArrayXd::Zero(1);
  s.empirical_stderr = Eigen::ArrayXd::Zero(1);
  const auto rows = degx::compare_theory(s);
  CHECK(rows[0].abs_error == doctest::Approx(0.01).epsilon(1e-10));
  CHECK(rows[0].rel_tail_error ==
        doctest::Approx(0.01 / (1.0 - pred.mean_beta_ratio)).epsilon(1e-10));
  CHECK(rows[0].predicted_mean_simplified ==
        doctest::Approx(pred.mean_simplified).epsilon(1e-15));
}

TEST_CASE("beta_decay_curve: frozen value, limits, shape") {
  CHECK(std::abs(degx::beta_decay_curve(1.0, 4000, {1, 9}) -
                 0.7153600778957274939080031) <= 1e-13);
  // k -> 0 drives the curve to 1
  CHECK(degx::beta_decay_curve(1e-45, 4000, {1, 9}) > 0.999);
  double prev = 2.0;
  for (double k = 1.0; k <= 40.0; k += 1.0) {
    const double v = degx::beta_decay_curve(k, 4000, {1, 9});
    CHECK(v < prev);
    CHECK((v > 0.0 && v < 1.0));
    prev = v;
  }
  CHECK_THROWS_AS(degx::beta_decay_curve(0.0, 4000, {1, 9}), std::domain_error);
  CHECK_THROWS_AS(degx::beta_decay_curve(2001.0, 4000, {1, 9}), std::invalid_argument);
}

TEST_CASE("beta_decay_curve: tracks the simplified mean for Beta(2,4)") {
  for (std::int64_t k = 1; k <= 40; ++k) {
    CAPTURE(k);
    const double curve = degx::beta_decay_curve(double(k), 4000, {2, 4});
    const double mean =
        degx::predict_extreme({k, Side::MaxSide}, 4000, {2, 4}).mean_simplified;
    CHECK(std::abs(curve - mean) <= 0.05);
  }
}

TEST_CASE("fit_shifted_power_law: exact recovery of a shifted law") {
  std::vector<std::int64_t> ranks;
  std::vector<double> means;
  for (std::int64_t k = 1; k <= 200; ++k) {
    ranks.push_back(k);
    means.push_back(2.0 / std::pow(5.0 + double(k), 0.5));
  }
  const auto fit = degx::fit_shifted_power_law(ranks, means);
  CHECK(!fit.degenerate);
  CHECK(std::abs(fit.c - 2.0) <= 1e-6);
  CHECK(std::abs(fit.s - 5.0) <= 1e-4);
  CHECK(std::abs(fit.gamma - 0.5) <= 1e-6);
  CHECK(fit.sse <= 1e-16);
}

TEST_CASE("fit_shifted_power_law: pure power law pins s to zero") {
  std::vector<std::int64_t> ranks;
  std::vector<double> means;
  for (std::int64_t k = 1; k <= 50; ++k) {
    ranks.push_back(k);
    means.push_back(3.0 / std::pow(double(k), 1.2));
  }
  const auto fit = degx::fit_shifted_power_law(ranks, means);
  CHECK(fit.s == 0.0);
  CHECK(std::abs(fit.c - 3.0) <= 1e-8);
  CHECK(std::abs(fit.gamma - 1.2) <= 1e-8);
}

TEST_CASE("fit_shifted_power_law: shift never loses to the unshifted fit") {
  std::vector<std::int64_t> ranks;
  std::vector<double> means;
  for (std::int64_t k = 1; k <= 60; ++k) {
    ranks.push_back(k);
    // wobbly data: power law times a slow oscillation
    means.push_back((1.0 + 0.1 * std::sin(double(k))) / std::pow(2.0 + double(k), 0.8));
  }
  const auto full = degx::fit_shifted_power_law(ranks, means);
  const auto unshifted = degx::fit_shifted_power_law(ranks, means, 0.0);
  CHECK(unshifted.s == 0.0);
  CHECK(full.sse <= unshifted.sse + 1e-12);
}

TEST_CASE("fit_shifted_power_law: degenerate and invalid inputs") {
  const std::vector<std::int64_t> ranks{1, 2, 3, 4, 5};
  const auto fit = degx::fit_shifted_power_law(ranks, {0.7, 0.7, 0.7, 0.7, 0.7});
  CHECK(fit.degenerate);
  CHECK(fit.c == 0.7);
  CHECK(fit.gamma == 0.0);
  CHECK(fit.s == 0.0);

  CHECK_THROWS_AS(degx::fit_shifted_power_law({1, 2, 3}, {1.0, 0.5, 0.3}),
                  std::domain_error);
  CHECK_THROWS_AS(degx::fit_shifted_power_law(ranks, {1.0, 0.5, 0.3, 0.0, 0.1}),
                  std::domain_error);
  CHECK_THROWS_AS(degx::fit_shifted_power_law({0, 2, 3, 4}, {1.0, 0.5, 0.3, 0.2}),
                  std::domain_error);
}
