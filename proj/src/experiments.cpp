#include "degx/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "degx/special.hpp"
#include "degx/theory.hpp"

namespace degx {

namespace {

// per-rank positions in the descending sequence
std::vector<std::int64_t> rank_positions(const std::vector<std::int64_t>& ranks,
                                         std::int64_t n, Side side) {
  std::vector<std::int64_t> pos(ranks.size());
  for (size_t r = 0; r < ranks.size(); ++r) {
    if (ranks[r] < 1 || ranks[r] > n)
      throw std::domain_error("run_monte_carlo: rank outside [1,n]");
    pos[r] = (side == Side::MaxSide) ? ranks[r] - 1 : n - ranks[r];
  }
  return pos;
}

}  // namespace

MCSummary run_monte_carlo(const GraphConfig& config, std::int64_t trials,
                          const std::vector<std::int64_t>& ranks, Side side,
                          SequenceSource source, int threads,
                          Histogram* pooled_hist) {
  validate(config);
  if (trials < 2) throw std::domain_error("run_monte_carlo: trials >= 2 required");
  if (ranks.empty()) throw std::domain_error("run_monte_carlo: empty rank list");
  const std::int64_t n = config.n;
  const auto pos = rank_positions(ranks, n, side);
  const auto R = static_cast<Eigen::Index>(ranks.size());

  if (threads < 1) threads = 1;
  if (std::int64_t(threads) > trials) threads = int(trials);

  Eigen::MatrixXd vals(trials, R);
  const int hist_bins = pooled_hist ? pooled_hist->bins : 0;
  if (pooled_hist) {
    if (hist_bins < 1) throw std::domain_error("run_monte_carlo: bins >= 1 required");
    pooled_hist->counts = Eigen::ArrayX<std::int64_t>::Zero(hist_bins);
  }
  std::vector<Eigen::ArrayX<std::int64_t>> worker_hist(
      pooled_hist ? size_t(threads) : 0);

  auto worker = [&](int w, std::int64_t t0, std::int64_t t1) {
    if (pooled_hist) worker_hist[w] = Eigen::ArrayX<std::int64_t>::Zero(hist_bins);
    Eigen::ArrayXd buf;
    for (std::int64_t t = t0; t < t1; ++t) {
      RandomStream stream = derive_stream({config.seed.base_seed, std::uint64_t(t)});
      NormalizedDegreeSequence seq;
      if (source == SequenceSource::WeightsOnly) {
        buf.resize(n);
        for (std::int64_t i = 0; i < n; ++i)
          buf[i] = sample_beta(config.params, stream);
        std::stable_sort(buf.data(), buf.data() + n, std::greater<double>());
        seq.n = n;
        seq.sorted_proportions = buf;
        seq.source = SequenceSource::WeightsOnly;
      } else {
        GraphConfig trial_config = config;  // no edge lists across trials
        trial_config.output_mode = OutputMode::DegreesOnly;
        const GraphSample sample = sample_graph_degrees(trial_config, stream);
        seq = normalize_and_sort(sample.degrees, n);
      }
      for (Eigen::Index r = 0; r < R; ++r)
        vals(t, r) = seq.sorted_proportions[pos[r]];
      if (pooled_hist) {
        for (std::int64_t i = 0; i < n; ++i) {
          int bin = int(seq.sorted_proportions[i] * hist_bins);
          bin = std::min(std::max(bin, 0), hist_bins - 1);
          ++worker_hist[w][bin];
        }
      }
    }
  };

  if (threads == 1) {
    worker(0, 0, trials);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const std::int64_t t0 = std::int64_t(w) * chunk;
      const std::int64_t t1 = std::min(trials, t0 + chunk);
      if (t0 >= t1) break;
      pool.emplace_back(worker, w, t0, t1);
    }
    for (auto& th : pool) th.join();
  }

  MCSummary out;
  out.trials = trials;
  out.n = n;
  out.params = config.params;
  out.side = side;
  out.ranks = ranks;
  out.source = source;
  out.empirical_mean = vals.colwise().mean().array();
  out.empirical_var.resize(R);
  for (Eigen::Index r = 0; r < R; ++r) {
    double acc = 0.0;
    const double mu = out.empirical_mean[r];
    for (std::int64_t t = 0; t < trials; ++t) {
      const double d = vals(t, r) - mu;
      acc += d * d;
    }
    out.empirical_var[r] = acc / double(trials - 1);
  }
  out.empirical_stderr = (out.empirical_var / double(trials)).sqrt();
  if (pooled_hist)
    for (const auto& h : worker_hist)
      if (h.size() == hist_bins) pooled_hist->counts += h;
  return out;
}

std::vector<ComparisonRow> compare_theory(const MCSummary& summary) {
  std::vector<ComparisonRow> rows;
  rows.reserve(summary.ranks.size());
  for (size_t r = 0; r < summary.ranks.size(); ++r) {
    const TheoryPrediction pred = predict_extreme(
        {summary.ranks[r], summary.side}, summary.n, summary.params);
    ComparisonRow row;
    row.rank = summary.ranks[r];
    row.empirical_mean = summary.empirical_mean[Eigen::Index(r)];
    row.predicted_mean_beta_ratio = pred.mean_beta_ratio;
    row.predicted_mean_simplified = pred.mean_simplified;
    row.abs_error = std::fabs(row.empirical_mean - row.predicted_mean_beta_ratio);
    const double tail = (summary.side == Side::MaxSide)
                            ? 1.0 - row.predicted_mean_beta_ratio
                            : row.predicted_mean_beta_ratio;
    row.rel_tail_error =
        (tail > 0.0) ? row.abs_error / tail
                     : std::numeric_limits<double>::infinity();
    rows.push_back(row);
  }
  return rows;
}

double beta_decay_curve(double k, std::int64_t n, const BetaParams& params) {
  validate(params);
  if (n < 2) throw std::domain_error("beta_decay_curve: n >= 2 required");
  if (!(k > 0.0)) throw std::domain_error("beta_decay_curve: k > 0 required");
  if (k > double(n) / 2.0)
    throw std::invalid_argument("beta_decay_curve: k > n/2 is outside the regime");
  const double ib = 1.0 / params.b;
  const double r = std::exp(
      (std::log(double(n)) - ln_beta(params.a, params.b) - std::log(params.b)) * ib);
  return r / (r + std::pow(k, ib));
}

PowerLawFit fit_shifted_power_law(const std::vector<std::int64_t>& ranks,
                                  const std::vector<double>& means,
                                  double s_max) {
  const size_t m = ranks.size();
  if (m < 4 || means.size() != m)
    throw std::domain_error("fit_shifted_power_law: need >= 4 (rank, mean) points");
  std::int64_t max_rank = 0;
  for (size_t i = 0; i < m; ++i) {
    if (ranks[i] < 1) throw std::domain_error("fit_shifted_power_law: ranks must be >= 1");
    if (!(means[i] > 0.0)) throw std::domain_error("fit_shifted_power_law: means must be > 0");
    max_rank = std::max(max_rank, ranks[i]);
  }
  std::vector<double> y(m);
  for (size_t i = 0; i < m; ++i) y[i] = std::log(means[i]);

  const bool constant =
      std::all_of(means.begin(), means.end(), [&](double v) { return v == means[0]; });
  if (constant) return PowerLawFit{means[0], 0.0, 0.0, 0.0, true};

  if (s_max < 0.0) s_max = 10.0 * double(max_rank);

  // profiled least squares: at fixed s, regress y on ln(s + rank)
  struct LS { double gamma, lnc, sse; };
  auto solve = [&](double s) {
    double sx = 0, sy = 0;
    for (size_t i = 0; i < m; ++i) {
      sx += std::log(s + double(ranks[i]));
      sy += y[i];
    }
    const double mx = sx / double(m), my = sy / double(m);
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
      const double dx = std::log(s + double(ranks[i])) - mx;
      const double dy = y[i] - my;
      sxx += dx * dx;
      sxy += dx * dy;
    }
    const double slope = (sxx > 0.0) ? sxy / sxx : 0.0;  // ranks collapse at huge s
    const double lnc = my - slope * mx;
    // explicit residual pass: the textbook syy - sxy^2/sxx form cancels
    // catastrophically when the fit is near-exact
    double sse = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const double r = y[i] - (lnc + slope * std::log(s + double(ranks[i])));
      sse += r * r;
    }
    return LS{-slope, lnc, sse};
  };
  auto sse_at = [&](double s) { return solve(s).sse; };

  // coarse bracket: s = 0 plus a log-spaced sweep up to s_max
  std::vector<double> grid{0.0};
  const int kGridPts = 200;
  if (s_max > 0.0) {
    const double hi10 = std::log10(s_max);
    if (hi10 <= -3.0)
      grid.push_back(s_max);
    else
      for (int i = 0; i <= kGridPts; ++i)
        grid.push_back(std::pow(10.0, -3.0 + (hi10 + 3.0) * i / kGridPts));
  }
  size_t best = 0;
  double best_sse = sse_at(grid[0]);
  for (size_t i = 1; i < grid.size(); ++i) {
    const double v = sse_at(grid[i]);
    if (v < best_sse) {
      best_sse = v;
      best = i;
    }
  }
  double lo = (best == 0) ? 0.0 : grid[best - 1];
  double hi = (best + 1 < grid.size()) ? grid[best + 1] : s_max;

  // golden-section refinement
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = sse_at(x1), f2 = sse_at(x2);
  for (int it = 0; it < 400 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++it) {
    if (f1 <= f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = sse_at(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = sse_at(x2);
    }
  }
  double s_best = 0.5 * (lo + hi);
  // never do worse than the best grid point or the unshifted fit
  for (double cand : {grid[best], 0.0})
    if (sse_at(cand) < sse_at(s_best)) s_best = cand;

  const LS ls = solve(s_best);
  return PowerLawFit{std::exp(ls.lnc), s_best, ls.gamma, ls.sse, false};
}

}  // namespace degx
