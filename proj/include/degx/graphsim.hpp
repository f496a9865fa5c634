#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "degx/common.hpp"
#include "degx/sampling.hpp"

namespace degx {

struct GraphConfig {
  std::int64_t n = 2;
  BetaParams params;
  SeedSpec seed;
  LoopsPolicy loops_policy = LoopsPolicy::IncludeLoops;
  OutputMode output_mode = OutputMode::DegreesOnly;
};

void validate(const GraphConfig& config);

// w_i = n * pi_i with pi_i ~ Beta(a,b); weights are expected degrees.
struct WeightVector {
  Eigen::ArrayXd weights;
  double total = 0.0;  // ||w||_1
};

// pi_(1) >= ... >= pi_(n), each in [0,1].
struct NormalizedDegreeSequence {
  std::int64_t n = 0;
  Eigen::ArrayXd sorted_proportions;
  SequenceSource source = SequenceSource::GraphDegrees;
};

struct GraphSample {
  WeightVector weights;
  Eigen::ArrayX<std::int64_t> degrees;
  std::int64_t clamped_pairs = 0;  // pairs where w_i w_j / ||w||_1 exceeded 1
  std::int64_t pair_count = 0;     // Bernoulli trials performed
  std::int64_t edge_count = 0;     // non-loop edges realized
  std::int64_t loop_count = 0;
  std::vector<std::array<std::int64_t, 2>> edges;  // EdgeList mode only
};

WeightVector generate_weights(const GraphConfig& config, RandomStream& stream);

// min(1, w_i w_j / ||w||_1)
double edge_prob(std::int64_t i, std::int64_t j, const WeightVector& w);

// One full graph sample: independent Bernoulli(p_ij) trials over 1<=i<=j<=n
// in lexicographic pair order (diagonal first within each row, skipped
// entirely under ExcludeLoops). A loop adds 1 to its node's degree, which
// keeps E d_i = w_i exact when nothing clamps. O(n) memory in DegreesOnly
// mode.
GraphSample sample_graph_degrees(const GraphConfig& config, RandomStream& stream);

// Same, with the weights supplied by the caller (fixed-weight studies).
GraphSample sample_graph_degrees(const GraphConfig& config, const WeightVector& w,
                                 RandomStream& stream);

// pi = d/n sorted descending; stable, so equal degrees keep index order.
NormalizedDegreeSequence normalize_and_sort(const Eigen::ArrayX<std::int64_t>& degrees,
                                            std::int64_t n);

// pi = w/n sorted descending -- the weights-only path (no edge noise).
NormalizedDegreeSequence sequence_from_weights(const WeightVector& w, std::int64_t n);

// Text export: header "# n=<n> seed=<base>/<stream>", then one "i j" per
// line, 0-based, ascending (i,j).
void write_edge_list(std::ostream& os, const GraphSample& sample,
                     const GraphConfig& config);

}  // namespace degx
