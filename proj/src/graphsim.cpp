#include "degx/graphsim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace degx {

void validate(const GraphConfig& config) {
  if (config.n < 2) throw std::domain_error("GraphConfig: n >= 2 required");
  validate(config.params);
}

WeightVector generate_weights(const GraphConfig& config, RandomStream& stream) {
  validate(config);
  WeightVector wv;
  wv.weights.resize(config.n);
  for (std::int64_t i = 0; i < config.n; ++i)
    wv.weights[i] = double(config.n) * sample_beta(config.params, stream);
  wv.total = wv.weights.sum();
  return wv;
}

double edge_prob(std::int64_t i, std::int64_t j, const WeightVector& w) {
  const auto n = w.weights.size();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::domain_error("edge_prob: node index out of range");
  if (w.total <= 0.0) return 0.0;
  return std::min(1.0, w.weights[i] * w.weights[j] / w.total);
}

GraphSample sample_graph_degrees(const GraphConfig& config, RandomStream& stream) {
  const WeightVector wv = generate_weights(config, stream);
  return sample_graph_degrees(config, wv, stream);
}

GraphSample sample_graph_degrees(const GraphConfig& config, const WeightVector& w,
                                 RandomStream& stream) {
  validate(config);
  const std::int64_t n = config.n;
  if (w.weights.size() != n)
    throw std::domain_error("sample_graph_degrees: weight length != n");
  const bool loops = config.loops_policy == LoopsPolicy::IncludeLoops;
  const bool keep_edges = config.output_mode == OutputMode::EdgeList;
  const double W = w.total;

  GraphSample out;
  out.weights = w;
  out.degrees = Eigen::ArrayX<std::int64_t>::Zero(n);
  const double* wd = w.weights.data();
  auto* deg = out.degrees.data();
  for (std::int64_t i = 0; i < n; ++i) {
    const double wi = wd[i];
    if (loops) {
      const double prod = wi * wi;
      out.clamped_pairs += (W > 0.0 && prod > W);
      ++out.pair_count;
      const double u = stream.next_double();
      if (W > 0.0 && u * W < prod) {
        ++deg[i];
        ++out.loop_count;
        if (keep_edges) out.edges.push_back({i, i});
      }
    }
    for (std::int64_t j = i + 1; j < n; ++j) {
      const double prod = wi * wd[j];
      out.clamped_pairs += (W > 0.0 && prod > W);
      ++out.pair_count;
      const double u = stream.next_double();
      if (W > 0.0 && u * W < prod) {
        ++deg[i];
        ++deg[j];
        ++out.edge_count;
        if (keep_edges) out.edges.push_back({i, j});
      }
    }
  }
  return out;
}

NormalizedDegreeSequence normalize_and_sort(const Eigen::ArrayX<std::int64_t>& degrees,
                                            std::int64_t n) {
  if (n < 1 || degrees.size() != n)
    throw std::domain_error("normalize_and_sort: degree length != n");
  NormalizedDegreeSequence seq;
  seq.n = n;
  seq.source = SequenceSource::GraphDegrees;
  seq.sorted_proportions.resize(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t d = degrees[i];
    if (d < 0 || d > n)
      throw std::domain_error("normalize_and_sort: degree outside [0,n]");
    seq.sorted_proportions[i] = double(d) / double(n);
  }
  std::stable_sort(seq.sorted_proportions.data(), seq.sorted_proportions.data() + n,
                   std::greater<double>());
  return seq;
}

NormalizedDegreeSequence sequence_from_weights(const WeightVector& w, std::int64_t n) {
  if (n < 1 || w.weights.size() != n)
    throw std::domain_error("sequence_from_weights: weight length != n");
  NormalizedDegreeSequence seq;
  seq.n = n;
  seq.source = SequenceSource::WeightsOnly;
  seq.sorted_proportions = w.weights / double(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const double p = seq.sorted_proportions[i];
    if (!(p >= 0.0 && p <= 1.0))
      throw std::domain_error("sequence_from_weights: proportion outside [0,1]");
  }
  std::stable_sort(seq.sorted_proportions.data(), seq.sorted_proportions.data() + n,
                   std::greater<double>());
  return seq;
}

void write_edge_list(std::ostream& os, const GraphSample& sample,
                     const GraphConfig& config) {
  os << "# n=" << config.n << " seed=" << config.seed.base_seed << "/"
     << config.seed.stream_index << "\n";
  for (const auto& e : sample.edges) os << e[0] << " " << e[1] << "\n";
}

}  // namespace degx
