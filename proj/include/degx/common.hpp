#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace degx {

// Shape parameters of a Beta(a,b) law on [0,1].
struct BetaParams {
  double a = 1.0;
  double b = 1.0;
};

inline void validate(const BetaParams& p) {
  if (!(p.a > 0.0) || !(p.b > 0.0) || !std::isfinite(p.a) || !std::isfinite(p.b))
    throw std::domain_error("BetaParams: a and b must be positive and finite");
}

// Which end of the sorted sequence a rank counts from.
enum class Side { MaxSide, MinSide };

// Whether a normalized degree sequence came from graph degrees or from the
// raw weight draws (no graph, no edge noise).
enum class SequenceSource { GraphDegrees, WeightsOnly };

enum class LoopsPolicy { IncludeLoops, ExcludeLoops };
enum class OutputMode { DegreesOnly, EdgeList };

// rank k on MaxSide counts from the largest (k=1 is the maximum);
// rank j on MinSide counts from the smallest.
struct RankSpec {
  std::int64_t rank = 1;
  Side side = Side::MaxSide;
};

// Iterative scheme failed to reach its accuracy target.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// A formula was evaluated outside the asymptotic regime it is claimed for
// (e.g. a predicted mean landed outside [0,1]). Reported, never clamped.
struct RegimeError : std::domain_error {
  explicit RegimeError(const std::string& msg) : std::domain_error(msg) {}
};

inline const char* to_string(Side s) { return s == Side::MaxSide ? "max" : "min"; }
inline const char* to_string(SequenceSource s) {
  return s == SequenceSource::GraphDegrees ? "graph" : "weights";
}
inline const char* to_string(LoopsPolicy p) {
  return p == LoopsPolicy::IncludeLoops ? "include" : "exclude";
}

}  // namespace degx
