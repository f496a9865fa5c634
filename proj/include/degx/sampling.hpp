#pragma once

#include <cstdint>

#include "degx/common.hpp"

namespace degx {

// Identical (base_seed, stream_index) => bit-identical stream, regardless of
// which thread creates or consumes it.
struct SeedSpec {
  std::uint64_t base_seed = 42;
  std::uint64_t stream_index = 0;
};

// xoshiro256++ (Blackman & Vigna), 256-bit state, seeded through a
// splitmix64-style counter hash of (base_seed, stream_index).
// https://prng.di.unimi.it/xoshiro256plusplus.c
class RandomStream {
 public:
  explicit RandomStream(SeedSpec seed);

  std::uint64_t next_u64();
  double next_double();  // uniform on [0,1), 53-bit
  double next_normal();  // standard normal (Marsaglia polar, spare cached)

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

RandomStream derive_stream(SeedSpec seed);

// Gamma(shape, 1) via the Marsaglia-Tsang squeeze for shape >= 1,
// boost-by-one (Gamma(shape+1) * U^{1/shape}) for shape < 1.
double sample_gamma(double shape, RandomStream& stream);

// Beta(a,b) as Ga/(Ga+Gb) with independent Gamma draws.
double sample_beta(const BetaParams& params, RandomStream& stream);

}  // namespace degx
