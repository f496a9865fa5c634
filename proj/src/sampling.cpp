#include "degx/sampling.hpp"

#include <cmath>

namespace degx {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// splitmix64 finalizer; also used as the (base_seed, stream_index) mixer so
// consecutive stream indices land in unrelated state regions.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(SeedSpec seed) {
  std::uint64_t h = mix64(seed.base_seed ^ 0x8e9d5aef53c3ef17ULL);
  h ^= mix64(seed.stream_index + 0xd1b54a32d192ed03ULL);
  // expand into 256 bits of state with a splitmix64 walk
  for (auto& w : s_) {
    h += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = h;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    w = z ^ (z >> 31);
  }
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero is absorbing
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::next_double() {
  return (next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_double() - 1.0;
    v = 2.0 * next_double() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  has_spare_ = true;
  return u * m;
}

RandomStream derive_stream(SeedSpec seed) { return RandomStream(seed); }

double sample_gamma(double shape, RandomStream& stream) {
  if (!(shape > 0.0) || !std::isfinite(shape))
    throw std::domain_error("sample_gamma: requires finite shape > 0");
  if (shape < 1.0) {
    // boost by one: G(shape) = G(shape+1) * U^{1/shape}
    const double g = sample_gamma(shape + 1.0, stream);
    double u;
    do { u = stream.next_double(); } while (u == 0.0);
    return g * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = stream.next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.next_double();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_beta(const BetaParams& params, RandomStream& stream) {
  validate(params);
  const double ga = sample_gamma(params.a, stream);
  const double gb = sample_gamma(params.b, stream);
  if (ga + gb == 0.0) return 0.5;  // ~never: both gammas underflowed
  return ga / (ga + gb);
}

}  // namespace degx
