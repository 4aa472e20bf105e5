#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace wavepack {

/// Unit vector in the forward hemisphere (z > 0) about the nominal
/// propagation axis.
struct Direction {
  double x;
  double y;
  double z;
};

struct Momentum {
  double kx;
  double ky;
  double kz;
};

struct RecoilStats {
  std::uint64_t n;
  double k;
  double mean_kz;
  /// Sample (n - 1) standard deviation; 0 for a single sample.
  double std_kz;
  double mean_kx;
  double mean_ky;
  std::uint64_t seed;
};

/// Identifies the sampling stream layout recorded alongside every result.
inline constexpr std::string_view kRecoilGenerator = "mt19937_64/splitmix64-chunked";

/// Samples per independently seeded chunk. Chunk c draws from an
/// mt19937_64 seeded with splitmix64(seed, c), so results do not depend on
/// how chunks are spread over threads.
inline constexpr std::uint64_t kRecoilChunk = 1u << 16;

/// cos(theta) uniform on (0, 1] and phi uniform on [0, 2 pi), which is
/// uniform in solid angle over the 2 pi sr hemisphere. Consumes exactly two
/// 64-bit draws.
Direction sample_direction(std::mt19937_64& rng);

/// Engine for chunk `chunk` of a run seeded with `seed`.
std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk);

/// The n momenta k * direction in sampling order.
/// Throws std::invalid_argument unless k > 0 and n >= 1.
std::vector<Momentum> recoil_samples(double k, std::uint64_t n, std::uint64_t seed);

/// Mean and spread of the axial momentum over n absorbed photons of
/// wave number k. `threads` = 0 uses the hardware concurrency; the result is
/// bit-identical for every thread count.
/// Throws std::invalid_argument unless k > 0 and n >= 1.
RecoilStats recoil_stats(double k, std::uint64_t n, std::uint64_t seed, unsigned threads = 0);

}  // namespace wavepack
