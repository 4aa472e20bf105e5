#include "wavepack/recoil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace wavepack {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// [0, 1) with 53 random bits, independent of the standard library's
// distribution implementations.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void validate(double k, std::uint64_t n) {
  if (!std::isfinite(k) || k <= 0.0) {
    throw std::invalid_argument("recoil: k must be positive");
  }
  if (n == 0) {
    throw std::invalid_argument("recoil: n must be at least 1");
  }
}

// Running moments of the unit direction over one chunk.
struct Accumulator {
  std::uint64_t count = 0;
  double mean_z = 0.0;
  double m2_z = 0.0;
  double sum_x = 0.0;
  double sum_y = 0.0;

  void add(const Direction& d) {
    ++count;
    const double delta = d.z - mean_z;
    mean_z += delta / static_cast<double>(count);
    m2_z += delta * (d.z - mean_z);
    sum_x += d.x;
    sum_y += d.y;
  }

  void merge(const Accumulator& other) {
    if (other.count == 0) {
      return;
    }
    const auto na = static_cast<double>(count);
    const auto nb = static_cast<double>(other.count);
    const double total = na + nb;
    const double delta = other.mean_z - mean_z;
    mean_z += delta * nb / total;
    m2_z += other.m2_z + delta * delta * na * nb / total;
    sum_x += other.sum_x;
    sum_y += other.sum_y;
    count += other.count;
  }
};

Accumulator run_chunk(std::uint64_t seed, std::uint64_t chunk, std::uint64_t n) {
  auto rng = chunk_engine(seed, chunk);
  const std::uint64_t begin = chunk * kRecoilChunk;
  const std::uint64_t end = std::min(n, begin + kRecoilChunk);
  Accumulator acc;
  for (std::uint64_t i = begin; i < end; ++i) {
    acc.add(sample_direction(rng));
  }
  return acc;
}

}  // namespace

Direction sample_direction(std::mt19937_64& rng) {
  const double cos_theta = 1.0 - unit_draw(rng);
  const double phi = 2.0 * std::numbers::pi * unit_draw(rng);
  const double sin_theta = std::sqrt((1.0 - cos_theta) * (1.0 + cos_theta));
  return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
  return std::mt19937_64{splitmix64(splitmix64(seed) ^ chunk)};
}

std::vector<Momentum> recoil_samples(double k, std::uint64_t n, std::uint64_t seed) {
  validate(k, n);
  std::vector<Momentum> out;
  out.reserve(n);
  const std::uint64_t chunks = (n + kRecoilChunk - 1) / kRecoilChunk;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    auto rng = chunk_engine(seed, c);
    const std::uint64_t end = std::min(n, (c + 1) * kRecoilChunk);
    for (std::uint64_t i = c * kRecoilChunk; i < end; ++i) {
      const Direction d = sample_direction(rng);
      out.push_back({k * d.x, k * d.y, k * d.z});
    }
  }
  return out;
}

RecoilStats recoil_stats(double k, std::uint64_t n, std::uint64_t seed, unsigned threads) {
  validate(k, n);
  const std::uint64_t chunks = (n + kRecoilChunk - 1) / kRecoilChunk;
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));

  std::vector<Accumulator> partial(chunks);
  auto work = [&](unsigned worker) {
    for (std::uint64_t c = worker; c < chunks; c += workers) {
      partial[c] = run_chunk(seed, c, n);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work, w);
    }
  }

  Accumulator total;
  for (const auto& acc : partial) {
    total.merge(acc);
  }
  const auto count = static_cast<double>(total.count);
  const double std_z = total.count > 1 ? std::sqrt(total.m2_z / (count - 1.0)) : 0.0;
  return {
      .n = n,
      .k = k,
      .mean_kz = k * total.mean_z,
      .std_kz = k * std_z,
      .mean_kx = k * (total.sum_x / count),
      .mean_ky = k * (total.sum_y / count),
      .seed = seed,
  };
}

}  // namespace wavepack
