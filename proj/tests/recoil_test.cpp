#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "wavepack/recoil.hpp"

using namespace wavepack;

TEST_CASE("sample_direction") {
  std::mt19937_64 rng{99};
  for (int i = 0; i < 10000; ++i) {
    const Direction d = sample_direction(rng);
    CHECK(d.z > 0.0);
    CHECK(d.z <= 1.0);
    CHECK(std::abs(d.x * d.x + d.y * d.y + d.z * d.z - 1.0) <= 1e-12);
  }

  std::mt19937_64 a{7};
  std::mt19937_64 b{7};
  const Direction da = sample_direction(a);
  const Direction db = sample_direction(b);
  CHECK(da.x == db.x);
  CHECK(da.y == db.y);
  CHECK(da.z == db.z);
}

TEST_CASE("sample_direction mean of cos(theta) over 1e6 draws") {
  std::mt19937_64 rng{2024};
  const int n = 1'000'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += sample_direction(rng).z;
  }
  const double sigma = 1.0 / std::sqrt(12.0) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(sum / n - 0.5) <= 3.0 * sigma);
}

TEST_CASE("recoil_stats examples") {
  const auto one = recoil_stats(1.0, 1'000'000, 7);
  CHECK(std::abs(one.mean_kz - 0.5) <= 0.00087);
  CHECK(one.n == 1'000'000u);
  CHECK(one.seed == 7u);
  CHECK(one.k == 1.0);

  const auto two = recoil_stats(2.0, 1'000'000, 7);
  CHECK(two.mean_kz == 2.0 * one.mean_kz);
  CHECK(two.std_kz == 2.0 * one.std_kz);

  const auto single = recoil_stats(1.0, 1, 7);
  const auto sample = recoil_samples(1.0, 1, 7);
  CHECK(single.mean_kz == sample[0].kz);
  CHECK(single.std_kz == 0.0);
}

TEST_CASE("recoil_stats argument errors") {
  CHECK_THROWS_AS(recoil_stats(1.0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(recoil_stats(0.0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(recoil_stats(-1.0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(recoil_samples(1.0, 0, 1), std::invalid_argument);
}

TEST_CASE("recoil statistics converge") {
  const std::uint64_t n = 1'000'000;
  const auto s = recoil_stats(3.0, n, 11);
  const double sigma_z = 3.0 / std::sqrt(12.0) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(s.mean_kz - 1.5) <= 3.0 * sigma_z);

  const double var_cos = (s.std_kz / 3.0) * (s.std_kz / 3.0);
  CHECK(std::abs(var_cos - 1.0 / 12.0) <= 0.05 / 12.0);

  // x = sin(theta) cos(phi): E[x^2] = E[1 - c^2] / 2 = 1/3.
  const double sigma_xy = 3.0 * std::sqrt(1.0 / 3.0) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(s.mean_kx) <= 3.0 * sigma_xy);
  CHECK(std::abs(s.mean_ky) <= 3.0 * sigma_xy);
  CHECK(s.mean_kz >= 0.0);
  CHECK(s.mean_kz <= s.k);
}

TEST_CASE("per-sample momentum magnitude is k") {
  const double k = 2.75;
  for (const auto& p : recoil_samples(k, 200'000, 5)) {
    const double norm = std::sqrt(p.kx * p.kx + p.ky * p.ky + p.kz * p.kz);
    REQUIRE(std::abs(norm - k) <= 1e-12 * k);
    REQUIRE(p.kz > 0.0);
  }
}

TEST_CASE("stats match the sample stream and ignore the thread count") {
  const std::uint64_t n = 3 * kRecoilChunk + 123;
  const auto samples = recoil_samples(1.0, n, 42);
  double sum = 0.0;
  for (const auto& p : samples) {
    sum += p.kz;
  }
  const auto base = recoil_stats(1.0, n, 42, 1);
  CHECK(base.mean_kz == doctest::Approx(sum / static_cast<double>(n)).epsilon(1e-12));

  for (unsigned threads : {2u, 3u, 8u}) {
    const auto s = recoil_stats(1.0, n, 42, threads);
    CHECK(s.mean_kz == base.mean_kz);
    CHECK(s.std_kz == base.std_kz);
    CHECK(s.mean_kx == base.mean_kx);
    CHECK(s.mean_ky == base.mean_ky);
  }

  const auto other = recoil_stats(1.0, n, 43, 1);
  CHECK(other.mean_kz != base.mean_kz);
}
