#include <cmath>
#include <complex>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "wavepack/adjustment.hpp"

using namespace wavepack;
using C = std::complex<double>;

namespace {

ComplexObservable linear_energy(double e, double de, double x0) {
  const C energy{e, de};
  return {[energy](C z) { return energy * z; }, x0};
}

void check_residual_bound(const ComplexObservable& obs, const AdjustmentResult& r, double tol) {
  const C b = obs.evaluate({obs.x0, r.zeta});
  CHECK(std::abs(b.imag()) <= tol * std::max(1.0, std::abs(b)));
  CHECK(r.residual_im == std::abs(b.imag()));
  CHECK(r.adjusted_value == b.real());
}

}  // namespace

TEST_CASE("solve_imag_zero examples") {
  SUBCASE("(2 + i) z at x0 = 1") {
    const auto obs = linear_energy(2.0, 1.0, 1.0);
    const auto r = solve_imag_zero(obs);
    CHECK(r.zeta == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(r.adjusted_value == doctest::Approx(2.5).epsilon(1e-12));
    check_residual_bound(obs, r, 1e-12);
  }
  SUBCASE("real energy needs no continuation") {
    for (double x0 : {-3.0, 0.0, 0.7, 42.0}) {
      const auto r = solve_imag_zero(linear_energy(3.5, 0.0, x0));
      CHECK(r.zeta == 0.0);
      CHECK(r.adjusted_value == 3.5 * x0);
      CHECK(r.evaluations == 1);
    }
  }
  SUBCASE("z^2 at x0 = 1") {
    const auto r = solve_imag_zero({[](C z) { return z * z; }, 1.0});
    CHECK(r.zeta == 0.0);
    CHECK(r.adjusted_value == 1.0);
  }
}

TEST_CASE("solve_imag_zero picks the root nearest zero") {
  // Im B = (zeta - 3)(zeta + 0.75)(zeta - 8): roots on both sides of zero.
  const ComplexObservable obs{[](C z) {
                                const double zeta = z.imag();
                                return C{1.0, (zeta - 3.0) * (zeta + 0.75) * (zeta - 8.0)};
                              },
                              1.0};
  const auto r = solve_imag_zero(obs);
  CHECK(r.zeta == doctest::Approx(-0.75).epsilon(1e-12));

  const ComplexObservable mirrored{[](C z) {
                                     const double zeta = z.imag();
                                     return C{1.0, (zeta + 3.0) * (zeta - 0.5) * (zeta + 8.0)};
                                   },
                                   1.0};
  CHECK(solve_imag_zero(mirrored).zeta == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("solve_imag_zero on a nonlinear observable") {
  // Im[(x0 + i zeta)^3 - 2i] = 3 x0^2 zeta - zeta^3 - 2; nearest root lies in (0, 1).
  const ComplexObservable obs{[](C z) { return z * z * z - C{0.0, 2.0}; }, 1.2};
  const auto r = solve_imag_zero(obs);
  const double expected = oracle::bisect(
      [](double zeta) { return 3.0 * 1.44 * zeta - zeta * zeta * zeta - 2.0; }, 0.0, 1.0);
  CHECK(r.zeta == doctest::Approx(expected).epsilon(1e-10));
  check_residual_bound(obs, r, 1e-12);
}

TEST_CASE("solve_imag_zero errors") {
  SUBCASE("no sign change") {
    const ComplexObservable obs{[](C) { return C{1.0, 1.0}; }, 0.0};
    CHECK_THROWS_AS(solve_imag_zero(obs, {.tol = 1e-12, .zeta_max = 10.0}), NoRootInRange);
  }
  SUBCASE("root beyond zeta_max") {
    const auto obs = linear_energy(1.0, 5.0, 10.0);  // root at -50
    CHECK_THROWS_AS(solve_imag_zero(obs, {.tol = 1e-12, .zeta_max = 20.0}), NoRootInRange);
    CHECK(solve_imag_zero(obs, {.tol = 1e-12, .zeta_max = 60.0}).zeta ==
          doctest::Approx(-50.0).epsilon(1e-12));
  }
  SUBCASE("non-finite evaluation aborts") {
    const ComplexObservable obs{[](C z) {
                                  if (std::abs(z.imag()) > 1e-3) {
                                    return C{std::numeric_limits<double>::quiet_NaN(), 0.0};
                                  }
                                  return C{1.0, 1.0};
                                },
                                0.0};
    CHECK_THROWS_AS(solve_imag_zero(obs), EvaluationFailure);
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(solve_imag_zero({}), std::invalid_argument);
    CHECK_THROWS_AS(solve_imag_zero(linear_energy(1.0, 1.0, 1.0), {.tol = 0.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("solver agrees with the closed form and is deterministic") {
  auto rng = oracle::property_rng(10);
  for (int i = 0; i < 200; ++i) {
    const double e = oracle::uniform(rng, -10.0, 10.0);
    const double de = oracle::uniform(rng, -1.0, 1.0) * std::abs(e);
    const double t = oracle::uniform(rng, -10.0, 10.0);
    const auto obs = linear_energy(e, de, t);
    const auto r = solve_imag_zero(obs);
    const auto closed = adjusted_energy_consistent({e, de}, t);
    CHECK(std::abs(r.zeta - closed.zeta) <= 1e-10);
    CHECK(oracle::rel_err(r.adjusted_value, closed.value, 1e-300) <= 1e-10);
    check_residual_bound(obs, r, 1e-12);

    const auto again = solve_imag_zero(obs);
    CHECK(again.zeta == r.zeta);
    CHECK(again.adjusted_value == r.adjusted_value);
    CHECK(again.evaluations == r.evaluations);
  }
}

TEST_CASE("adjusted_energy_consistent") {
  auto c = adjusted_energy_consistent({2.0, 1.0}, 1.0);
  CHECK(c.zeta == -0.5);
  CHECK(c.value == 2.5);
  c = adjusted_energy_consistent({5.0, 0.0}, 3.0);
  CHECK(c.zeta == 0.0);
  CHECK(c.value == 15.0);
  c = adjusted_energy_consistent({1.0, 0.5}, 2.0);
  CHECK(c.zeta == -1.0);
  CHECK(c.value == 2.5);

  const auto solved = solve_imag_zero(linear_energy(1.0, 0.5, 2.0));
  CHECK(solved.zeta == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(solved.adjusted_value == doctest::Approx(2.5).epsilon(1e-12));

  CHECK_THROWS_AS(adjusted_energy_consistent({0.0, 1.0}, 1.0), UndefinedAdjustment);
}

TEST_CASE("adjusted_energy_paper") {
  CHECK(adjusted_energy_paper({1.0, 0.0}) == 1.0);
  CHECK(adjusted_energy_paper({2.0, 1.0}) == 1.5);
  CHECK(adjusted_energy_paper({1.0, 0.5}) == 0.75);
  CHECK_THROWS_AS(adjusted_energy_paper({0.0, 0.5}), UndefinedAdjustment);

  auto rng = oracle::property_rng(11);
  for (int i = 0; i < 100; ++i) {
    const double e = oracle::uniform(rng, -10.0, 10.0);
    const double de = oracle::uniform(rng, -10.0, 10.0);
    CHECK(adjusted_energy_paper({e, de}) == adjusted_energy_paper({e, -de}));
    CHECK(adjusted_energy_paper({e, 0.0}) == e);
  }
}

TEST_CASE("expand_product") {
  auto p = expand_product({2.0, 1.0}, 1.0, -0.5);
  CHECK(p.re == 2.5);
  CHECK(p.im == 0.0);
  p = expand_product({1.0, 0.0}, 1.0, 0.0);
  CHECK(p.re == 1.0);
  CHECK(p.im == 0.0);
  p = expand_product({2.0, 1.0}, 1.0, 0.5);
  CHECK(p.re == 1.5);
  CHECK(p.im == 2.0);

  auto rng = oracle::property_rng(12);
  for (int i = 0; i < 100; ++i) {
    const double e = oracle::uniform(rng, -10.0, 10.0);
    const double de = oracle::uniform(rng, -10.0, 10.0);
    const double t = oracle::uniform(rng, -10.0, 10.0);
    const double tau = oracle::uniform(rng, -10.0, 10.0);
    const C direct = C{e, de} * C{t, tau};
    const auto parts = expand_product({e, de}, t, tau);
    CHECK(parts.re == doctest::Approx(direct.real()).epsilon(1e-14));
    CHECK(parts.im == doctest::Approx(direct.imag()).epsilon(1e-14));

    // The consistent continuation cancels the imaginary part up to rounding of de * t.
    const auto c = adjusted_energy_consistent({e, de}, t);
    const auto at = expand_product({e, de}, t, c.zeta);
    CHECK(std::abs(at.im) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(de * t));
    CHECK(at.re == doctest::Approx(c.value).epsilon(1e-14));

    // The published continuation leaves 2 de t behind.
    const auto paper = expand_product({e, de}, t, de * t / e);
    CHECK(paper.im == doctest::Approx(2.0 * de * t).epsilon(1e-14));
    CHECK(paper.re == doctest::Approx(adjusted_energy_paper({e, de}) * t).epsilon(1e-12));
  }
}

TEST_CASE("zero width collapses every route to E") {
  for (double e : {-4.0, 0.3, 2.0, 9.5}) {
    for (double t : {-2.0, 0.0, 1.0, 7.25}) {
      CHECK(adjusted_energy_paper({e, 0.0}) == e);
      CHECK(adjusted_energy_consistent({e, 0.0}, t).value == e * t);
      CHECK(solve_imag_zero(linear_energy(e, 0.0, t)).adjusted_value == e * t);
    }
  }
}

TEST_CASE("lifetime_width") {
  CHECK(lifetime_width(1.0, 1.0) == 1.0);
  CHECK(lifetime_width(2.0, 1.0) == 0.5);
  CHECK(lifetime_width(1.0, 2.0) == 2.0);
  CHECK(lifetime_width(4.0) == 0.25);
  CHECK_THROWS_AS(lifetime_width(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lifetime_width(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lifetime_width(1.0, 0.0), std::invalid_argument);
}
