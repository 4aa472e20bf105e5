#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

namespace wavepack {

/// A complex-valued quantity B depending on one argument that is continued
/// off the real axis, x0 -> x0 + i zeta.
struct ComplexObservable {
  std::function<std::complex<double>(std::complex<double>)> evaluate;
  double x0 = 0.0;
};

struct AdjustmentResult {
  double zeta;
  /// Re B(x0 + i zeta).
  double adjusted_value;
  /// |Im B(x0 + i zeta)|.
  double residual_im;
  int evaluations;
};

/// E + i dE; dE is the level width.
struct ComplexEnergy {
  double e;
  double de;
};

struct Continuation {
  double zeta;
  double value;
};

struct ComplexParts {
  double re;
  double im;
};

class NoRootInRange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EvaluationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UndefinedAdjustment : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct SolveOptions {
  /// Mixed tolerance: stop once |Im B| <= tol * max(1, |B|).
  double tol = 1e-12;
  /// Search half-width for zeta; <= 0 selects 1e6 * max(1, |x0|).
  double zeta_max = 0.0;
};

/// Finds the zeta of smallest magnitude with Im B(x0 + i zeta) = 0.
///
/// Brackets are grown geometrically (factor 2, starting at +/-tol) on both
/// sides of zero until Im B changes sign or |zeta| reaches zeta_max, then
/// refined by secant steps safeguarded with bisection. When both sides
/// bracket a root at the same expansion level, both are refined and the
/// smaller |zeta| wins (the positive one on a tie).
///
/// `evaluate` is called sequentially from the calling thread.
/// Throws NoRootInRange when no sign change exists within zeta_max and
/// EvaluationFailure when B is non-finite at a probed point.
AdjustmentResult solve_imag_zero(const ComplexObservable& obs, const SolveOptions& options = {});

/// Closed-form solution of Im[(E + i dE)(t + i zeta)] = 0:
/// zeta = -dE t / E, value = (E + dE^2 / E) t.
/// Throws UndefinedAdjustment for E = 0.
Continuation adjusted_energy_consistent(const ComplexEnergy& ce, double t);

/// The published energy estimate E - dE^2 / E. It corresponds to the
/// continuation zeta = +dE t / E, which leaves Im = 2 dE t rather than zero.
/// Throws UndefinedAdjustment for E = 0.
double adjusted_energy_paper(const ComplexEnergy& ce);

/// (E + i dE)(t + i tau) = (E t - dE tau) + i (E tau + dE t).
ComplexParts expand_product(const ComplexEnergy& ce, double t, double tau);

/// hbar / tau_life. Throws std::invalid_argument unless both are positive.
double lifetime_width(double tau_life, double hbar = 1.0);

}  // namespace wavepack
