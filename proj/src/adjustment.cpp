#include "wavepack/adjustment.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace wavepack {

namespace {

constexpr int kMaxRefineSteps = 400;

struct Probe {
  double zeta;
  std::complex<double> value;

  double im() const { return value.imag(); }
};

class ImagPartSolver {
 public:
  ImagPartSolver(const ComplexObservable& obs, double tol) : obs_(obs), tol_(tol) {}

  Probe probe(double zeta) {
    const std::complex<double> b = obs_.evaluate({obs_.x0, zeta});
    ++evaluations_;
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag())) {
      throw EvaluationFailure("evaluation failure: non-finite B at zeta = " +
                              std::to_string(zeta));
    }
    return {zeta, b};
  }

  bool converged(const Probe& p) const {
    return std::abs(p.im()) <= tol_ * std::max(1.0, std::abs(p.value));
  }

  // [lo, hi] brackets a sign change of Im B; neither end is converged.
  Probe refine(Probe lo, Probe hi) {
    bool bisect = false;
    for (int step = 0; step < kMaxRefineSteps; ++step) {
      const double width = std::abs(hi.zeta - lo.zeta);
      const double mid = 0.5 * (lo.zeta + hi.zeta);
      if (mid == lo.zeta || mid == hi.zeta) {
        break;
      }
      double next = hi.zeta - hi.im() * (hi.zeta - lo.zeta) / (hi.im() - lo.im());
      const bool inside = (next - lo.zeta) * (next - hi.zeta) < 0.0;
      if (bisect || !inside) {
        next = mid;
      }
      const Probe p = probe(next);
      if (converged(p)) {
        return p;
      }
      if (std::signbit(p.im()) == std::signbit(lo.im())) {
        lo = p;
      } else {
        hi = p;
      }
      bisect = std::abs(hi.zeta - lo.zeta) > 0.5 * width;
    }
    // Bracket collapsed to adjacent doubles without meeting the tolerance.
    return std::abs(lo.im()) <= std::abs(hi.im()) ? lo : hi;
  }

  int evaluations() const { return evaluations_; }

 private:
  const ComplexObservable& obs_;
  double tol_;
  int evaluations_ = 0;
};

bool sign_change(const Probe& a, const Probe& b) {
  return std::signbit(a.im()) != std::signbit(b.im());
}

AdjustmentResult make_result(const Probe& p, int evaluations) {
  return {p.zeta, p.value.real(), std::abs(p.im()), evaluations};
}

void require_nonzero_energy(const ComplexEnergy& ce) {
  if (ce.e == 0.0) {
    throw UndefinedAdjustment("adjustment undefined for E = 0");
  }
}

}  // namespace

AdjustmentResult solve_imag_zero(const ComplexObservable& obs, const SolveOptions& options) {
  if (!obs.evaluate) {
    throw std::invalid_argument("solve_imag_zero: observable has no evaluate function");
  }
  if (!(options.tol > 0.0) || !std::isfinite(options.tol)) {
    throw std::invalid_argument("solve_imag_zero: tol must be positive");
  }
  if (!std::isfinite(obs.x0)) {
    throw std::invalid_argument("solve_imag_zero: x0 must be finite");
  }
  const double zeta_max =
      options.zeta_max > 0.0 ? options.zeta_max : 1e6 * std::max(1.0, std::abs(obs.x0));

  ImagPartSolver solver(obs, options.tol);
  const Probe origin = solver.probe(0.0);
  if (solver.converged(origin)) {
    return make_result(origin, solver.evaluations());
  }

  Probe last_pos = origin;
  Probe last_neg = origin;
  double step = options.tol;
  for (;;) {
    const double reach = std::min(step, zeta_max);
    const Probe pos = solver.probe(reach);
    const Probe neg = solver.probe(-reach);

    std::optional<Probe> root_pos;
    std::optional<Probe> root_neg;
    if (solver.converged(pos)) {
      root_pos = pos;
    } else if (sign_change(last_pos, pos)) {
      root_pos = solver.refine(last_pos, pos);
    }
    if (solver.converged(neg)) {
      root_neg = neg;
    } else if (sign_change(last_neg, neg)) {
      root_neg = solver.refine(neg, last_neg);
    }

    if (root_pos && root_neg) {
      const Probe& best =
          std::abs(root_neg->zeta) < std::abs(root_pos->zeta) ? *root_neg : *root_pos;
      return make_result(best, solver.evaluations());
    }
    if (root_pos) {
      return make_result(*root_pos, solver.evaluations());
    }
    if (root_neg) {
      return make_result(*root_neg, solver.evaluations());
    }
    if (reach >= zeta_max) {
      throw NoRootInRange("no root in range: Im B keeps its sign for |zeta| <= " +
                          std::to_string(zeta_max));
    }
    last_pos = pos;
    last_neg = neg;
    step *= 2.0;
  }
}

Continuation adjusted_energy_consistent(const ComplexEnergy& ce, double t) {
  require_nonzero_energy(ce);
  return {-ce.de * t / ce.e, (ce.e + ce.de * ce.de / ce.e) * t};
}

double adjusted_energy_paper(const ComplexEnergy& ce) {
  require_nonzero_energy(ce);
  return ce.e - ce.de * ce.de / ce.e;
}

ComplexParts expand_product(const ComplexEnergy& ce, double t, double tau) {
  return {ce.e * t - ce.de * tau, ce.e * tau + ce.de * t};
}

double lifetime_width(double tau_life, double hbar) {
  if (!(tau_life > 0.0) || !std::isfinite(tau_life)) {
    throw std::invalid_argument("lifetime_width: lifetime must be positive");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw std::invalid_argument("lifetime_width: hbar must be positive");
  }
  return hbar / tau_life;
}

}  // namespace wavepack
