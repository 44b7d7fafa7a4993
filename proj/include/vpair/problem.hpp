#pragma once

#include <utility>

#include "vpair/spectral.hpp"

namespace vpair {

// Two steady regimes: a pair rotating rigidly about a centre on the real
// axis, and an opposite-signed pair translating at constant speed.
enum class PairMode { co_rotating, counter_rotating };

// Problem data. Patch j has circulation pi*gamma_j, size ratio b_j; patch
// centres sit at 0 and d. In counter_rotating mode gamma2 is an unknown of
// the problem (it equals gamma1 only in the point limit) and the config
// field is ignored.
struct PairConfig {
  PairMode mode = PairMode::co_rotating;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double b1 = 1.0;
  double b2 = 1.0;
  double d = 5.0;
  int N = 32;          // Fourier modes per patch
  int M = 256;         // collocation/quadrature grid size
  double tol = 1e-12;  // Newton residual tolerance (scaled, see newton.hpp)
  int max_iter = 25;
};

// Unknowns of the steady problem: two scalars plus one boundary map per
// patch. co_rotating: s1 = angular velocity, s2 = rotation centre abscissa.
// counter_rotating: s1 = translation speed, s2 = gamma2.
struct StateVector {
  double s1 = 0.0;
  double s2 = 0.0;
  FourierMap f1;
  FourierMap f2;
};

// Direction in state space, same layout as StateVector.
struct TangentVector {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  FourierMap h1;
  FourierMap h2;
};

// Checks every config invariant; throws std::invalid_argument naming the
// violated one. The gamma1+gamma2 = 0 co-rotating case is reported as
// "linearization degenerate" since it kills the scalar block determinant.
const PairConfig& validate_config(const PairConfig& cfg);

// Scalars of the exact point-vortex equilibrium:
//   co_rotating:      (Omega0, Z0) = ((g1+g2)/(2d^2), d*g2/(g1+g2))
//   counter_rotating: (U0, gamma2) = (g1/(2d), g1)
std::pair<double, double> point_vortex_equilibrium(const PairConfig& cfg);

// Equilibrium scalars with zero maps of cfg.N modes; the eps = 0 solution.
StateVector base_state(const PairConfig& cfg);

// Derivative of the residual at (eps = 0, base state), applied to a tangent.
// Closed form; per patch j the output series over modes 1..N+1 is
//
//   co_rotating:      C1    = -2*alpha1*d*g_{3-j}/(g1+g2) - s_j*alpha2*(g1+g2)/d^2,
//                     s_1 = +1, s_2 = -1,
//   counter_rotating: C1    = 2*alpha1 - (j==1 ? alpha2/d : 0),
//   both:             C_{n+1} = -g_j * n * a_n^j   (g_j = gamma1 in counter mode)
//
// so scalars feed only mode 1 and map mode n feeds only mode n+1. This
// square structure is the contract the Newton system is built on.
std::pair<SineSeries, SineSeries> linearized_apply(const PairConfig& cfg, const TangentVector& h);

// Closed-form inverse of linearized_apply on series truncated at K = N+1
// modes per patch. Throws on the degenerate divisors (gamma1+gamma2 = 0
// co-rotating, gamma1 = 0 counter-rotating).
TangentVector linearized_solve(const PairConfig& cfg, const std::pair<SineSeries, SineSeries>& k);

}  // namespace vpair
