#pragma once

#include <utility>
#include <vector>

#include "vpair/problem.hpp"
#include "vpair/spectral.hpp"
#include "vpair/threading.hpp"

namespace vpair {

// Steady-state residual of the patch pair in desingularized form. The
// boundary of patch j is eps*b_j*phi_j(w) (patch 1) or -eps*b_j*phi_j(w)+d
// (patch 2) with phi_j(w) = w + eps*b_j*f_j(w); the residual is the normal
// velocity mismatch written as Im{...} on the unit circle, with the 1/eps
// self-interaction factor removed algebraically so every term extends
// smoothly through eps = 0.

// Self-interaction integral
//
//   S(w) = mean over tau of (A*conj(B) - conj(A)*B) / (A*(A + eps*b*B))
//          * (f'(tau) - B/A) * tau,
//   A = tau - w,  B = f(tau) - f(w),
//
// evaluated for every collocation node w with the staggered quadrature grid
// (so A never vanishes). Precondition |eps|*b*sum n|a_n| < 1/2 keeps
// A + eps*b*B away from zero; violations throw std::domain_error.
std::vector<cd> self_interaction(double eps, double b, const FourierMap& f,
                                 const CircleGrid& colloc, const CircleGrid& quad,
                                 Exec exec = Exec::parallel);

// Cross-interaction integral of patch j against the other patch,
//
//   K(w) = mean over tau of (conj(tau) + eps*b_o*conj(f_o(tau)))
//          * (1 + eps*b_o*f_o'(tau))
//          / (eps*(b_o*tau + b_s*w) + eps^2*(b_o^2*f_o(tau) + b_s^2*f_s(w)) - d)
//          * tau,
//
// where _s is the patch being evaluated and _o the other one. Precondition
// |eps|*(b1+b2)*(1+max coeff norm) < d/2 keeps the denominator away from
// zero; violations throw std::domain_error. At eps = 0 this is -1/d for any
// maps; for zero maps it collapses to 1/(eps*b_s*w - d).
std::vector<cd> cross_interaction(double eps, double b_self, double b_other, double d,
                                  const FourierMap& f_self, const FourierMap& f_other,
                                  const CircleGrid& colloc, const CircleGrid& quad,
                                  Exec exec = Exec::parallel);

// Raw residual samples Im{E_j(w)} at the collocation nodes, one vector per
// patch. Both patches of g must share one truncation. Grids are supplied by
// the caller (colloc sigma = 0, quad sigma = 1/2, equal sizes).
std::pair<std::vector<double>, std::vector<double>> residual_values(
    const PairConfig& cfg, double eps, const StateVector& g, const CircleGrid& colloc,
    const CircleGrid& quad, Exec exec = Exec::parallel);

// Residual projected onto sine modes 1..N+1 per patch (N taken from the
// state's maps), sampled on cfg.M-point grids. Together with the two
// scalars this makes the square system the Newton solver consumes: scalars
// act on mode 1 only, map mode n on mode n+1 only (see problem.hpp).
std::pair<SineSeries, SineSeries> residual_series(const PairConfig& cfg, double eps,
                                                  const StateVector& g,
                                                  Exec exec = Exec::parallel);

// Sup over both patches of projected residual coefficients.
double residual_sup(const std::pair<SineSeries, SineSeries>& r);

// Spillover of the residual beyond the solved modes: sup of projected
// coefficients over modes N+2..2N+2, measured on doubled (2*cfg.M) grids.
// Decays as N grows for a fixed smooth state; reported with each solver
// result as a truncation health number.
double truncation_indicator(const PairConfig& cfg, double eps, const StateVector& g,
                            Exec exec = Exec::parallel);

}  // namespace vpair
