#pragma once

#include <complex>
#include <vector>

namespace vpair {

using cd = std::complex<double>;

// Truncated boundary perturbation map with real Fourier coefficients,
//
//   f(w) = sum_{n=1..N} a_n * conj(w)^n,   |w| = 1.
//
// coeffs[i] stores a_{i+1}. Real coefficients encode the reflection symmetry
// of the patch boundaries about the centre line; the solver never leaves
// this subspace.
struct FourierMap {
  std::vector<double> coeffs;

  int modes() const { return static_cast<int>(coeffs.size()); }
  bool is_zero() const;

  // sum_n |a_n|, an upper bound for sup |f| on the circle.
  double coeff_norm1() const;
  // sum_n n*|a_n|, an upper bound for sup |f'| on the circle.
  double deriv_norm1() const;
};

// Equispaced nodes on the unit circle, w_k = exp(2*pi*i*(k+sigma)/M).
// sigma = 0 is the collocation grid, sigma = 1/2 the quadrature grid;
// equal sizes with the half-shift keep quadrature nodes away from every
// collocation point, so no kernel below ever sees tau == w.
struct CircleGrid {
  int size = 0;
  double sigma = 0.0;
  std::vector<cd> nodes;
};

// Builds the grid, precomputing all node positions once. M >= 4.
CircleGrid make_grid(int M, double sigma);

// Real series over the sine basis e_n = Im{w^n}; coeffs[i] multiplies
// Im{w^(i+1)}, i.e. coeffs[0] is the mode-1 coefficient.
struct SineSeries {
  std::vector<double> coeffs;

  int modes() const { return static_cast<int>(coeffs.size()); }
  double sup_norm() const;
};

// Evaluates f (order 0), f' (order 1) or f'' (order 2) at one unit-circle
// point. Derivatives are taken in w and come out analytically from the
// coefficients:
//
//   f'(w)  = -sum n*a_n*conj(w)^(n+1),
//   f''(w) =  sum n*(n+1)*a_n*conj(w)^(n+2).
cd evaluate_at(const FourierMap& f, cd w, int order = 0);

// evaluate_at over every node of a grid.
std::vector<cd> evaluate(const FourierMap& f, const CircleGrid& grid, int order = 0);

// Normalized contour integral (1/(2*pi*i)) * integral of v dtau over the
// unit circle, discretized as mean(values[k] * node[k]); exact for
// integrands of circle degree below the grid size.
cd contour_mean(const std::vector<cd>& values, const CircleGrid& grid);

// Projects sampled values onto sine modes 1..K:
//
//   C_n = (2/M) * sum_k values[k] * Im{w_k^n}.
//
// Exact (to rounding) whenever the samples are a sine polynomial of degree
// <= K and K < M/2; degrees above M-K alias, so callers keep M large enough
// for their truncation.
SineSeries project_sine(const std::vector<double>& values, int K, const CircleGrid& grid);

// Synthesis inverse of project_sine: samples sum_n C_n*Im{w^n} on the grid.
std::vector<double> sine_values(const SineSeries& s, const CircleGrid& grid);

}  // namespace vpair
