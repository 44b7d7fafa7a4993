#pragma once

#include <vector>

#include "vpair/problem.hpp"

namespace vpair {

// One converged point on the solution curve eps -> g(eps).
struct VState {
  double eps = 0.0;
  StateVector state;
  double residual_norm = 0.0;       // sup over projected residual coefficients
  int newton_iters = 0;             // update steps taken
  double truncation_indicator = 0.0;
  std::vector<double> residual_history;  // sup residual at each iterate, initial included
};

// Solution curve traced by continuation: states with strictly increasing
// eps, every entry converged; eps_max is the largest eps reached before a
// continuation step failed (a witness, not a claim of sharpness).
struct Branch {
  PairConfig config;
  std::vector<VState> states;
  double eps_max = 0.0;
};

}  // namespace vpair
