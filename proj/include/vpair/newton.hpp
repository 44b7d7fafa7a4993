#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "vpair/branch.hpp"
#include "vpair/problem.hpp"
#include "vpair/residual.hpp"
#include "vpair/threading.hpp"

namespace vpair {

// Thrown when a Newton solve cannot be completed: non-convergence within
// max_iter, a singular Jacobian, or an iterate leaving the solver ball.
struct SolveError : std::runtime_error {
  SolveError(const std::string& msg, int iters, double final_res)
      : std::runtime_error(msg), iterations(iters), final_residual(final_res) {}
  int iterations;
  double final_residual;
};

// Unknown vector layout: (s1, s2, a_1^1..a_N^1, a_1^2..a_N^2), dimension 2N+2.
// The residual uses the matching layout (patch-1 coefficients C_1..C_{N+1},
// then patch-2), also dimension 2N+2, so the system is square.
Eigen::VectorXd pack_state(const StateVector& g);
StateVector unpack_state(int N, const Eigen::VectorXd& u);
Eigen::VectorXd pack_residual(const std::pair<SineSeries, SineSeries>& r);

// Convergence threshold tol * scale, where scale is the magnitude of the
// residual's natural units: max(1, |gamma1|, |gamma2|) in co-rotating mode
// and max(1, |gamma1|) in counter-rotating mode.
double residual_scale(const PairConfig& cfg);

// True when both patches satisfy |eps| * b_j * sum_n n*|a_n| <= 0.45, a
// margin inside the 1/2 ball where the functional's denominators are safe.
bool within_ball(const PairConfig& cfg, double eps, const StateVector& g);

// Central-difference Jacobian of the packed residual, step
// 1e-6 * max(1, |u_i|) per column.  Columns are evaluated independently (and
// in parallel); each evaluation runs its kernels serially so results do not
// depend on the execution policy.
Eigen::MatrixXd jacobian_fd(const PairConfig& cfg, double eps, const StateVector& g, Exec exec);

// Newton iteration from `init`, preconditioned on the left by the exact
// inverse of the eps = 0 linearization: both the Jacobian columns and the
// right-hand side are passed through linearized_solve before the dense LU.
// Converges without an update when the initial residual already meets the
// tolerance (so the disc pair at eps = 0 reports zero iterations).
VState newton_solve(const PairConfig& cfg, double eps, const StateVector& init,
                    Exec exec = Exec::parallel);

// Trace the branch through strictly increasing eps targets (the first may be
// 0).  Predictor: the closed-form expansion state while fewer than two states
// exist, then coefficient-wise polynomial extrapolation through the last
// min(3, #states) states.  On a failed target the step is bisected once (the
// midpoint is solved and kept as a state, then the target is retried); if
// that also fails the branch ends at the last converged eps, recorded in
// eps_max.  A failure on the very first target propagates as SolveError.
Branch continue_branch(const PairConfig& cfg, const std::vector<double>& eps_targets,
                       Exec exec = Exec::parallel);

}  // namespace vpair
