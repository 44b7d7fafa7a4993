#include "vpair/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vpair/expansion.hpp"

namespace vpair {

Eigen::VectorXd pack_state(const StateVector& g) {
  const int N = g.f1.modes();
  if (g.f2.modes() != N) throw std::invalid_argument("pack_state: patch truncations differ");
  Eigen::VectorXd u(2 * N + 2);
  u(0) = g.s1;
  u(1) = g.s2;
  for (int n = 0; n < N; ++n) {
    u(2 + n) = g.f1.coeffs[static_cast<std::size_t>(n)];
    u(2 + N + n) = g.f2.coeffs[static_cast<std::size_t>(n)];
  }
  return u;
}

StateVector unpack_state(int N, const Eigen::VectorXd& u) {
  if (u.size() != 2 * N + 2) throw std::invalid_argument("unpack_state: size mismatch");
  StateVector g;
  g.s1 = u(0);
  g.s2 = u(1);
  g.f1.coeffs.resize(static_cast<std::size_t>(N));
  g.f2.coeffs.resize(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) {
    g.f1.coeffs[static_cast<std::size_t>(n)] = u(2 + n);
    g.f2.coeffs[static_cast<std::size_t>(n)] = u(2 + N + n);
  }
  return g;
}

Eigen::VectorXd pack_residual(const std::pair<SineSeries, SineSeries>& r) {
  const int K = r.first.modes();
  if (r.second.modes() != K) throw std::invalid_argument("pack_residual: truncations differ");
  Eigen::VectorXd v(2 * K);
  for (int n = 0; n < K; ++n) {
    v(n) = r.first.coeffs[static_cast<std::size_t>(n)];
    v(K + n) = r.second.coeffs[static_cast<std::size_t>(n)];
  }
  return v;
}

double residual_scale(const PairConfig& cfg) {
  double s = std::max(1.0, std::abs(cfg.gamma1));
  if (cfg.mode == PairMode::co_rotating) s = std::max(s, std::abs(cfg.gamma2));
  return s;
}

bool within_ball(const PairConfig& cfg, double eps, const StateVector& g) {
  const double m1 = std::abs(eps) * cfg.b1 * g.f1.deriv_norm1();
  const double m2 = std::abs(eps) * cfg.b2 * g.f2.deriv_norm1();
  return std::max(m1, m2) <= 0.45;
}

Eigen::MatrixXd jacobian_fd(const PairConfig& cfg, double eps, const StateVector& g, Exec exec) {
  const int N = cfg.N;
  const int dim = 2 * N + 2;
  if (g.f1.modes() != N || g.f2.modes() != N)
    throw std::invalid_argument("jacobian_fd: state truncation must equal cfg.N");
  const Eigen::VectorXd u0 = pack_state(g);
  Eigen::MatrixXd J(dim, dim);
  std::vector<std::string> errors(static_cast<std::size_t>(dim));
  for_each_index(dim, exec, [&](int c) {
    try {
      const double h = 1e-6 * std::max(1.0, std::abs(u0(c)));
      Eigen::VectorXd up = u0, um = u0;
      up(c) += h;
      um(c) -= h;
      const Eigen::VectorXd rp =
          pack_residual(residual_series(cfg, eps, unpack_state(N, up), Exec::serial));
      const Eigen::VectorXd rm =
          pack_residual(residual_series(cfg, eps, unpack_state(N, um), Exec::serial));
      J.col(c) = (rp - rm) / (2.0 * h);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(c)] = e.what();
    }
  });
  for (const std::string& e : errors)
    if (!e.empty()) throw std::domain_error("jacobian_fd: " + e);
  return J;
}

namespace {

// Apply the inverse of the eps = 0 linearization to a packed residual-space
// vector, returning the packed tangent-space result.
Eigen::VectorXd precondition(const PairConfig& cfg, const Eigen::VectorXd& r) {
  const int K = static_cast<int>(r.size()) / 2;
  SineSeries r1, r2;
  r1.coeffs.assign(static_cast<std::size_t>(K), 0.0);
  r2.coeffs.assign(static_cast<std::size_t>(K), 0.0);
  for (int n = 0; n < K; ++n) {
    r1.coeffs[static_cast<std::size_t>(n)] = r(n);
    r2.coeffs[static_cast<std::size_t>(n)] = r(K + n);
  }
  const TangentVector t = linearized_solve(cfg, {r1, r2});
  Eigen::VectorXd out(r.size());
  out(0) = t.alpha1;
  out(1) = t.alpha2;
  const int N = t.h1.modes();
  for (int n = 0; n < N; ++n) {
    out(2 + n) = t.h1.coeffs[static_cast<std::size_t>(n)];
    out(2 + N + n) = t.h2.coeffs[static_cast<std::size_t>(n)];
  }
  return out;
}

}  // namespace

VState newton_solve(const PairConfig& cfg, double eps, const StateVector& init, Exec exec) {
  validate_config(cfg);
  if (init.f1.modes() != cfg.N || init.f2.modes() != cfg.N)
    throw std::invalid_argument("newton_solve: init truncation must equal cfg.N");
  if (!within_ball(cfg, eps, init))
    throw SolveError("newton_solve: initial state outside the solver ball", 0,
                     std::numeric_limits<double>::quiet_NaN());

  const double threshold = cfg.tol * residual_scale(cfg);
  StateVector g = init;
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(cfg.max_iter) + 1);

  for (int it = 0;; ++it) {
    const auto r = residual_series(cfg, eps, g, exec);
    const double rn = std::max(r.first.sup_norm(), r.second.sup_norm());
    history.push_back(rn);
    if (rn <= threshold) {
      VState v;
      v.eps = eps;
      v.state = g;
      v.residual_norm = rn;
      v.newton_iters = it;
      v.truncation_indicator = truncation_indicator(cfg, eps, g, exec);
      v.residual_history = std::move(history);
      return v;
    }
    if (it >= cfg.max_iter)
      throw SolveError("newton_solve: no convergence within max_iter", it, rn);

    const Eigen::MatrixXd J = jacobian_fd(cfg, eps, g, exec);
    const int dim = static_cast<int>(J.cols());
    Eigen::MatrixXd M(dim, dim);
    for (int c = 0; c < dim; ++c) M.col(c) = precondition(cfg, J.col(c));
    const Eigen::VectorXd rhs = precondition(cfg, -pack_residual(r));

    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) throw SolveError("newton_solve: singular Jacobian", it, rn);
    const Eigen::VectorXd du = lu.solve(rhs);

    g = unpack_state(cfg.N, pack_state(g) + du);
    if (!within_ball(cfg, eps, g))
      throw SolveError("newton_solve: iterate left the solver ball", it + 1, rn);
  }
}

namespace {

StateVector predict(const PairConfig& cfg, const std::vector<VState>& states, double eps) {
  if (states.size() < 2) return expansion_state(cfg, eps);
  const std::size_t m = std::min<std::size_t>(3, states.size());
  const std::size_t first = states.size() - m;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * cfg.N + 2);
  for (std::size_t i = first; i < states.size(); ++i) {
    double w = 1.0;
    for (std::size_t k = first; k < states.size(); ++k) {
      if (k == i) continue;
      w *= (eps - states[k].eps) / (states[i].eps - states[k].eps);
    }
    u += w * pack_state(states[i].state);
  }
  return unpack_state(cfg.N, u);
}

}  // namespace

Branch continue_branch(const PairConfig& cfg, const std::vector<double>& eps_targets, Exec exec) {
  validate_config(cfg);
  if (eps_targets.empty()) throw std::invalid_argument("continue_branch: no eps targets");
  for (std::size_t i = 0; i + 1 < eps_targets.size(); ++i)
    if (!(eps_targets[i] < eps_targets[i + 1]))
      throw std::invalid_argument("continue_branch: eps targets must be strictly increasing");

  Branch br;
  br.config = cfg;

  auto attempt = [&](double eps) { return newton_solve(cfg, eps, predict(cfg, br.states, eps), exec); };

  for (double target : eps_targets) {
    try {
      br.states.push_back(attempt(target));
    } catch (const SolveError& e) {
      if (br.states.empty())
        throw SolveError(std::string("continue_branch: first target failed: ") + e.what(),
                         e.iterations, e.final_residual);
      // One bisection of the failed step: solve the midpoint, then retry.
      const double mid = 0.5 * (br.states.back().eps + target);
      try {
        br.states.push_back(attempt(mid));
        br.states.push_back(attempt(target));
      } catch (const SolveError&) {
        break;  // branch ends at the last converged state
      }
    }
  }
  br.eps_max = br.states.back().eps;
  return br;
}

}  // namespace vpair
