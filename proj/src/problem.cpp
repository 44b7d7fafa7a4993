#include "vpair/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vpair {

const PairConfig& validate_config(const PairConfig& cfg) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (!(cfg.b1 > 0.0)) fail("b1 must be positive");
  if (!(cfg.b2 > 0.0)) fail("b2 must be positive");
  if (!(cfg.d > 0.0)) fail("d must be positive");
  if (cfg.mode == PairMode::co_rotating) {
    if (!(cfg.d > 2.0 * (cfg.b1 + cfg.b2)))
      fail("d must exceed 2*(b1+b2) in co-rotating mode");
    if (cfg.gamma1 + cfg.gamma2 == 0.0)
      fail("linearization degenerate: gamma1 + gamma2 must be nonzero in co-rotating mode");
  } else {
    if (!(cfg.d > cfg.b1 + cfg.b2)) fail("d must exceed b1+b2 in counter-rotating mode");
    if (cfg.gamma1 == 0.0) fail("gamma1 must be nonzero in counter-rotating mode");
  }
  if (cfg.N < 1) fail("modes (N) must be >= 1");
  if (cfg.M < 2 * cfg.N + 4) fail("grid (M) must be >= 2N+4");
  if (!(cfg.tol > 0.0)) fail("tol must be positive");
  if (cfg.max_iter < 1) fail("max_iter must be >= 1");
  return cfg;
}

std::pair<double, double> point_vortex_equilibrium(const PairConfig& cfg) {
  if (cfg.mode == PairMode::co_rotating) {
    const double gsum = cfg.gamma1 + cfg.gamma2;
    return {gsum / (2.0 * cfg.d * cfg.d), cfg.d * cfg.gamma2 / gsum};
  }
  return {cfg.gamma1 / (2.0 * cfg.d), cfg.gamma1};
}

StateVector base_state(const PairConfig& cfg) {
  StateVector g;
  auto [s1, s2] = point_vortex_equilibrium(cfg);
  g.s1 = s1;
  g.s2 = s2;
  g.f1.coeffs.assign(cfg.N, 0.0);
  g.f2.coeffs.assign(cfg.N, 0.0);
  return g;
}

std::pair<SineSeries, SineSeries> linearized_apply(const PairConfig& cfg, const TangentVector& h) {
  if (h.h1.modes() != h.h2.modes())
    throw std::invalid_argument("linearized_apply: patch maps must share one truncation");
  const int N = h.h1.modes();
  SineSeries out[2];
  for (int j = 1; j <= 2; ++j) {
    SineSeries& s = out[j - 1];
    s.coeffs.assign(N + 1, 0.0);
    const FourierMap& hj = (j == 1) ? h.h1 : h.h2;
    if (cfg.mode == PairMode::co_rotating) {
      const double gsum = cfg.gamma1 + cfg.gamma2;
      const double g_self = (j == 1) ? cfg.gamma1 : cfg.gamma2;
      const double g_other = (j == 1) ? cfg.gamma2 : cfg.gamma1;
      const double sj = (j == 1) ? 1.0 : -1.0;
      s.coeffs[0] = -2.0 * h.alpha1 * cfg.d * g_other / gsum -
                    sj * h.alpha2 * gsum / (cfg.d * cfg.d);
      for (int n = 1; n <= N; ++n) s.coeffs[n] = -g_self * n * hj.coeffs[n - 1];
    } else {
      s.coeffs[0] = 2.0 * h.alpha1 - ((j == 1) ? h.alpha2 / cfg.d : 0.0);
      for (int n = 1; n <= N; ++n) s.coeffs[n] = -cfg.gamma1 * n * hj.coeffs[n - 1];
    }
  }
  return {out[0], out[1]};
}

TangentVector linearized_solve(const PairConfig& cfg,
                               const std::pair<SineSeries, SineSeries>& k) {
  const SineSeries& k1 = k.first;
  const SineSeries& k2 = k.second;
  if (k1.modes() != k2.modes() || k1.modes() < 1)
    throw std::invalid_argument("linearized_solve: series must share one truncation >= 1");
  const int K = k1.modes();
  const double A0 = k1.coeffs[0];
  const double B0 = k2.coeffs[0];
  TangentVector h;
  h.h1.coeffs.assign(K - 1, 0.0);
  h.h2.coeffs.assign(K - 1, 0.0);
  if (cfg.mode == PairMode::co_rotating) {
    const double gsum = cfg.gamma1 + cfg.gamma2;
    if (gsum == 0.0)
      throw std::domain_error("linearized_solve: degenerate, gamma1 + gamma2 = 0");
    h.alpha1 = -(A0 + B0) / (2.0 * cfg.d);
    h.alpha2 = -cfg.d * cfg.d * (A0 * cfg.gamma1 - B0 * cfg.gamma2) / (gsum * gsum);
    for (int n = 1; n < K; ++n) {
      h.h1.coeffs[n - 1] = -k1.coeffs[n] / (n * cfg.gamma1);
      h.h2.coeffs[n - 1] = -k2.coeffs[n] / (n * cfg.gamma2);
    }
  } else {
    if (cfg.gamma1 == 0.0) throw std::domain_error("linearized_solve: degenerate, gamma1 = 0");
    h.alpha1 = B0 / 2.0;
    h.alpha2 = cfg.d * (B0 - A0);
    for (int n = 1; n < K; ++n) {
      h.h1.coeffs[n - 1] = -k1.coeffs[n] / (n * cfg.gamma1);
      h.h2.coeffs[n - 1] = -k2.coeffs[n] / (n * cfg.gamma1);
    }
  }
  return h;
}

}  // namespace vpair
