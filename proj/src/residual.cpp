#include "vpair/residual.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vpair {

namespace {

void check_self_guard(double eps, double b, const FourierMap& f) {
  if (std::abs(eps) * b * f.deriv_norm1() >= 0.5)
    throw std::domain_error("state outside the solver ball: |eps|*b*sum n|a_n| >= 1/2");
}

void check_cross_guard(double eps, double b1, double b2, double d, const FourierMap& fa,
                       const FourierMap& fb) {
  const double fnorm = std::max(fa.coeff_norm1(), fb.coeff_norm1());
  if (std::abs(eps) * (b1 + b2) * (1.0 + fnorm) >= 0.5 * d)
    throw std::domain_error(
        "patch geometry overlap: cross-interaction denominator margin violated");
}

}  // namespace

std::vector<cd> self_interaction(double eps, double b, const FourierMap& f,
                                 const CircleGrid& colloc, const CircleGrid& quad, Exec exec) {
  check_self_guard(eps, b, f);
  const auto f_quad = evaluate(f, quad, 0);
  const auto fp_quad = evaluate(f, quad, 1);
  const auto f_coll = evaluate(f, colloc, 0);
  const double eb = eps * b;
  std::vector<cd> out(colloc.size);
  for_each_index(colloc.size, exec, [&](int i) {
    const cd w = colloc.nodes[i];
    const cd fw = f_coll[i];
    cd acc(0.0, 0.0);
    for (int k = 0; k < quad.size; ++k) {
      const cd tau = quad.nodes[k];
      const cd A = tau - w;
      const cd B = f_quad[k] - fw;
      // A*conj(B) - conj(A)*B = 2i*Im{A*conj(B)}; forming the imaginary
      // part directly halves the work and keeps the value exactly
      // imaginary.
      const double im = A.imag() * B.real() - A.real() * B.imag();
      const cd num(0.0, 2.0 * im);
      const cd den = A * (A + eb * B);
      acc += num / den * (fp_quad[k] - B / A) * tau;
    }
    out[i] = acc / static_cast<double>(quad.size);
  });
  return out;
}

std::vector<cd> cross_interaction(double eps, double b_self, double b_other, double d,
                                  const FourierMap& f_self, const FourierMap& f_other,
                                  const CircleGrid& colloc, const CircleGrid& quad, Exec exec) {
  check_cross_guard(eps, b_self, b_other, d, f_self, f_other);
  const auto fo_quad = evaluate(f_other, quad, 0);
  const auto fop_quad = evaluate(f_other, quad, 1);
  const auto fs_coll = evaluate(f_self, colloc, 0);
  const double ebo = eps * b_other;
  std::vector<cd> out(colloc.size);
  for_each_index(colloc.size, exec, [&](int i) {
    const cd w = colloc.nodes[i];
    const cd self_term = eps * b_self * w + eps * eps * b_self * b_self * fs_coll[i] - d;
    cd acc(0.0, 0.0);
    for (int k = 0; k < quad.size; ++k) {
      const cd tau = quad.nodes[k];
      const cd num = (std::conj(tau) + ebo * std::conj(fo_quad[k])) * (1.0 + ebo * fop_quad[k]);
      const cd den = eps * b_other * tau + eps * eps * b_other * b_other * fo_quad[k] + self_term;
      acc += num / den * tau;
    }
    out[i] = acc / static_cast<double>(quad.size);
  });
  return out;
}

std::pair<std::vector<double>, std::vector<double>> residual_values(
    const PairConfig& cfg, double eps, const StateVector& g, const CircleGrid& colloc,
    const CircleGrid& quad, Exec exec) {
  if (g.f1.modes() != g.f2.modes())
    throw std::invalid_argument("residual: patch maps must share one truncation");
  std::pair<std::vector<double>, std::vector<double>> result;
  for (int j = 1; j <= 2; ++j) {
    const FourierMap& f_self = (j == 1) ? g.f1 : g.f2;
    const FourierMap& f_other = (j == 1) ? g.f2 : g.f1;
    const double b_self = (j == 1) ? cfg.b1 : cfg.b2;
    const double b_other = (j == 1) ? cfg.b2 : cfg.b1;
    double g_self, g_other;
    if (cfg.mode == PairMode::co_rotating) {
      g_self = (j == 1) ? cfg.gamma1 : cfg.gamma2;
      g_other = (j == 1) ? cfg.gamma2 : cfg.gamma1;
    } else {
      // Counter mode solves for gamma2 = g.s2; cfg.gamma2 plays no role.
      g_self = (j == 1) ? cfg.gamma1 : g.s2;
      g_other = (j == 1) ? g.s2 : cfg.gamma1;
    }
    const double eb = eps * b_self;

    const auto S = self_interaction(eps, b_self, f_self, colloc, quad, exec);
    const auto K =
        cross_interaction(eps, b_self, b_other, cfg.d, f_self, f_other, colloc, quad, exec);
    const auto fw = evaluate(f_self, colloc, 0);
    const auto fpw = evaluate(f_self, colloc, 1);

    std::vector<double>& vals = (j == 1) ? result.first : result.second;
    vals.resize(colloc.size);
    for_each_index(colloc.size, exec, [&](int i) {
      const cd w = colloc.nodes[i];
      const cd P = w * (1.0 + eb * fpw[i]);  // w * phi_j'(w)
      cd E;
      if (cfg.mode == PairMode::co_rotating) {
        const double centre = (j == 1) ? -g.s2 : g.s2 - cfg.d;
        const cd radial = eb * (std::conj(w) + eb * std::conj(fw[i])) + centre;
        E = 2.0 * g.s1 * radial * P - g_self * fpw[i] + eb * g_self * P * S[i] -
            g_other * P * K[i];
      } else {
        E = 2.0 * g.s1 * P - g_self * fpw[i] + eb * g_self * P * S[i] + g_other * P * K[i];
      }
      vals[i] = E.imag();
    });
  }
  return result;
}

std::pair<SineSeries, SineSeries> residual_series(const PairConfig& cfg, double eps,
                                                  const StateVector& g, Exec exec) {
  const auto colloc = make_grid(cfg.M, 0.0);
  const auto quad = make_grid(cfg.M, 0.5);
  const auto vals = residual_values(cfg, eps, g, colloc, quad, exec);
  const int K = g.f1.modes() + 1;
  return {project_sine(vals.first, K, colloc), project_sine(vals.second, K, colloc)};
}

double residual_sup(const std::pair<SineSeries, SineSeries>& r) {
  return std::max(r.first.sup_norm(), r.second.sup_norm());
}

double truncation_indicator(const PairConfig& cfg, double eps, const StateVector& g, Exec exec) {
  const int N = g.f1.modes();
  const auto colloc = make_grid(2 * cfg.M, 0.0);
  const auto quad = make_grid(2 * cfg.M, 0.5);
  const auto vals = residual_values(cfg, eps, g, colloc, quad, exec);
  const int K_hi = 2 * N + 2;
  const auto s1 = project_sine(vals.first, K_hi, colloc);
  const auto s2 = project_sine(vals.second, K_hi, colloc);
  double sup = 0.0;
  for (int n = N + 2; n <= K_hi; ++n) {
    sup = std::max(sup, std::abs(s1.coeffs[n - 1]));
    sup = std::max(sup, std::abs(s2.coeffs[n - 1]));
  }
  return sup;
}

}  // namespace vpair
