#include "vpair/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vpair {

namespace {

constexpr double kPi = std::numbers::pi;

// Effective strength of patch 2: the counter-rotating patch carries negative
// vorticity of magnitude s2 (the solved circulation parameter).
double gamma2_effective(const PairConfig& cfg, const VState& v) {
  return cfg.mode == PairMode::co_rotating ? cfg.gamma2 : -v.state.s2;
}

double probe_scale(const PairConfig& cfg, const VState& v) {
  return std::max(std::abs(cfg.gamma1), std::abs(gamma2_effective(cfg, v))) / cfg.d;
}

// NaN-reporting core so parallel sweeps can defer the throw to the caller.
double curvature_kernel(double eps_b, const FourierMap& f, cd w) {
  const cd phi_p = 1.0 + eps_b * evaluate_at(f, w, 1);
  const double ap = std::abs(phi_p);
  if (ap < 1e-14) return std::numeric_limits<double>::quiet_NaN();
  const cd phi_pp = eps_b * evaluate_at(f, w, 2);
  return std::real(1.0 + w * phi_pp / phi_p) / ap;
}

// Total turning angle of a sampled tangent field; simple closed curves give
// +2*pi. Throws if a tangent vanishes.
void check_turning(const std::vector<cd>& t, const char* which) {
  const int m = static_cast<int>(t.size());
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    const cd a = t[k];
    const cd b = t[(k + 1) % m];
    if (a == cd(0.0) || b == cd(0.0))
      throw std::domain_error(std::string("reconstruct_patches: degenerate tangent on ") + which);
    total += std::arg(b / a);
  }
  if (std::abs(total - 2.0 * kPi) > 0.1)
    throw std::domain_error(std::string("reconstruct_patches: ") + which +
                            " boundary is not a simple closed curve");
}

}  // namespace

double curvature_at(double eps_b, const FourierMap& f, cd w) {
  const double k = curvature_kernel(eps_b, f, w);
  if (std::isnan(k))
    throw std::domain_error("curvature_at: boundary map is degenerate (phi' vanishes)");
  return k;
}

double min_curvature(const PairConfig& cfg, const VState& v, int M_scan, Exec exec) {
  validate_config(cfg);
  const CircleGrid grid = make_grid(M_scan, 0.0);
  const double c1 = v.eps * cfg.b1;
  const double c2 = v.eps * cfg.b2;
  std::vector<double> vals(2 * static_cast<std::size_t>(M_scan));
  for_each_index(2 * M_scan, exec, [&](int idx) {
    if (idx < M_scan)
      vals[idx] = curvature_kernel(c1, v.state.f1, grid.nodes[idx]);
    else
      vals[idx] = curvature_kernel(c2, v.state.f2, grid.nodes[idx - M_scan]);
  });
  double out = vals[0];
  for (double k : vals) {
    if (std::isnan(k))
      throw std::domain_error("min_curvature: boundary map is degenerate (phi' vanishes)");
    out = std::min(out, k);
  }
  return out;
}

double convexity_bound(const PairConfig& cfg, const VState& v) {
  validate_config(cfg);
  const auto patch_bound = [](double c, const FourierMap& f) {
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < f.modes(); ++i) {
      const int n = i + 1;
      s1 += n * std::abs(f.coeffs[i]);
      s2 += n * (n + 1.0) * std::abs(f.coeffs[i]);
    }
    const double denom = 1.0 - std::abs(c) * s1;
    if (denom <= 0.0) return -std::numeric_limits<double>::infinity();
    return 1.0 - std::abs(c) * s2 / denom;
  };
  return std::min(patch_bound(v.eps * cfg.b1, v.state.f1),
                  patch_bound(v.eps * cfg.b2, v.state.f2));
}

PhysicalPatchPair reconstruct_patches(const PairConfig& cfg, const VState& v, int M_out) {
  validate_config(cfg);
  if (v.eps == 0.0)
    throw std::invalid_argument("reconstruct_patches: eps = 0 collapses the patches to points");
  const CircleGrid grid = make_grid(M_out, 0.0);
  const double c1 = v.eps * cfg.b1;
  const double c2 = v.eps * cfg.b2;
  const auto f1v = evaluate(v.state.f1, grid);
  const auto f1p = evaluate(v.state.f1, grid, 1);
  const auto f2v = evaluate(v.state.f2, grid);
  const auto f2p = evaluate(v.state.f2, grid, 1);

  PhysicalPatchPair out;
  out.centre1 = cd(0.0);
  out.centre2 = cd(cfg.d);
  out.boundary1.resize(grid.nodes.size());
  out.boundary2.resize(grid.nodes.size());
  std::vector<cd> t1(grid.nodes.size()), t2(grid.nodes.size());
  for (std::size_t k = 0; k < grid.nodes.size(); ++k) {
    const cd w = grid.nodes[k];
    out.boundary1[k] = c1 * (w + c1 * f1v[k]);
    out.boundary2[k] = -c2 * (w + c2 * f2v[k]) + cfg.d;
    t1[k] = c1 * (1.0 + c1 * f1p[k]) * cd(0.0, 1.0) * w;
    t2[k] = -c2 * (1.0 + c2 * f2p[k]) * cd(0.0, 1.0) * w;
  }
  check_turning(t1, "patch 1");
  check_turning(t2, "patch 2");

  // Disjointness: each boundary stays inside a disc about its own centre and
  // the two discs must not meet.
  double r1 = 0.0, r2 = 0.0;
  for (std::size_t k = 0; k < grid.nodes.size(); ++k) {
    r1 = std::max(r1, std::abs(out.boundary1[k]));
    r2 = std::max(r2, std::abs(out.boundary2[k] - cd(cfg.d)));
  }
  if (!(r1 + r2 < cfg.d))
    throw std::domain_error("reconstruct_patches: patches overlap or touch");

  double gap = std::numeric_limits<double>::infinity();
  for (const cd& p : out.boundary1)
    for (const cd& q : out.boundary2) gap = std::min(gap, std::abs(p - q));
  out.min_gap = gap;

  out.amplitude1 = cfg.gamma1 / (c1 * c1);
  out.amplitude2 = gamma2_effective(cfg, v) / (c2 * c2);
  return out;
}

PatchMoments patch_moments(const PairConfig& cfg, const VState& v) {
  validate_config(cfg);
  if (v.eps == 0.0)
    throw std::invalid_argument("patch_moments: eps = 0 collapses the patches to points");
  const double c1 = v.eps * cfg.b1;
  const double c2 = v.eps * cfg.b2;
  const double g2 = gamma2_effective(cfg, v);

  const auto shape_factor = [](double c, const FourierMap& f) {
    double s = 1.0;
    for (int i = 0; i < f.modes(); ++i) {
      const double t = c * f.coeffs[i];
      s -= (i + 1) * t * t;
    }
    return s;
  };
  const double sf1 = shape_factor(c1, v.state.f1);
  const double sf2 = shape_factor(c2, v.state.f2);

  PatchMoments m;
  m.area1 = kPi * c1 * c1 * sf1;
  m.area2 = kPi * c2 * c2 * sf2;
  m.circ1 = kPi * cfg.gamma1 * sf1;
  m.circ2 = kPi * g2 * sf2;

  const CircleGrid quad = make_grid(cfg.M, 0.5);
  const auto f1v = evaluate(v.state.f1, quad);
  const auto f1p = evaluate(v.state.f1, quad, 1);
  const auto f2v = evaluate(v.state.f2, quad);
  const auto f2p = evaluate(v.state.f2, quad, 1);
  double a1 = 0.0, a2 = 0.0;
  cd n1(0.0), n2(0.0);
  for (std::size_t k = 0; k < quad.nodes.size(); ++k) {
    const cd tau = quad.nodes[k];
    const cd z1 = c1 * (tau + c1 * f1v[k]);
    const cd z1dot = c1 * (1.0 + c1 * f1p[k]) * cd(0.0, 1.0) * tau;
    const cd z2 = -c2 * (tau + c2 * f2v[k]) + cfg.d;
    const cd z2dot = -c2 * (1.0 + c2 * f2p[k]) * cd(0.0, 1.0) * tau;
    a1 += std::imag(std::conj(z1) * z1dot);
    a2 += std::imag(std::conj(z2) * z2dot);
    n1 += std::conj(z1) * z1 * z1dot;
    n2 += std::conj(z2) * z2 * z2dot;
  }
  const double M = static_cast<double>(quad.size);
  m.area1_quad = kPi / M * a1;
  m.area2_quad = kPi / M * a2;
  // integral of z over the patch is (1/2i) * closed integral of conj(z)*z dz.
  m.centroid1 = kPi / M * n1 / (cd(0.0, 1.0) * m.area1_quad);
  m.centroid2 = kPi / M * n2 / (cd(0.0, 1.0) * m.area2_quad);
  m.circ1_quad = cfg.gamma1 / (c1 * c1) * m.area1_quad;
  m.circ2_quad = g2 / (c2 * c2) * m.area2_quad;
  return m;
}

VelocityField::VelocityField(const PairConfig& cfg, const VState& v, int M_fine) {
  validate_config(cfg);
  if (v.eps == 0.0)
    throw std::invalid_argument("VelocityField: eps = 0 has no finite uniform vorticity");
  const CircleGrid quad = make_grid(M_fine, 0.5);
  const double c1 = v.eps * cfg.b1;
  const double c2 = v.eps * cfg.b2;
  amp1_ = cfg.gamma1 / (c1 * c1);
  amp2_ = gamma2_effective(cfg, v) / (c2 * c2);
  const auto f1v = evaluate(v.state.f1, quad);
  const auto f1p = evaluate(v.state.f1, quad, 1);
  const auto f2v = evaluate(v.state.f2, quad);
  const auto f2p = evaluate(v.state.f2, quad, 1);
  xi1_.resize(quad.nodes.size());
  xi2_.resize(quad.nodes.size());
  w1_.resize(quad.nodes.size());
  w2_.resize(quad.nodes.size());
  const double M = static_cast<double>(quad.size);
  for (std::size_t k = 0; k < quad.nodes.size(); ++k) {
    const cd tau = quad.nodes[k];
    xi1_[k] = c1 * (tau + c1 * f1v[k]);
    w1_[k] = c1 * (1.0 + c1 * f1p[k]) * tau / M;
    xi2_[k] = -c2 * (tau + c2 * f2v[k]) + cfg.d;
    w2_[k] = -c2 * (1.0 + c2 * f2p[k]) * tau / M;
  }
}

cd VelocityField::operator()(cd z) const {
  cd acc1(0.0), acc2(0.0);
  for (std::size_t k = 0; k < xi1_.size(); ++k) {
    const cd d1 = xi1_[k] - z;
    const cd d2 = xi2_[k] - z;
    if (d1 == cd(0.0) || d2 == cd(0.0))
      throw std::domain_error("VelocityField: evaluation point hits a quadrature node");
    acc1 += std::conj(d1) / d1 * w1_[k];
    acc2 += std::conj(d2) / d2 * w2_[k];
  }
  const cd vbar = cd(0.0, 0.5) * (amp1_ * acc1 + amp2_ * acc2);
  return std::conj(vbar);
}

cd velocity_at(const PairConfig& cfg, const VState& v, cd z, int M_fine) {
  return VelocityField(cfg, v, M_fine)(z);
}

namespace {

// Signed normal velocity of the co-moving flow at P collocation probes per
// patch. Shared by the sup and first-harmonic diagnostics.
std::pair<std::vector<double>, std::vector<double>> probe_normal_residuals(
    const PairConfig& cfg, const VState& v, int M_fine, int P, Exec exec,
    std::vector<cd>* probe_nodes) {
  validate_config(cfg);
  if (v.eps == 0.0) throw std::invalid_argument("equilibrium probes require eps != 0");
  if (P < 4) throw std::invalid_argument("equilibrium probes: need at least 4 probes");
  if (M_fine % P != 0)
    throw std::invalid_argument(
        "equilibrium probes: M_fine must be a multiple of probes "
        "(staggering keeps probes off quadrature nodes)");
  const VelocityField field(cfg, v, M_fine);
  const CircleGrid probes = make_grid(P, 0.0);
  const double c1 = v.eps * cfg.b1;
  const double c2 = v.eps * cfg.b2;
  const bool co = cfg.mode == PairMode::co_rotating;
  std::vector<double> val1(P), val2(P);
  for_each_index(2 * P, exec, [&](int idx) {
    const int patch = idx < P ? 1 : 2;
    const int p = patch == 1 ? idx : idx - P;
    const cd w = probes.nodes[p];
    double& out = patch == 1 ? val1[p] : val2[p];
    try {
      cd z, nvec;
      if (patch == 1) {
        z = c1 * (w + c1 * evaluate_at(v.state.f1, w));
        nvec = c1 * (1.0 + c1 * evaluate_at(v.state.f1, w, 1)) * w;
      } else {
        z = -c2 * (w + c2 * evaluate_at(v.state.f2, w)) + cfg.d;
        nvec = -c2 * (1.0 + c2 * evaluate_at(v.state.f2, w, 1)) * w;
      }
      const double na = std::abs(nvec);
      if (na == 0.0) {
        out = std::numeric_limits<double>::quiet_NaN();
        return;
      }
      const cd n = nvec / na;
      // Velocity in the co-moving frame: subtract the rigid rotation about
      // (Z, 0) or the uniform translation i*U.
      const cd W = co ? field(z) - cd(0.0, 1.0) * v.state.s1 * (z - v.state.s2)
                      : field(z) - cd(0.0, 1.0) * v.state.s1;
      out = std::real(W * std::conj(n));
    } catch (...) {
      out = std::numeric_limits<double>::quiet_NaN();
    }
  });
  for (const auto* vals : {&val1, &val2})
    for (double x : *vals)
      if (std::isnan(x))
        throw std::domain_error("equilibrium probes: degenerate boundary or node collision");
  if (probe_nodes) *probe_nodes = probes.nodes;
  return {std::move(val1), std::move(val2)};
}

}  // namespace

double equilibrium_residual(const PairConfig& cfg, const VState& v, int M_fine, int probes,
                            Exec exec) {
  const auto [val1, val2] = probe_normal_residuals(cfg, v, M_fine, probes, exec, nullptr);
  double sup = 0.0;
  for (double x : val1) sup = std::max(sup, std::abs(x));
  for (double x : val2) sup = std::max(sup, std::abs(x));
  return sup / probe_scale(cfg, v);
}

double equilibrium_mode1_defect(const PairConfig& cfg, const VState& v, int M_fine, int probes,
                                Exec exec) {
  std::vector<cd> nodes;
  const auto [val1, val2] = probe_normal_residuals(cfg, v, M_fine, probes, exec, &nodes);
  const double P = static_cast<double>(probes);
  double defect = 0.0;
  for (const auto* vals : {&val1, &val2}) {
    double c = 0.0, s = 0.0;
    for (int p = 0; p < probes; ++p) {
      c += (*vals)[p] * std::real(nodes[p]);
      s += (*vals)[p] * std::imag(nodes[p]);
    }
    defect = std::max(defect, std::max(std::abs(c), std::abs(s)) * 2.0 / P);
  }
  return defect / probe_scale(cfg, v);
}

}  // namespace vpair
