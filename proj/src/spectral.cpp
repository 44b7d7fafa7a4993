#include "vpair/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vpair {

bool FourierMap::is_zero() const {
  for (double a : coeffs)
    if (a != 0.0) return false;
  return true;
}

double FourierMap::coeff_norm1() const {
  double s = 0.0;
  for (double a : coeffs) s += std::abs(a);
  return s;
}

double FourierMap::deriv_norm1() const {
  double s = 0.0;
  for (int n = 1; n <= modes(); ++n) s += n * std::abs(coeffs[n - 1]);
  return s;
}

double SineSeries::sup_norm() const {
  double s = 0.0;
  for (double c : coeffs) s = std::max(s, std::abs(c));
  return s;
}

CircleGrid make_grid(int M, double sigma) {
  if (M < 4) throw std::invalid_argument("CircleGrid: size must be >= 4");
  CircleGrid g;
  g.size = M;
  g.sigma = sigma;
  g.nodes.resize(M);
  for (int k = 0; k < M; ++k) {
    double theta = 2.0 * std::numbers::pi * (k + sigma) / M;
    g.nodes[k] = cd(std::cos(theta), std::sin(theta));
  }
  return g;
}

cd evaluate_at(const FourierMap& f, cd w, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("evaluate_at: order must be 0, 1 or 2");
  const cd wb = std::conj(w);
  cd acc(0.0, 0.0);
  // p tracks conj(w)^(n + order): order 0 starts at wb, 1 at wb^2, 2 at wb^3.
  cd p = wb;
  for (int i = 0; i < order; ++i) p *= wb;
  for (int n = 1; n <= f.modes(); ++n) {
    double c = f.coeffs[n - 1];
    if (order == 1)
      c *= -n;
    else if (order == 2)
      c *= n * (n + 1);
    acc += c * p;
    p *= wb;
  }
  return acc;
}

std::vector<cd> evaluate(const FourierMap& f, const CircleGrid& grid, int order) {
  std::vector<cd> out(grid.size);
  for (int k = 0; k < grid.size; ++k) out[k] = evaluate_at(f, grid.nodes[k], order);
  return out;
}

cd contour_mean(const std::vector<cd>& values, const CircleGrid& grid) {
  if (static_cast<int>(values.size()) != grid.size)
    throw std::invalid_argument("contour_mean: values/grid size mismatch");
  cd acc(0.0, 0.0);
  for (int k = 0; k < grid.size; ++k) acc += values[k] * grid.nodes[k];
  return acc / static_cast<double>(grid.size);
}

SineSeries project_sine(const std::vector<double>& values, int K, const CircleGrid& grid) {
  if (static_cast<int>(values.size()) != grid.size)
    throw std::invalid_argument("project_sine: values/grid size mismatch");
  if (K < 1) throw std::invalid_argument("project_sine: K must be >= 1");
  SineSeries s;
  s.coeffs.assign(K, 0.0);
  // Column-wise accumulation reuses one power ladder per node.
  for (int k = 0; k < grid.size; ++k) {
    const cd w = grid.nodes[k];
    cd p = w;
    for (int n = 1; n <= K; ++n) {
      s.coeffs[n - 1] += values[k] * p.imag();
      p *= w;
    }
  }
  const double scale = 2.0 / grid.size;
  for (double& c : s.coeffs) c *= scale;
  return s;
}

std::vector<double> sine_values(const SineSeries& s, const CircleGrid& grid) {
  std::vector<double> out(grid.size, 0.0);
  for (int k = 0; k < grid.size; ++k) {
    const cd w = grid.nodes[k];
    cd p = w;
    double acc = 0.0;
    for (int n = 1; n <= s.modes(); ++n) {
      acc += s.coeffs[n - 1] * p.imag();
      p *= w;
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace vpair
