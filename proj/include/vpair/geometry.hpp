#pragma once

#include <complex>
#include <vector>

#include "vpair/branch.hpp"
#include "vpair/problem.hpp"
#include "vpair/spectral.hpp"
#include "vpair/threading.hpp"

namespace vpair {

// Curvature of the curve phi(T), phi(w) = w + eps_b*f(w), at |w| = 1, in map
// units: kappa = Re(1 + w*phi''/phi') / |phi'|.  The unit circle gives 1; the
// physical boundary (scaled by eps*b_j) has curvature kappa/(eps*b_j).
// Throws when phi' vanishes at w (degenerate map).
double curvature_at(double eps_b, const FourierMap& f, cd w);

// Minimum of curvature_at over both patches on a size-M_scan collocation
// grid.  Positive values certify convexity at the scan resolution.
double min_curvature(const PairConfig& cfg, const VState& v, int M_scan = 1024,
                     Exec exec = Exec::parallel);

// Resolution-independent positivity certificate for the curvature numerator:
// min over patches of 1 - |eps*b_j|*S2_j / (1 - |eps*b_j|*S1_j), with
// S1 = sum n|a_n| >= sup|f'| and S2 = sum n(n+1)|a_n| >= sup|f''|; -infinity
// when 1 - |eps*b_j|*S1_j is not positive.  A positive value proves
// min_curvature > 0 at every boundary point, not just scanned ones.
double convexity_bound(const PairConfig& cfg, const VState& v);

// Physical-plane boundaries: patch 1 is eps*b1*phi1(w) about 0, patch 2 is
// -eps*b2*phi2(w) + d about d (this parametrization keeps both curves
// counterclockwise).  Construction verifies that each boundary is a simple
// closed curve (total tangent turning 2*pi) and that the patches are
// disjoint; min_gap records the smallest pairwise boundary distance.
struct PhysicalPatchPair {
  std::vector<cd> boundary1, boundary2;
  cd centre1, centre2;
  double amplitude1 = 0.0, amplitude2 = 0.0;  // uniform vorticity per patch
  double min_gap = 0.0;
};

// Requires eps != 0 (the patches collapse to points otherwise).
PhysicalPatchPair reconstruct_patches(const PairConfig& cfg, const VState& v, int M_out = 256);

// Area, circulation and centroid per patch.  Closed forms come from the map
// coefficients: area_j = pi*(eps*b_j)^2*(1 - sum_n n*(eps*b_j*a_n)^2),
// circ_j = amp_j*area_j = pi*gamma_j*(1 - sum...) with the counter-rotating
// patch-2 sign negative.  The *_quad values recompute area and circulation
// with the Green-Stokes boundary quadrature (exact for band-limited maps on
// the configured grid), and the centroids are quadrature values of
// (integral z dA)/area.
struct PatchMoments {
  double area1 = 0.0, area2 = 0.0;
  double circ1 = 0.0, circ2 = 0.0;
  cd centroid1, centroid2;
  double area1_quad = 0.0, area2_quad = 0.0;
  double circ1_quad = 0.0, circ2_quad = 0.0;
};

// Requires eps != 0.
PatchMoments patch_moments(const PairConfig& cfg, const VState& v);

// Velocity field induced by the pair: vbar(z) = sum_j (i*amp_j/2) *
// averaged-contour-integral of (xi_bar - z_bar)/(xi - z) over patch j's
// boundary, evaluated with an M_fine staggered quadrature grid.  Valid for z
// on either side of the boundaries; z must not coincide with a quadrature
// node.  Precomputes the boundary tables once; each evaluation is O(M_fine).
class VelocityField {
 public:
  VelocityField(const PairConfig& cfg, const VState& v, int M_fine = 8192);
  cd operator()(cd z) const;

 private:
  std::vector<cd> xi1_, xi2_;  // boundary points on the quadrature grid
  std::vector<cd> w1_, w2_;    // contour weights scale*phi'(tau)*tau/M
  double amp1_ = 0.0, amp2_ = 0.0;
};

cd velocity_at(const PairConfig& cfg, const VState& v, cd z, int M_fine = 8192);

// Independent equilibrium check: on probe points of each boundary (size-P
// collocation grid, staggered against the M_fine quadrature grid), measure
// the normal component of the co-moving velocity W = v - i*Omega*(z - Z)
// (rotation) or W = v - i*U (translation).  Returns the largest
// |Re{W * conj(n)}| normalized by max(|gamma1|, |gamma2|)/d.  Requires
// eps != 0 and M_fine divisible by P (so probes never hit quadrature nodes).
double equilibrium_residual(const PairConfig& cfg, const VState& v, int M_fine = 8192,
                            int probes = 64, Exec exec = Exec::parallel);

// First-harmonic part of the same probe data per patch (projections onto
// cos/sin of the boundary angle), normalized identically.  This isolates the
// net force on each patch: it vanishes at the point-vortex equilibrium even
// for unshaped circles, while equilibrium_residual keeps the O(radius)
// strain contribution.
double equilibrium_mode1_defect(const PairConfig& cfg, const VState& v, int M_fine = 8192,
                                int probes = 64, Exec exec = Exec::parallel);

}  // namespace vpair
