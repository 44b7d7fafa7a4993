#pragma once

#include <string>
#include <vector>

#include "vpair/branch.hpp"
#include "vpair/problem.hpp"

namespace vpair {

// Closed-form truncated solution for small eps: boundary-map modes wbar..wbar^4
// plus the eps^4 corrections to the scalar unknowns.
//
// With q_j = eps*b_j/d and the circulation ratio
//   delta_j = gamma_other/gamma_self   (co-rotating),
//   delta_j = -1                       (counter-rotating),
// the w-plane shape coefficients (phi_j = w + sum_n c_n wbar^n) are
//   c_1 = delta*q^2 + 2*delta*(1+delta)*q^4
//   c_2 = (delta/2)*q^3 + (3*delta*(1+delta)/4)*q^5
//   c_3 = (delta/3)*q^4
//   c_4 = (delta/4)*q^5
// and the stored map coefficients are a_n = c_n/(eps*b_j) (zero when eps = 0,
// where the true solution is the disc pair).  Scalars:
//   co:      Omega = Omega0 + eps^4*(g1*b2^4 + g2*b1^4)/(2*d^6)
//            Z     = Z0 + eps^4*(g2^3*b1^4/g1 - g1^3*b2^4/g2)/(d^3*(g1+g2)^2)
//   counter: U      = (g1/(2d))*(1 - eps^4*(2*b1^4 + b2^4)/d^4)
//            gamma2 = g1*(1 + eps^4*(b2^4 - b1^4)/d^4)
// Truncated to cfg.N modes when cfg.N < 4.  Used both as the continuation
// predictor near eps = 0 and as the reference the fitted branch is compared
// against.
StateVector expansion_state(const PairConfig& cfg, double eps);

// Least-order coefficient extracted from samples (eps_i, y_i) assuming
// y = c*eps^p + c2*eps^(p+2) + smaller.  The two smallest eps samples give c
// by eliminating the eps^(p+2) term (Richardson); `order` is the observed
// exponent log(y2/y1)/log(eps2/eps1) from those samples, and `residual` is
// the sup over all samples of |y_i - c*eps_i^p - c2*eps_i^(p+2)|.
struct FitResult {
  double c = 0.0;
  double order = 0.0;
  double residual = 0.0;
};

// Requires at least 3 samples, all with eps > 0 (callers drop the eps = 0
// state).  Near-zero data (|y| <= 1e-300) fits c = 0 with order = p.
FitResult fit_power_coefficient(const std::vector<std::pair<double, double>>& samples, int p);

// One line of the branch-vs-expansion comparison.
struct ReportRow {
  std::string name;     // quantity and order, e.g. "phi1_wbar1_eps2"
  double predicted = 0.0;  // closed-form coefficient
  double fitted = 0.0;     // value extracted from the branch
  double rel_err = 0.0;    // |fitted - predicted| / ref
  double ref = 0.0;        // denominator used for rel_err (scale when predicted = 0)
  double order = 0.0;      // observed exponent from the fit
  double tol = 0.0;        // pass threshold on rel_err
  bool pass = false;
};

// Fits every accessible expansion coefficient from the branch states with
// eps > 0 (at least 3 required) and compares with the closed forms:
// per patch the leading wbar..wbar^4 coefficients at orders eps^2..eps^5,
// the eps^4 correction to the wbar coefficient (after subtracting the fitted
// leading term), in co-rotating mode the eps^5 correction to the wbar^2
// coefficient, and the eps^4 corrections to both scalars.  In
// counter-rotating mode the wbar correction vanishes identically, so that row
// checks the fitted value against the magnitude the co-rotating analogue
// would have (ref = 4*(b_j/d)^4).
std::vector<ReportRow> expansion_report(const Branch& branch);

}  // namespace vpair
