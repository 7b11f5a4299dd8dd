#pragma once

#include <optional>
#include <vector>

#include "effham/effective.hpp"
#include "effham/models.hpp"

namespace effham::classical {

using effham::effective::ModelSpec;

// ---------------------------------------------------------------------------
// Classical landscape on the sphere
// ---------------------------------------------------------------------------
// Thermodynamic-limit energy surface of the slow spin,
//
//   H_cl(theta, phi) = -(A/2) [ w1t cos(phi) sin(theta)
//                              + 2Ag*delta cos^2(theta)
//                              - A*w2*delta^2 cos^2(phi) sin^2(theta)
//                              + 4A^2 g delta^3 cos(theta) cos(phi) sin^2(theta) ],
//
// with w1t the renormalized slow frequency w1 - 2 w2 delta^2 - 16 g delta^3.
// The last two bracket terms are the cubic-order corrections; they are
// dropped when include_cubic_corrections is false.

enum class StationaryKind { minimum, maximum, saddle };

struct StationaryPoint {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [-pi, pi)
  double energy = 0.0;
  StationaryKind kind = StationaryKind::minimum;
};

struct ClassicalLandscape {
  double xi = 0.0;            // 4Ag*delta / w1t
  double omega1_tilde = 0.0;  // renormalized slow frequency
  bool include_cubic_corrections = false;
  std::vector<StationaryPoint> stationary_points;  // energy-ascending
  double order_parameter = 0.0;  // |cos theta| at the global minimum
  // Energy of the saddle nearest theta = pi/2; present only when xi > 1.
  std::optional<double> separatrix_energy;
};

// Energy surface evaluation. Angles may lie outside the principal ranges;
// the function is smooth and periodic.
double hcl_eval(double theta, double phi, int A, const ModelSpec& spec,
                bool include_corrections);

// Analytic gradient (d/dtheta, d/dphi) of hcl_eval; used by the stationary
// search and exposed for finite-difference cross-checks.
void hcl_gradient(double theta, double phi, int A, const ModelSpec& spec,
                  bool include_corrections, double* d_theta, double* d_phi);

// Analytic Hessian entries (tt, tp, pp) of hcl_eval.
void hcl_hessian(double theta, double phi, int A, const ModelSpec& spec,
                 bool include_corrections, double* h_tt, double* h_tp,
                 double* h_pp);

// Full stationary-point analysis: 181x361 coarse grid, damped-Newton
// refinement to |grad H_cl| < 1e-10 * A, Hessian classification,
// deduplication within 1e-6 rad of arc. Requires w1t > 0 (regime-invalid
// error otherwise). Poles are probed as single candidate points.
ClassicalLandscape find_stationary(int A, const ModelSpec& spec,
                                   bool include_corrections);

// Thermodynamic-limit order parameter: 0 for xi <= 1, sqrt(1 - xi^-2) above.
double order_parameter(double xi);

// ---------------------------------------------------------------------------
// Bifurcation scan
// ---------------------------------------------------------------------------
// Monotone sweep grid; must hold at least 16 points and bracket the
// transition (not-bracketed error otherwise).
struct SweepGrid {
  double lo = 0.0;
  double hi = 0.0;
  int n_points = 0;
};

// Locates the critical sweep value by bisection to half-width <= 1e-6 of the
// sweep span. Field models sweep the system size A (real-valued) at fixed
// spec, flipping on the sign of the quadratic well coefficient c2; atom
// models sweep the coupling g at fixed A (the `a_fixed` argument), flipping
// on the number of classical minima (cubic corrections off). The spin-spin
// model has no scan contract and is rejected.
double bifurcation_scan(models::ModelId id, const SweepGrid& sweep,
                        int a_fixed, double omega1, double omega2,
                        double g_fixed);

}  // namespace effham::classical
