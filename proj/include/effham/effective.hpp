#pragma once

// Exact coupled Hamiltonian of a slow system X and a fast system Y,
//     H = w1*X0 + w2*Y0 + g (X+ + X-)(Y+ + Y-),
// and its third-order effective counterpart after adiabatic elimination of
// the fast system: the fast ladder collapses into X0/Y0-dependent coefficient
// functions multiplying even powers of (X+ + X-), leaving an operator that is
// diagonal in the fast quantum number and can be projected onto one fast
// level.

#include <functional>
#include <utility>
#include <vector>

#include "effham/algebra.hpp"
#include "effham/operator.hpp"

namespace effham::effective {

// ---------------------------------------------------------------------------
// ModelSpec: physical parameters plus derived small parameters.
// ---------------------------------------------------------------------------
//
// Validation at construction: omega2 > 0, omega1 < omega2 (equality throws the
// division-by-zero error since epsilon_minus is undefined), delta = g/omega2
// in [0, 1). g = 0 (the exactly decoupled limit) is allowed. The recommended
// strong-coupling regime omega1 <~ g << omega2 is warned on, never enforced.
struct ModelSpec {
  double omega1 = 0.0;
  double omega2 = 1.0;
  double g = 0.0;
  int slow_size = 0;  // A, A1, or n_max, as applicable
  int fast_size = 0;  // A, A2, or n_max, as applicable

  ModelSpec() = default;
  ModelSpec(double w1, double w2, double coupling, int slow = 0, int fast = 0);

  double delta() const { return g / omega2; }
  double epsilon_plus() const { return g / (omega2 + omega1); }
  double epsilon_minus() const { return g / (omega2 - omega1); }
};

// (delta, epsilon_plus, epsilon_minus); warns on stderr when any >= 0.2.
struct ExpansionParameters {
  double delta;
  double epsilon_plus;
  double epsilon_minus;
};
ExpansionParameters expansion_parameters(const ModelSpec& spec);

// Warns on stderr when spec sits outside the recommended regime
// omega1 <~ g << omega2; never throws. Model builders call this once.
void regime_warning(const ModelSpec& spec);

// ---------------------------------------------------------------------------
// Hamiltonian builders
// ---------------------------------------------------------------------------

// Largest tensor dimension the dense pipeline accepts.
inline constexpr int kMaxTensorDim = 8192;

// Exact coupled Hamiltonian on the x-major tensor basis (labels (ix, iy),
// index = ix * dimY + iy).
Operator build_full(const algebra::LadderRep& rep_x,
                    const algebra::LadderRep& rep_y, const ModelSpec& spec);

// Generalized displacement: f(x0, y0) - f(x0 + m, y0 + n) on the joint
// lattice, m and n integers of either sign.
std::function<double(double, double)> generalized_displacement(
    std::function<double(double, double)> f, int m, int n);

// Third-order effective Hamiltonian on the same tensor basis. All coupling
// coefficients are functions of Y0 alone (the operator is block-diagonal in
// the fast quantum number). The mixed-displacement offsets of the
// frequency-shift term default to (1, -1), i.e.
//     shift(x, y) = Phi(x, y+1) - Phi(x+1, y),
// where Phi(x, y+1) is the displacement of phi_x(X0)*phi_y(Y0) by (1, 1);
// the offsets are exposed so the alternative sign reading (-1, +1) can be
// compared diagnostically.
Operator build_generic_effective(const algebra::LadderRep& rep_x,
                                 const algebra::LadderRep& rep_y,
                                 const ModelSpec& spec, int shift_m = 1,
                                 int shift_n = -1);

// Restriction of a fast-diagonal operator to the fast level with X0
// eigenvalue y0 (one of rep_y's levels). Output labels are (ix, -1).
Operator project_fast_ground(const Operator& h, const algebra::LadderRep& rep_y,
                             double y0);

// Coefficient functions of the effective Hamiltonian, exposed for
// closed-form comparisons: the quadratic and quartic coefficients
// q2(y) = g*delta*(phi_y(y) - phi_y(y+1)) and
// q4(y) = (g*delta^3/2)*(u(y) - u(y+1)), u(y) = phi_y(y)*d2phi_y(y-1),
// and the second-order frequency-shift diagonal t3(x, y).
double effective_q2(const algebra::LadderRep& rep_y, const ModelSpec& spec,
                    double y0);
double effective_q4(const algebra::LadderRep& rep_y, const ModelSpec& spec,
                    double y0);
double effective_shift_diag(const algebra::LadderRep& rep_x,
                            const algebra::LadderRep& rep_y,
                            const ModelSpec& spec, double x0, double y0,
                            int shift_m = 1, int shift_n = -1);

// Hard-symmetrized matrix product helpers used across the model builders.
Eigen::MatrixXd sym_square(const Eigen::MatrixXd& w);
Eigen::MatrixXd sym_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace effham::effective
