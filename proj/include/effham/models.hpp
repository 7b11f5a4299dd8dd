#pragma once

// Closed-form model Hamiltonians: the exact atom-field (Dicke) model, its
// field-slow and atom-slow effective forms, the spin-spin effective model,
// and their critical-coupling formulas.

#include <string>

#include "effham/effective.hpp"
#include "effham/operator.hpp"

namespace effham::models {

// ---------------------------------------------------------------------------
// Model identifiers (also the CLI contract strings)
// ---------------------------------------------------------------------------

enum class ModelId {
  dicke_full,
  dicke_field_slow,
  dicke_atom_slow,
  dicke_atom_slow_rotated,
  spin_spin_slow,
};

std::string to_string(ModelId id);
// Throws invalid_parameter_error listing the valid names on mismatch.
ModelId model_from_string(const std::string& name);

// ---------------------------------------------------------------------------
// Potential coefficients of the field-slow quartic well
// ---------------------------------------------------------------------------
// U(x) = c2 x^2 + c4 x^4 in the quadrature x = (a + a†)/sqrt(2) with
// c2 = w1_tilde/2 - 2Ag*delta, c4 = 4Ag*delta^3, w1_tilde = w1(1 - 2A delta^2).
struct PotentialCoeffs {
  double c2 = 0.0;
  double c4 = 0.0;
  double omega1_tilde = 0.0;
};

// Coefficients alone, without assembling the operator. A is real here: the
// classical bifurcation treats the system size as a continuous sweep variable.
PotentialCoeffs field_slow_coeffs(double A,
                                  const effham::effective::ModelSpec& spec);

// ---------------------------------------------------------------------------
// Renormalized slow frequencies
// ---------------------------------------------------------------------------
double omega1_tilde_field_slow(double A,
                               const effham::effective::ModelSpec& spec);
double omega1_tilde_atom_slow(const effham::effective::ModelSpec& spec);
double omega1_tilde_spin_spin(int A1, const effham::effective::ModelSpec& spec);

// ---------------------------------------------------------------------------
// Model builders
// ---------------------------------------------------------------------------

// Exact Dicke Hamiltonian, slow field convention:
//   H = w1 n + w2 Sz + g (S+ + S-)(a† + a)
// on the (n_max+1)(A+1) tensor basis (boson axis major).
Operator dicke_full(int A, int n_max, const effham::effective::ModelSpec& spec);

// Field-slow effective model on n_max+1 Fock levels:
//   H = w1_tilde n - Ag*delta (a + a†)^2 + Ag*delta^3 (a + a†)^4.
Operator dicke_field_slow(int A, int n_max,
                          const effham::effective::ModelSpec& spec,
                          PotentialCoeffs* coeffs = nullptr);

// Atom-slow effective model on A+1 spin levels (as printed, corrections
// included):
//   unrotated: w1_tilde Sz - 4g*delta Sx^2 + 2 w2 delta^2 Sz^2
//                + 16 g delta^3 {Sx^2, Sz}
//   rotated:  -w1_tilde Sx - 4g*delta Sz^2 + 2 w2 delta^2 Sx^2
//                - 16 g delta^3 {Sz^2, Sx}
// with w1_tilde = w1 - 2 w2 delta^2 - 16 g delta^3.
Operator dicke_atom_slow(int A, const effham::effective::ModelSpec& spec,
                         bool rotated);

// Spin-spin effective model on A1+1 levels (as printed):
//   H = w1_tilde Sz1 - 2 A2 g delta Sx1^2 + 2 A2 w1 delta^2 Sz1^2
//       + 16 g A2 delta^3 Sx1^4 + 24 g delta^3 A2^2 {Sx1^2, Sz1}
// with w1_tilde = w1 - 2 A1 w1 delta^2 - 20 g delta^3 A1^2.
Operator spin_spin_slow(int A1, int A2,
                        const effham::effective::ModelSpec& spec);

// ---------------------------------------------------------------------------
// Critical couplings
// ---------------------------------------------------------------------------

struct CriticalCoupling {
  double xi = 0.0;       // dimensionless distance to the transition (xi=1)
  double a_crit = 0.0;   // field-slow only: critical A solving c2(A) = 0
};

// Atom-slow: xi = 4Ag*delta / w1_tilde; spin-spin: xi = 4 A2 A1^2 g delta /
// w1_tilde; field-slow: A_c from c2(A_c) = 0 (self-consistent in the
// renormalized frequency) and xi = A/A_c. Throws regime_invalid_error when
// the renormalization drives w1_tilde <= 0.
CriticalCoupling critical_coupling(ModelId id, int A, int A1, int A2,
                                   const effham::effective::ModelSpec& spec);

// Inverts the monotone map g -> xi(g) for the atom-slow model at fixed
// (A, w1, w2), with delta tied to g; bisection to 1e-14 relative.
double solve_g_for_xi(int A, double omega1, double omega2, double xi_target);

}  // namespace effham::models
