#pragma once

// Finite matrix representations of polynomial-deformed ladder algebras:
// a triple (X0, X+, X-) with [X0, X+] = X+, X- = X+^T, and X+ X- = phi(X0)
// for a polynomial structure function phi. Two concrete representations are
// provided: an (A+1)-dimensional spin and a truncated bosonic Fock ladder.

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "effham/errors.hpp"

namespace effham::algebra {

enum class RepKind { spin, boson_truncated };

// ---------------------------------------------------------------------------
// LadderRep: one representation of the deformed ladder algebra.
// ---------------------------------------------------------------------------
//
// x0_twice stores the X0 eigenvalues doubled, as exact integers, so that
// half-integer spin projections never accumulate floating-point drift when
// fed into the structure polynomial.
struct LadderRep {
  RepKind kind = RepKind::spin;
  int dim = 0;
  Eigen::VectorXi x0_twice;          // 2 * x0, ascending
  Eigen::MatrixXd xplus;             // raising operator
  std::vector<double> phi_coeffs;    // phi(z) = sum_k phi_coeffs[k] z^k
  std::string label;
  bool truncated = false;

  Eigen::VectorXd x0_diag() const {
    return x0_twice.cast<double>() / 2.0;
  }
  Eigen::MatrixXd x0_matrix() const {
    return Eigen::MatrixXd(x0_diag().asDiagonal());
  }
  Eigen::MatrixXd xminus() const { return xplus.transpose(); }

  double phi(double z) const {
    double acc = 0.0;
    for (auto it = phi_coeffs.rbegin(); it != phi_coeffs.rend(); ++it)
      acc = acc * z + *it;
    return acc;
  }
};

// ---------------------------------------------------------------------------
// Representation builders
// ---------------------------------------------------------------------------

// Spin: dim = A+1, X0 eigenvalues m = -A/2 .. +A/2,
// (X+)_{m+1,m} = sqrt((j-m)(j+m+1)), phi(m) = j(j+1) - m^2 + m.
LadderRep make_spin_rep(int A);

// Truncated boson: dim = n_max+1, X0 = diag(0..n_max),
// (X+)_{n+1,n} = sqrt(n+1), phi(n) = n. The truncation breaks [a, a†] = 1
// only on the top level; X+ X- = diag(0..n_max) stays exact.
LadderRep make_boson_rep(int n_max);

// ---------------------------------------------------------------------------
// Structure-function calculus
// ---------------------------------------------------------------------------

// Returns phi with phi(x0) = diag(X+ X-) verified entrywise; throws
// representation_inconsistent_error when the representation violates it.
std::vector<double> structure_phi(const LadderRep& rep);

// Forward difference on the X0 lattice: order 1 maps f to z -> f(z) - f(z+1);
// higher orders iterate.
std::function<double(double)> forward_difference(
    std::function<double(double)> f, int order = 1);

// Maximum absolute entry of [X0, X+] - X+ (zero for a valid representation).
double ladder_commutator_defect(const LadderRep& rep);

}  // namespace effham::algebra
