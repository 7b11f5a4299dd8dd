#include "effham/algebra.hpp"

#include <cmath>
#include <utility>

namespace effham::algebra {

namespace {
constexpr double kPhiCheckTol = 1e-12;
}  // namespace

// ---------------------------------------------------------------------------
// Representation builders
// ---------------------------------------------------------------------------

LadderRep make_spin_rep(int A) {
  if (A < 1) throw invalid_parameter_error("make_spin_rep: A must be >= 1");
  LadderRep rep;
  rep.kind = RepKind::spin;
  rep.dim = A + 1;
  rep.truncated = false;
  rep.label = "spin(A=" + std::to_string(A) + ")";
  rep.x0_twice.resize(rep.dim);
  for (int i = 0; i < rep.dim; ++i) rep.x0_twice[i] = -A + 2 * i;

  const double j = A / 2.0;
  rep.xplus = Eigen::MatrixXd::Zero(rep.dim, rep.dim);
  for (int i = 0; i + 1 < rep.dim; ++i) {
    const double m = rep.x0_twice[i] / 2.0;
    rep.xplus(i + 1, i) = std::sqrt((j - m) * (j + m + 1.0));
  }
  // phi(m) = j(j+1) - m^2 + m, ascending powers.
  rep.phi_coeffs = {j * (j + 1.0), 1.0, -1.0};
  return rep;
}

LadderRep make_boson_rep(int n_max) {
  if (n_max < 2)
    throw invalid_parameter_error("make_boson_rep: n_max must be >= 2");
  LadderRep rep;
  rep.kind = RepKind::boson_truncated;
  rep.dim = n_max + 1;
  rep.truncated = true;
  rep.label = "boson(n_max=" + std::to_string(n_max) + ")";
  rep.x0_twice.resize(rep.dim);
  for (int i = 0; i < rep.dim; ++i) rep.x0_twice[i] = 2 * i;

  rep.xplus = Eigen::MatrixXd::Zero(rep.dim, rep.dim);
  for (int n = 0; n + 1 < rep.dim; ++n) rep.xplus(n + 1, n) = std::sqrt(n + 1.0);
  rep.phi_coeffs = {0.0, 1.0};
  return rep;
}

// ---------------------------------------------------------------------------
// Structure-function calculus
// ---------------------------------------------------------------------------

std::vector<double> structure_phi(const LadderRep& rep) {
  const Eigen::VectorXd diag = (rep.xplus * rep.xplus.transpose()).diagonal();
  double phi_scale = 1.0;
  for (int i = 0; i < rep.dim; ++i)
    phi_scale = std::max(phi_scale, std::abs(rep.phi(rep.x0_twice[i] / 2.0)));
  for (int i = 0; i < rep.dim; ++i) {
    const double expected = rep.phi(rep.x0_twice[i] / 2.0);
    if (std::abs(diag[i] - expected) > kPhiCheckTol * phi_scale)
      throw representation_inconsistent_error(
          "structure_phi: X+X- diagonal disagrees with phi at level " +
          std::to_string(i));
  }
  return rep.phi_coeffs;
}

std::function<double(double)> forward_difference(
    std::function<double(double)> f, int order) {
  if (order < 1)
    throw invalid_parameter_error("forward_difference: order must be >= 1");
  std::function<double(double)> g = std::move(f);
  for (int k = 0; k < order; ++k) {
    auto prev = g;
    g = [prev](double z) { return prev(z) - prev(z + 1.0); };
  }
  return g;
}

double ladder_commutator_defect(const LadderRep& rep) {
  // X0 is diagonal, so [X0, X+]_{rc} = (x0_r - x0_c) (X+)_{rc}. Evaluating
  // the eigenvalue difference on the exact integer-doubled lattice keeps the
  // defect free of product rounding: a valid ladder gives exactly zero.
  double defect = 0.0;
  for (int r = 0; r < rep.dim; ++r)
    for (int c = 0; c < rep.dim; ++c) {
      const double dx = (rep.x0_twice[r] - rep.x0_twice[c]) / 2.0;
      defect = std::max(defect,
                        std::abs((dx - 1.0) * rep.xplus(r, c)));
    }
  return defect;
}

}  // namespace effham::algebra
