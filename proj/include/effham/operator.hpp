#pragma once

// Operator: the universal Hamiltonian carrier — a dense real symmetric matrix
// (energies in units of the fast frequency by default) with labeled basis
// states. Labels are (x-index, y-index) pairs for tensor-product bases and
// (x-index, -1) after projection onto a single fast level.

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

#include "effham/errors.hpp"

namespace effham {

struct Operator {
  Eigen::MatrixXd matrix;
  std::vector<std::pair<int, int>> basis_labels;

  int dim() const { return static_cast<int>(matrix.rows()); }

  // Wraps a nominally-symmetric matrix. Symmetry is enforced exactly at
  // construction: inputs asymmetric beyond rounding are rejected, and the
  // stored matrix is the symmetric average so that max|M - M^T| = 0 holds
  // bitwise afterwards (blocked matrix kernels do not guarantee that on
  // their own).
  static Operator from_symmetric(Eigen::MatrixXd m,
                                 std::vector<std::pair<int, int>> labels) {
    if (m.rows() != m.cols())
      throw invalid_parameter_error("Operator: matrix must be square");
    if (static_cast<int>(labels.size()) != m.rows())
      throw invalid_parameter_error("Operator: one label per basis state");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
      throw invalid_parameter_error(
          "Operator: input asymmetric beyond rounding (|M - M^T| = " +
          std::to_string(asym) + ")");
    Operator op;
    op.matrix = 0.5 * (m + m.transpose());
    op.basis_labels = std::move(labels);
    return op;
  }

  double symmetry_defect() const {
    return (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  }
};

// Labels for a plain single-axis basis 0..dim-1 (second index unused).
inline std::vector<std::pair<int, int>> single_axis_labels(int dim) {
  std::vector<std::pair<int, int>> labels(dim);
  for (int i = 0; i < dim; ++i) labels[i] = {i, -1};
  return labels;
}

}  // namespace effham
