#include "effham/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "effham/errors.hpp"

namespace effham::spectra {

namespace {

// Commutator bound below which H is accepted as parity-block-diagonal.
static constexpr double kParityCommutatorTol = 1e-12;
// Ground-state weight allowed on the top level of a truncated axis.
static constexpr double kTopPopulationTol = 1e-8;
// Fock-cutoff doubling schedule.
static constexpr int kScheduleFirst = 16;
static constexpr int kScheduleLast = 1024;

// Flip eigenvector columns so the largest-magnitude component is positive.
void fix_column_signs(Eigen::MatrixXd& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index imax = 0;
    double best = 0.0;
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      const double a = std::abs(v(r, c));
      if (a > best) {
        best = a;
        imax = r;
      }
    }
    if (v(imax, c) < 0.0) v.col(c) = -v.col(c);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// eig_sym
// ---------------------------------------------------------------------------

SpectralResult eig_sym(const Operator& h, bool want_vectors) {
  if (h.dim() == 0)
    throw invalid_parameter_error("eig_sym: empty operator");
  if (h.symmetry_defect() != 0.0)
    throw representation_inconsistent_error(
        "eig_sym: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.compute(h.matrix, want_vectors ? Eigen::ComputeEigenvectors
                                        : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw no_convergence_error("eig_sym: eigensolver did not converge");

  SpectralResult out;
  const Eigen::VectorXd& e = solver.eigenvalues();
  out.eigenvalues.assign(e.data(), e.data() + e.size());
  out.ground_energy = out.eigenvalues.front();
  out.gap = out.eigenvalues.size() > 1
                ? out.eigenvalues[1] - out.eigenvalues[0]
                : 0.0;
  if (want_vectors) {
    Eigen::MatrixXd v = solver.eigenvectors();
    fix_column_signs(v);
    out.eigenvectors = std::move(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// parity_decompose
// ---------------------------------------------------------------------------

std::pair<Operator, Operator> parity_decompose(
    const Operator& h, const std::vector<int>& parity_diag) {
  const int dim = h.dim();
  if (static_cast<int>(parity_diag.size()) != dim)
    throw invalid_parameter_error(
        "parity_decompose: parity vector length != operator dimension");
  for (int p : parity_diag)
    if (p != 1 && p != -1)
      throw invalid_parameter_error(
          "parity_decompose: parity entries must be +-1");

  // [H, diag(p)]_{ij} = H_ij (p_j - p_i): only cross-parity entries survive.
  double defect = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (parity_diag[i] != parity_diag[j])
        defect = std::max(defect, 2.0 * std::abs(h.matrix(i, j)));
  if (defect > kParityCommutatorTol)
    throw not_block_diagonal_error(
        "parity_decompose: ||[H, P]||_max = " + std::to_string(defect) +
        " exceeds " + std::to_string(kParityCommutatorTol));

  std::vector<int> plus_idx, minus_idx;
  for (int i = 0; i < dim; ++i)
    (parity_diag[i] == 1 ? plus_idx : minus_idx).push_back(i);

  auto extract = [&](const std::vector<int>& idx) {
    const int n = static_cast<int>(idx.size());
    Eigen::MatrixXd block(n, n);
    std::vector<std::pair<int, int>> labels(n);
    for (int a = 0; a < n; ++a) {
      labels[a] = h.basis_labels[idx[a]];
      for (int b = 0; b < n; ++b) block(a, b) = h.matrix(idx[a], idx[b]);
    }
    return Operator::from_symmetric(std::move(block), std::move(labels));
  };
  return {extract(plus_idx), extract(minus_idx)};
}

SpectralResult merge_parity_spectra(const SpectralResult& plus,
                                    const SpectralResult& minus) {
  SpectralResult out;
  const auto& pe = plus.eigenvalues;
  const auto& me = minus.eigenvalues;
  out.eigenvalues.reserve(pe.size() + me.size());
  std::vector<int> labels;
  labels.reserve(pe.size() + me.size());
  std::size_t i = 0, j = 0;
  while (i < pe.size() || j < me.size()) {
    const bool take_plus =
        j == me.size() || (i < pe.size() && pe[i] <= me[j]);
    out.eigenvalues.push_back(take_plus ? pe[i] : me[j]);
    labels.push_back(take_plus ? 1 : -1);
    (take_plus ? i : j) += 1;
  }
  if (out.eigenvalues.empty())
    throw invalid_parameter_error("merge_parity_spectra: empty spectra");
  out.ground_energy = out.eigenvalues.front();
  out.gap = out.eigenvalues.size() > 1
                ? out.eigenvalues[1] - out.eigenvalues[0]
                : 0.0;
  out.parity_labels = std::move(labels);
  return out;
}

// ---------------------------------------------------------------------------
// density_of_states
// ---------------------------------------------------------------------------

Histogram density_of_states(const std::vector<double>& eigs, int n_bins) {
  if (eigs.empty())
    throw invalid_parameter_error("density_of_states: empty spectrum");
  if (n_bins < 4)
    throw invalid_parameter_error("density_of_states: n_bins must be >= 4");

  const auto [lo_it, hi_it] = std::minmax_element(eigs.begin(), eigs.end());
  const double lo = *lo_it, hi = *hi_it;

  Histogram out;
  if (hi == lo) {
    // Degenerate range: a single bin holding everything.
    out.edges = {lo, hi};
    out.counts = {static_cast<int>(eigs.size())};
    return out;
  }

  out.edges.resize(n_bins + 1);
  out.counts.assign(n_bins, 0);
  const double width = (hi - lo) / n_bins;
  for (int b = 0; b <= n_bins; ++b) out.edges[b] = lo + b * width;
  out.edges.back() = hi;  // guard against rounding drift
  for (double e : eigs) {
    int b = static_cast<int>((e - lo) / width);
    b = std::clamp(b, 0, n_bins - 1);  // final bin is closed
    out.counts[b] += 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// converge_cutoff
// ---------------------------------------------------------------------------

namespace {

// Ground-state weight on the largest value of the selected label slot (the
// top level of the truncated axis).
double top_level_population(const Operator& h, const Eigen::MatrixXd& vecs,
                            int axis) {
  auto slot = [axis](const std::pair<int, int>& lab) {
    return axis == 0 ? lab.first : lab.second;
  };
  int top = slot(h.basis_labels.front());
  for (const auto& lab : h.basis_labels) top = std::max(top, slot(lab));
  double pop = 0.0;
  for (int k = 0; k < h.dim(); ++k)
    if (slot(h.basis_labels[k]) == top) pop += vecs(k, 0) * vecs(k, 0);
  return pop;
}

}  // namespace

int converge_cutoff(const std::function<Operator(int)>& build, double tol,
                    ConvergenceReport* report, int truncated_axis) {
  if (!(tol > 0.0))
    throw invalid_parameter_error("converge_cutoff: tol must be > 0");
  if (truncated_axis != 0 && truncated_axis != 1)
    throw invalid_parameter_error(
        "converge_cutoff: truncated_axis must be 0 or 1");

  ConvergenceReport rep;
  bool have_next = false;
  Operator next_op;  // built for the 2n comparison, reused at the next step

  for (int n = kScheduleFirst; n <= kScheduleLast; n *= 2) {
    Operator h_n = have_next ? std::move(next_op) : build(n);
    const SpectralResult sr_n = eig_sym(h_n, /*want_vectors=*/true);

    next_op = build(2 * n);
    const double e_2n =
        eig_sym(next_op, /*want_vectors=*/false).ground_energy;
    have_next = true;

    rep.tested.push_back(n);
    rep.tested_energy.push_back(sr_n.ground_energy);

    const double change = std::abs(sr_n.ground_energy - e_2n);
    const double pop =
        top_level_population(h_n, *sr_n.eigenvectors, truncated_axis);
    if (change < tol && pop < kTopPopulationTol) {
      rep.n_max = n;
      rep.ground_energy = sr_n.ground_energy;
      rep.energy_change = change;
      rep.top_population = pop;
      if (report) *report = std::move(rep);
      return n;
    }
  }
  if (report) *report = std::move(rep);  // history of the failed schedule
  throw no_convergence_error(
      "converge_cutoff: doubling schedule exhausted at n_max = " +
      std::to_string(kScheduleLast) + " without meeting tol = " +
      std::to_string(tol));
}

}  // namespace effham::spectra
