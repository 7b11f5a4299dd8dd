#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "effham/operator.hpp"

namespace effham::spectra {

// ---------------------------------------------------------------------------
// Spectral result
// ---------------------------------------------------------------------------
// Full spectrum of a dense symmetric operator. Eigenvalues are ascending;
// when eigenvectors are present the columns are orthonormal and follow the
// eigenvalue order, with each column's largest-magnitude component made
// positive so repeated runs produce identical output.
struct SpectralResult {
  std::vector<double> eigenvalues;          // ascending
  std::optional<Eigen::MatrixXd> eigenvectors;
  double ground_energy = 0.0;               // eigenvalues.front()
  double gap = 0.0;                          // E1 - E0 (0 for dim-1 inputs)
  std::optional<std::vector<int>> parity_labels;  // +-1 per eigenvalue
};

// Dense symmetric eigendecomposition (tridiagonalization + implicit-shift
// iteration). Deterministic; eigenvector signs fixed as described above.
// Throws representation_inconsistent_error on a non-symmetric matrix.
SpectralResult eig_sym(const Operator& h, bool want_vectors);

// ---------------------------------------------------------------------------
// Parity blocks
// ---------------------------------------------------------------------------
// Split H into its even (+1) and odd (-1) blocks of the diagonal parity
// operator P = diag(parity_diag). Requires ||[H, P]||_max <= 1e-12, i.e.
// every cross-parity entry of H vanishes to half that bound; otherwise a
// not_block_diagonal_error is thrown. Each returned block keeps the
// basis_labels of the rows it was extracted from.
std::pair<Operator, Operator> parity_decompose(
    const Operator& h, const std::vector<int>& parity_diag);

// Merge two block spectra into one ascending spectrum carrying +-1 parity
// labels (+1 for entries from `plus`, -1 for entries from `minus`).
SpectralResult merge_parity_spectra(const SpectralResult& plus,
                                    const SpectralResult& minus);

// ---------------------------------------------------------------------------
// Density of states
// ---------------------------------------------------------------------------
// Equal-width histogram over [min, max]. Bins are closed-open with the final
// bin closed, so counts always sum to the number of eigenvalues. A degenerate
// range (all values equal) falls back to a single bin. n_bins must be >= 4.
struct Histogram {
  std::vector<double> edges;  // size counts.size() + 1, ascending
  std::vector<int> counts;
};
Histogram density_of_states(const std::vector<double>& eigs, int n_bins);

// ---------------------------------------------------------------------------
// Cutoff convergence
// ---------------------------------------------------------------------------
// Runs `build` over the doubling schedule n_max in {16, 32, ..., 1024} and
// returns the smallest n_max with |E0(n_max) - E0(2 n_max)| < tol whose
// ground state also keeps less than 1e-8 of its population on the top level
// of the truncated axis. `truncated_axis` selects which basis-label slot
// (0 = first, 1 = second) carries the truncated index. Throws
// no_convergence_error when the schedule is exhausted; in that case the
// report (when given) still carries the tested cutoffs and their energies.
struct ConvergenceReport {
  int n_max = 0;                      // accepted cutoff
  double ground_energy = 0.0;         // E0 at the accepted cutoff
  double energy_change = 0.0;         // |E0(n_max) - E0(2 n_max)|
  double top_population = 0.0;        // ground-state weight on the top level
  std::vector<int> tested;            // cutoffs tried, in order
  std::vector<double> tested_energy;  // E0 at each tried cutoff
};
int converge_cutoff(const std::function<Operator(int)>& build, double tol,
                    ConvergenceReport* report = nullptr,
                    int truncated_axis = 0);

}  // namespace effham::spectra
