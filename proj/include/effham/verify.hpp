#pragma once

#include <string>
#include <vector>

#include "effham/effective.hpp"
#include "effham/models.hpp"

namespace effham::verify {

using effham::effective::ModelSpec;

// ---------------------------------------------------------------------------
// Effective-vs-exact error scaling
// ---------------------------------------------------------------------------
// For each delta (coupling g = delta * omega2 at a fixed omega1/omega2
// ratio), diagonalize the exact coupled Hamiltonian (slow spin + fast boson,
// Fock cutoff auto-converged) and the effective slow-spin model, and record
// the ground-energy error. The primary comparison uses the closed-form
// effective model; the generic-construction projection is evaluated
// alongside under both sign readings of the frequency-shift displacement as
// a convention diagnostic.
struct ErrorRow {
  double delta = 0.0;
  int n_cutoff = 0;  // auto-converged Fock cutoff used for the exact model
  double e0_exact = 0.0;
  double e0_effective = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double generic_abs_error = 0.0;      // adopted shift reading (+1, -1)
  double generic_alt_abs_error = 0.0;  // opposite shift reading (-1, +1)
};

struct ErrorTable {
  std::vector<ErrorRow> rows;  // delta strictly decreasing
  double slope = 0.0;          // log-log LSQ fit of abs_error vs delta
  double generic_slope = 0.0;
  double generic_alt_slope = 0.0;
  // abs_error failed to decrease strictly with delta (regime breakdown;
  // reported with a warning, not an error).
  bool non_monotone_warning = false;
  // The alternative shift reading produced smaller errors across the whole
  // grid AND a fitted slope below 1 (convention flagged for review).
  bool alt_sign_flag = false;
};

ErrorTable error_scaling(int A, std::vector<double> deltas,
                         double omega_ratio, double cutoff_tol = 1e-10);

// ---------------------------------------------------------------------------
// Closed form vs generic construction
// ---------------------------------------------------------------------------
// Entrywise difference between a printed closed-form model and the generic
// construction projected onto the fast ground level, plus a per-term
// coefficient comparison. Constant offsets are removed by aligning the g=0
// ground energies of the two constructions.
struct TermComparison {
  std::string name;
  double closed_value = 0.0;
  double generic_value = 0.0;
};

struct ComparisonReport {
  int dim = 0;
  double h_norm = 0.0;            // ||closed||_max
  double max_abs_diff = 0.0;      // after offset alignment
  double max_abs_diff_offdiag = 0.0;  // diagonal excluded
  std::vector<TermComparison> terms;
};

// Supported models: dicke-field-slow (A = fast spin size, n_max = slow boson
// cutoff), dicke-atom-slow (A = slow spin size, n_max = fast boson cutoff),
// spin-spin-slow (A = A1 slow, a2 = A2 fast). Other ids are rejected: they
// have no closed/generic construction pair.
ComparisonReport closed_vs_generic(models::ModelId id, int A, int a2,
                                   int n_max, const ModelSpec& spec);

// ---------------------------------------------------------------------------
// Finite-size approach to the classical limit
// ---------------------------------------------------------------------------
// At fixed xi, for each A: solve for the coupling g giving that xi, then
// compare the quantum ground energy of the rotated effective atom model with
// the classical landscape minimum, both per spin length A/2.
struct FiniteSizeRow {
  int A = 0;
  double e0_quantum = 0.0;    // E0 / (A/2)
  double e0_classical = 0.0;  // min H_cl / (A/2)
  double diff = 0.0;          // e0_quantum - e0_classical
};

struct FiniteSizeTable {
  double xi = 0.0;
  std::vector<FiniteSizeRow> rows;  // A ascending
  // Two-point Richardson extrapolation in 1/A from the last two rows;
  // consistent with diff -> 0 when |extrapolation| <= 20% of the first
  // row's |diff|.
  double richardson_extrapolation = 0.0;
  bool richardson_consistent = false;
};

FiniteSizeTable finite_size_convergence(const std::vector<int>& a_list,
                                        double xi, double omega1 = 0.01,
                                        double omega2 = 1.0);

}  // namespace effham::verify
