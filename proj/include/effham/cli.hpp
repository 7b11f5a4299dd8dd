#pragma once

#include <cmath>
#include <string>

namespace effham::cli {

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------
// One fully-resolved command invocation. All computations are deterministic:
// identical configs produce byte-identical output files. NaN marks optional
// numeric parameters that were not supplied; empty strings mark optional
// text parameters.
struct RunConfig {
  std::string command;  // spectrum | classical | scan | verify
  std::string model;    // ModelId contract string; empty = unset

  double omega1 = 0.01;
  double omega2 = 1.0;
  double g = std::nan("");
  double xi = std::nan("");
  int A = 2;
  int A1 = 2;
  int A2 = 2;
  std::string n_max = "auto";  // Fock cutoff: integer or "auto"
  double tol = 1e-10;

  std::string param;  // swept parameter name ("A" or "g")
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;

  bool corrections = false;  // classical: include the cubic-order terms

  std::string check;  // verify: error-scaling | closed-vs-generic | finite-size
  std::string deltas = "0.08,0.04,0.02";  // verify error-scaling grid
  std::string a_list = "20,40,80";        // verify finite-size grid

  std::string output;          // output file path; empty = stdout
  std::string format = "csv";  // csv | json
  int jobs = 0;                // scan concurrency; 0 = EFFHAM_JOBS or 1
};

// Executes one configuration. Returns the process exit status: 0 on
// success, 2 on invalid configuration (including unknown model names, with
// the valid list printed to stderr), 3 when a computation reports
// not-bracketed or no-convergence.
int dispatch(const RunConfig& config);

// Full command-line entry point: parses flags (and an optional config file
// of flat key=value lines) into a RunConfig, then dispatches.
int run_cli(int argc, char** argv);

}  // namespace effham::cli
