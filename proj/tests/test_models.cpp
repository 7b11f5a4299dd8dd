#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "effham/errors.hpp"
#include "effham/models.hpp"
#include "effham/spectra.hpp"

using namespace effham;
using namespace effham::models;
using effham::effective::ModelSpec;

static constexpr double kEntryTol = 1e-14;

// ---------------------------------------------------------------------------
// Name round-trips
// ---------------------------------------------------------------------------

TEST_CASE("model names round-trip and reject unknowns verbosely") {
  const std::vector<ModelId> all = {
      ModelId::dicke_full, ModelId::dicke_field_slow, ModelId::dicke_atom_slow,
      ModelId::dicke_atom_slow_rotated, ModelId::spin_spin_slow};
  for (ModelId id : all) CHECK(model_from_string(to_string(id)) == id);

  try {
    model_from_string("no-such-model");
    FAIL("expected invalid_parameter_error");
  } catch (const invalid_parameter_error& e) {
    const std::string msg = e.what();
    for (ModelId id : all)
      CHECK(msg.find(to_string(id)) != std::string::npos);
  }
}

// ---------------------------------------------------------------------------
// Closed-form builders against hand oracles
// ---------------------------------------------------------------------------

TEST_CASE("atom-slow A=2 matrix by hand") {
  const ModelSpec spec(0.01, 1.0, 0.05);
  const double d = spec.delta();
  const double w1t = 0.01 - 2.0 * d * d - 16.0 * 0.05 * d * d * d;
  const Operator h = dicke_atom_slow(2, spec, /*rotated=*/false);
  REQUIRE(h.dim() == 3);

  // On the Sz basis (-1, 0, 1): Sx^2 = [[1,0,1],[0,2,0],[1,0,1]]/2,
  // {Sx^2, Sz} = diag(-1, 0, 1).
  const double g = spec.g;
  const double h00 = -w1t - 2.0 * g * d + 2.0 * d * d - 16.0 * g * d * d * d;
  const double h11 = -4.0 * g * d;
  const double h22 = w1t - 2.0 * g * d + 2.0 * d * d + 16.0 * g * d * d * d;
  const double h02 = -2.0 * g * d;

  CHECK(h.matrix(0, 0) == doctest::Approx(h00).epsilon(kEntryTol));
  CHECK(h.matrix(1, 1) == doctest::Approx(h11).epsilon(kEntryTol));
  CHECK(h.matrix(2, 2) == doctest::Approx(h22).epsilon(kEntryTol));
  CHECK(h.matrix(0, 2) == doctest::Approx(h02).epsilon(kEntryTol));
  CHECK(h.matrix(2, 0) == doctest::Approx(h02).epsilon(kEntryTol));
  CHECK(h.matrix(0, 1) == 0.0);
  CHECK(h.matrix(1, 2) == 0.0);
}

TEST_CASE("exact model diagonal and coupling entries") {
  const ModelSpec spec(0.01, 1.0, 0.05);
  const Operator h = dicke_full(2, 4, spec);
  REQUIRE(h.dim() == 5 * 3);
  // Boson-major labels: index = n*(A+1) + spin index.
  CHECK(h.basis_labels[0] == std::make_pair(0, 0));
  CHECK(h.basis_labels[3] == std::make_pair(1, 0));
  // Diagonal w1*n + w2*m with m = iy - A/2.
  CHECK(h.matrix(0, 0) == doctest::Approx(0.01 * 0 + 1.0 * -1.0));
  CHECK(h.matrix(4, 4) == doctest::Approx(0.01 * 1 + 1.0 * 0.0));
  // Coupling g*(a raising from n=0)*(spin raising from m=-1) between
  // (0, m=-1) and (1, m=0): g * 1 * sqrt(2).
  CHECK(h.matrix(0, 4) ==
        doctest::Approx(0.05 * std::sqrt(2.0)).epsilon(kEntryTol));
}

TEST_CASE("field-slow coefficients and operator agree") {
  const ModelSpec spec(0.01, 1.0, 0.05);
  const double d = spec.delta();
  for (double A : {1.0, 2.0, 4.0}) {
    const PotentialCoeffs c = field_slow_coeffs(A, spec);
    const double w1t = 0.01 * (1.0 - 2.0 * A * d * d);
    CHECK(c.omega1_tilde == doctest::Approx(w1t).epsilon(kEntryTol));
    CHECK(c.c2 ==
          doctest::Approx(0.5 * w1t - 2.0 * A * 0.05 * d).epsilon(kEntryTol));
    CHECK(c.c4 ==
          doctest::Approx(4.0 * A * 0.05 * d * d * d).epsilon(kEntryTol));
    CHECK(omega1_tilde_field_slow(A, spec) ==
          doctest::Approx(w1t).epsilon(kEntryTol));
  }

  PotentialCoeffs out;
  const Operator h = dicke_field_slow(4, 12, spec, &out);
  REQUIRE(h.dim() == 13);
  CHECK(out.omega1_tilde ==
        doctest::Approx(omega1_tilde_field_slow(4.0, spec)));
  // Number-basis diagonal: w1t*n - 4Ag*delta*(n + 1/2) plus the quartic
  // diagonal; spot-check the harmonic piece at large quantum number via the
  // (n, n+2) off-diagonal instead, which the quartic also feeds:
  // -Ag*delta * sqrt((n+1)(n+2)) is its quadratic part.
  const double quad = -4.0 * 0.05 * d;  // -Ag*delta with A=4
  const Eigen::MatrixXd m = h.matrix;
  // (0,2) entry: quadratic gives quad*sqrt(2); quartic adds its own tail.
  CHECK(std::abs(m(0, 2) - quad * std::sqrt(2.0)) <
        16.0 * 4.0 * 0.05 * d * d * d * 10.0);
}

TEST_CASE("atom-slow rotation leaves the spectrum invariant") {
  const ModelSpec spec(0.01, 1.0, 0.05);
  for (int A : {2, 10, 40}) {
    const auto plain = spectra::eig_sym(dicke_atom_slow(A, spec, false), false);
    const auto rot = spectra::eig_sym(dicke_atom_slow(A, spec, true), false);
    REQUIRE(plain.eigenvalues.size() == rot.eigenvalues.size());
    double defect = 0.0;
    for (std::size_t i = 0; i < plain.eigenvalues.size(); ++i)
      defect = std::max(defect,
                        std::abs(plain.eigenvalues[i] - rot.eigenvalues[i]));
    CHECK(defect <= 1e-10);
  }
}

TEST_CASE("spin-spin model conserves slow-spin parity exactly") {
  const ModelSpec spec(0.01, 1.0, 0.05);
  const Operator h = spin_spin_slow(6, 4, spec);
  REQUIRE(h.dim() == 7);
  // Every term moves the Sz1 projection by an even amount, so entries
  // between opposite-parity levels vanish identically.
  for (int r = 0; r < h.dim(); ++r)
    for (int c = 0; c < h.dim(); ++c)
      if (((r ^ c) & 1) != 0) CHECK(h.matrix(r, c) == 0.0);

  CHECK(omega1_tilde_spin_spin(6, spec) ==
        doctest::Approx(0.01 - 2.0 * 6 * 0.01 * 0.0025 -
                        20.0 * 0.05 * 1.25e-4 * 36.0)
            .epsilon(kEntryTol));
}

// ---------------------------------------------------------------------------
// Critical couplings
// ---------------------------------------------------------------------------

TEST_CASE("atom-slow critical ratio formula") {
  const ModelSpec spec(0.01, 1.0, 0.05);
  const double d = spec.delta();
  const double w1t = omega1_tilde_atom_slow(spec);
  for (int A : {2, 10, 40}) {
    const CriticalCoupling cc =
        critical_coupling(ModelId::dicke_atom_slow, A, 2, 2, spec);
    CHECK(cc.xi ==
          doctest::Approx(4.0 * A * 0.05 * d / w1t).epsilon(1e-13));
  }
  // Deep coupling drives the renormalized frequency negative.
  CHECK_THROWS_AS(critical_coupling(ModelId::dicke_atom_slow, 4, 2, 2,
                                    ModelSpec(0.01, 1.0, 0.08)),
                  regime_invalid_error);
}

TEST_CASE("field-slow critical size solves c2 = 0 self-consistently") {
  const ModelSpec spec(0.01, 1.0, 0.05);
  const CriticalCoupling cc =
      critical_coupling(ModelId::dicke_field_slow, 4, 2, 2, spec);
  const double d = spec.delta();
  const double expected =
      spec.omega1 / (4.0 * spec.g * d + 2.0 * spec.omega1 * d * d);
  CHECK(cc.a_crit == doctest::Approx(expected).epsilon(1e-13));
  CHECK(cc.a_crit == doctest::Approx(0.9950248756218905).epsilon(1e-12));
  // The printed closed form A_c = w1t(A_c) / (4 g delta) is the same number.
  CHECK(cc.a_crit ==
        doctest::Approx(omega1_tilde_field_slow(cc.a_crit, spec) /
                        (4.0 * spec.g * d))
            .epsilon(1e-12));
  CHECK(cc.xi == doctest::Approx(4.0 / cc.a_crit).epsilon(1e-13));

  // Decoupled limit: no transition at any size.
  const CriticalCoupling free_cc = critical_coupling(
      ModelId::dicke_field_slow, 4, 2, 2, ModelSpec(0.01, 1.0, 0.0));
  CHECK(free_cc.xi == 0.0);
  CHECK(std::isinf(free_cc.a_crit));
}

TEST_CASE("spin-spin critical ratio formula") {
  const ModelSpec spec(0.01, 1.0, 0.002);
  const double d = spec.delta();
  const int a1 = 6, a2 = 4;
  const CriticalCoupling cc =
      critical_coupling(ModelId::spin_spin_slow, 0, a1, a2, spec);
  CHECK(cc.xi == doctest::Approx(4.0 * a2 * a1 * a1 * spec.g * d /
                                 omega1_tilde_spin_spin(a1, spec))
                     .epsilon(1e-13));
}

TEST_CASE("coupling solves back from the target ratio") {
  for (int A : {2, 30, 100}) {
    for (double xi : {0.5, 1.0, 2.0, 5.0}) {
      const double g = solve_g_for_xi(A, 0.01, 1.0, xi);
      const ModelSpec spec(0.01, 1.0, g);
      const CriticalCoupling cc =
          critical_coupling(ModelId::dicke_atom_slow, A, 2, 2, spec);
      CHECK(cc.xi == doctest::Approx(xi).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(solve_g_for_xi(2, 0.01, 1.0, -1.0), std::exception);
}

// ---------------------------------------------------------------------------
// Builder validation
// ---------------------------------------------------------------------------

TEST_CASE("builders validate sizes") {
  const ModelSpec spec(0.01, 1.0, 0.05);
  CHECK_THROWS_AS(dicke_full(0, 8, spec), invalid_parameter_error);
  CHECK_THROWS_AS(dicke_field_slow(0, 8, spec), invalid_parameter_error);
  CHECK_THROWS_AS(dicke_atom_slow(0, spec, false), invalid_parameter_error);
  CHECK_THROWS_AS(spin_spin_slow(0, 2, spec), invalid_parameter_error);
  CHECK_THROWS_AS(spin_spin_slow(2, 0, spec), invalid_parameter_error);
}
