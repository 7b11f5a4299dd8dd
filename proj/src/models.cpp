#include "effham/models.hpp"

#include <cmath>
#include <limits>

namespace effham::models {

using effham::effective::ModelSpec;
using effham::effective::sym_product;
using effham::effective::sym_square;

// ---------------------------------------------------------------------------
// Model identifiers
// ---------------------------------------------------------------------------

std::string to_string(ModelId id) {
  switch (id) {
    case ModelId::dicke_full: return "dicke-full";
    case ModelId::dicke_field_slow: return "dicke-field-slow";
    case ModelId::dicke_atom_slow: return "dicke-atom-slow";
    case ModelId::dicke_atom_slow_rotated: return "dicke-atom-slow-rotated";
    case ModelId::spin_spin_slow: return "spin-spin-slow";
  }
  throw invalid_parameter_error("to_string: unreachable model id");
}

ModelId model_from_string(const std::string& name) {
  if (name == "dicke-full") return ModelId::dicke_full;
  if (name == "dicke-field-slow") return ModelId::dicke_field_slow;
  if (name == "dicke-atom-slow") return ModelId::dicke_atom_slow;
  if (name == "dicke-atom-slow-rotated") return ModelId::dicke_atom_slow_rotated;
  if (name == "spin-spin-slow") return ModelId::spin_spin_slow;
  throw invalid_parameter_error(
      "unknown model '" + name +
      "'; valid models: dicke-full, dicke-field-slow, dicke-atom-slow, "
      "dicke-atom-slow-rotated, spin-spin-slow");
}

// ---------------------------------------------------------------------------
// Renormalized slow frequencies
// ---------------------------------------------------------------------------

double omega1_tilde_field_slow(double A, const ModelSpec& spec) {
  const double d = spec.delta();
  return spec.omega1 * (1.0 - 2.0 * A * d * d);
}

double omega1_tilde_atom_slow(const ModelSpec& spec) {
  const double d = spec.delta();
  return spec.omega1 - 2.0 * spec.omega2 * d * d - 16.0 * spec.g * d * d * d;
}

double omega1_tilde_spin_spin(int A1, const ModelSpec& spec) {
  const double d = spec.delta();
  return spec.omega1 - 2.0 * A1 * spec.omega1 * d * d -
         20.0 * spec.g * d * d * d * A1 * A1;
}

// ---------------------------------------------------------------------------
// Model builders
// ---------------------------------------------------------------------------

PotentialCoeffs field_slow_coeffs(double A, const ModelSpec& spec) {
  if (!(A > 0.0))
    throw invalid_parameter_error("field_slow_coeffs: A must be > 0");
  const double d = spec.delta();
  const double w1t = omega1_tilde_field_slow(A, spec);
  PotentialCoeffs out;
  out.c2 = 0.5 * w1t - 2.0 * A * spec.g * d;
  out.c4 = 4.0 * A * spec.g * d * d * d;
  out.omega1_tilde = w1t;
  return out;
}

Operator dicke_full(int A, int n_max, const ModelSpec& spec) {
  if (A < 1) throw invalid_parameter_error("dicke_full: A must be >= 1");
  if (n_max < 2) throw invalid_parameter_error("dicke_full: n_max must be >= 2");
  effective::regime_warning(spec);
  return effham::effective::build_full(algebra::make_boson_rep(n_max),
                                       algebra::make_spin_rep(A), spec);
}

Operator dicke_field_slow(int A, int n_max, const ModelSpec& spec,
                          PotentialCoeffs* coeffs) {
  if (A < 1) throw invalid_parameter_error("dicke_field_slow: A must be >= 1");
  if (n_max < 2)
    throw invalid_parameter_error("dicke_field_slow: n_max must be >= 2");
  effective::regime_warning(spec);
  const auto boson = algebra::make_boson_rep(n_max);
  const double d = spec.delta();
  const double w1t = omega1_tilde_field_slow(A, spec);

  const Eigen::MatrixXd num = boson.x0_matrix();
  const Eigen::MatrixXd q = boson.xplus + boson.xminus();  // a + a†
  const Eigen::MatrixXd q2 = sym_square(q);
  const Eigen::MatrixXd q4 = sym_square(q2);

  Eigen::MatrixXd h = w1t * num - A * spec.g * d * q2 +
                      A * spec.g * d * d * d * q4;
  if (coeffs) *coeffs = field_slow_coeffs(A, spec);
  return Operator::from_symmetric(std::move(h),
                                  effham::single_axis_labels(n_max + 1));
}

Operator dicke_atom_slow(int A, const ModelSpec& spec, bool rotated) {
  if (A < 1) throw invalid_parameter_error("dicke_atom_slow: A must be >= 1");
  effective::regime_warning(spec);
  const auto spin = algebra::make_spin_rep(A);
  const double d = spec.delta();
  const double w1t = omega1_tilde_atom_slow(spec);

  const Eigen::MatrixXd sz = spin.x0_matrix();
  const Eigen::MatrixXd sx = 0.5 * (spin.xplus + spin.xminus());
  const Eigen::MatrixXd sx2 = sym_square(sx);
  const Eigen::MatrixXd sz2 = sym_square(sz);

  Eigen::MatrixXd h;
  if (!rotated) {
    const Eigen::MatrixXd anti =
        sym_product(sx2, sz) + sym_product(sz, sx2);
    h = w1t * sz - 4.0 * spec.g * d * sx2 +
        2.0 * spec.omega2 * d * d * sz2 + 16.0 * spec.g * d * d * d * anti;
  } else {
    const Eigen::MatrixXd anti =
        sym_product(sz2, sx) + sym_product(sx, sz2);
    h = -w1t * sx - 4.0 * spec.g * d * sz2 +
        2.0 * spec.omega2 * d * d * sx2 - 16.0 * spec.g * d * d * d * anti;
  }
  return Operator::from_symmetric(std::move(h),
                                  effham::single_axis_labels(A + 1));
}

Operator spin_spin_slow(int A1, int A2, const ModelSpec& spec) {
  if (A1 < 1 || A2 < 1)
    throw invalid_parameter_error("spin_spin_slow: A1 and A2 must be >= 1");
  effective::regime_warning(spec);
  const auto spin = algebra::make_spin_rep(A1);
  const double d = spec.delta();
  const double w1t = omega1_tilde_spin_spin(A1, spec);

  const Eigen::MatrixXd sz = spin.x0_matrix();
  const Eigen::MatrixXd sx = 0.5 * (spin.xplus + spin.xminus());
  const Eigen::MatrixXd sx2 = sym_square(sx);
  const Eigen::MatrixXd sx4 = sym_square(sx2);
  const Eigen::MatrixXd sz2 = sym_square(sz);
  const Eigen::MatrixXd anti = sym_product(sx2, sz) + sym_product(sz, sx2);

  Eigen::MatrixXd h = w1t * sz - 2.0 * A2 * spec.g * d * sx2 +
                      2.0 * A2 * spec.omega1 * d * d * sz2 +
                      16.0 * spec.g * A2 * d * d * d * sx4 +
                      24.0 * spec.g * d * d * d * A2 * A2 * anti;
  return Operator::from_symmetric(std::move(h),
                                  effham::single_axis_labels(A1 + 1));
}

// ---------------------------------------------------------------------------
// Critical couplings
// ---------------------------------------------------------------------------

CriticalCoupling critical_coupling(ModelId id, int A, int A1, int A2,
                                   const ModelSpec& spec) {
  const double d = spec.delta();
  CriticalCoupling out;
  switch (id) {
    case ModelId::dicke_atom_slow:
    case ModelId::dicke_atom_slow_rotated: {
      const double w1t = omega1_tilde_atom_slow(spec);
      if (!(w1t > 0.0))
        throw regime_invalid_error(
            "critical_coupling: renormalized frequency <= 0");
      out.xi = 4.0 * A * spec.g * d / w1t;
      return out;
    }
    case ModelId::spin_spin_slow: {
      const double w1t = omega1_tilde_spin_spin(A1, spec);
      if (!(w1t > 0.0))
        throw regime_invalid_error(
            "critical_coupling: renormalized frequency <= 0");
      out.xi = 4.0 * A2 * A1 * A1 * spec.g * d / w1t;
      return out;
    }
    case ModelId::dicke_full:
    case ModelId::dicke_field_slow: {
      const double w1t = omega1_tilde_field_slow(A, spec);
      if (!(w1t > 0.0))
        throw regime_invalid_error(
            "critical_coupling: renormalized frequency <= 0");
      if (spec.g == 0.0) {
        out.a_crit = std::numeric_limits<double>::infinity();
        out.xi = 0.0;
        return out;
      }
      // Self-consistent solution of A_c = w1_tilde(A_c) / (4 g delta):
      // A_c (4 g delta + 2 omega1 delta^2) = omega1, which is also where
      // c2(A) = w1_tilde(A)/2 - 2 A g delta changes sign.
      out.a_crit =
          spec.omega1 / (4.0 * spec.g * d + 2.0 * spec.omega1 * d * d);
      out.xi = A / out.a_crit;
      return out;
    }
  }
  throw invalid_parameter_error("critical_coupling: unreachable model id");
}

double solve_g_for_xi(int A, double omega1, double omega2, double xi_target) {
  if (A < 1) throw invalid_parameter_error("solve_g_for_xi: A must be >= 1");
  if (!(xi_target > 0.0))
    throw invalid_parameter_error("solve_g_for_xi: xi must be positive");

  auto xi_of = [&](double g) {
    const ModelSpec s(omega1, omega2, g);
    return critical_coupling(ModelId::dicke_atom_slow, A, 0, 0, s).xi;
  };

  // Find an upper bracket below the w1_tilde > 0 breakdown.
  double lo = 0.0, hi = omega2 * 1e-6;
  for (int k = 0; k < 200; ++k) {
    double trial = hi * 2.0;
    const double d = trial / omega2;
    if (omega1 - 2.0 * omega2 * d * d - 16.0 * trial * d * d * d <= 0.0 ||
        d >= 0.5)
      break;
    hi = trial;
    if (xi_of(hi) >= xi_target) break;
  }
  if (xi_of(hi) < xi_target)
    throw not_bracketed_error(
        "solve_g_for_xi: target xi unreachable before the regime breaks down");

  for (int k = 0; k < 200 && (hi - lo) > 1e-14 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (xi_of(mid) < xi_target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace effham::models
