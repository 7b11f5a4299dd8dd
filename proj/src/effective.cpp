#include "effham/effective.hpp"

#include <cmath>
#include <iostream>
#include <string>

namespace effham::effective {

namespace {

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

}  // namespace

// ---------------------------------------------------------------------------
// ModelSpec
// ---------------------------------------------------------------------------

ModelSpec::ModelSpec(double w1, double w2, double coupling, int slow, int fast)
    : omega1(w1), omega2(w2), g(coupling), slow_size(slow), fast_size(fast) {
  if (!(omega2 > 0.0))
    throw invalid_parameter_error("ModelSpec: omega2 must be positive");
  if (omega1 == omega2)
    throw division_by_zero_error(
        "ModelSpec: omega1 == omega2 leaves the expansion parameters "
        "undefined");
  if (omega1 > omega2)
    throw invalid_parameter_error(
        "ModelSpec: the slow frequency omega1 must be below omega2");
  if (g < 0.0) throw invalid_parameter_error("ModelSpec: g must be >= 0");
  if (!(delta() < 1.0))
    throw invalid_parameter_error("ModelSpec: delta = g/omega2 must be < 1");
}

// Recommended regime omega1 <~ g << omega2: warn, never fail. Called by the
// model builders rather than the ModelSpec constructor so that root-finding
// sweeps through off-regime intermediate values stay quiet.
void regime_warning(const ModelSpec& spec) {
  if (spec.g > 0.0 && spec.g < spec.omega1)
    warn("coupling g below omega1; outside the recommended regime "
         "omega1 <~ g << omega2");
  if (spec.delta() >= 0.2)
    warn("delta = g/omega2 >= 0.2; the effective expansion is unreliable");
}

ExpansionParameters expansion_parameters(const ModelSpec& spec) {
  if (spec.omega2 == spec.omega1 || spec.omega2 == -spec.omega1)
    throw division_by_zero_error(
        "expansion_parameters: omega2 == +-omega1 is degenerate");
  ExpansionParameters p{spec.delta(), spec.epsilon_plus(),
                        spec.epsilon_minus()};
  if (p.delta >= 0.2 || p.epsilon_plus >= 0.2 || p.epsilon_minus >= 0.2)
    warn("expansion parameter >= 0.2 (delta=" + std::to_string(p.delta) +
         "); results are outside the perturbative regime");
  return p;
}

// ---------------------------------------------------------------------------
// Symmetrized products
// ---------------------------------------------------------------------------

Eigen::MatrixXd sym_product(const Eigen::MatrixXd& a,
                            const Eigen::MatrixXd& b) {
  Eigen::MatrixXd m = a * b;
  return 0.5 * (m + m.transpose()).eval();
}

Eigen::MatrixXd sym_square(const Eigen::MatrixXd& w) {
  return sym_product(w, w);
}

// ---------------------------------------------------------------------------
// Exact coupled Hamiltonian
// ---------------------------------------------------------------------------

Operator build_full(const algebra::LadderRep& rep_x,
                    const algebra::LadderRep& rep_y, const ModelSpec& spec) {
  const long long dim = 1LL * rep_x.dim * rep_y.dim;
  if (dim > kMaxTensorDim)
    throw size_limit_error("build_full: tensor dimension " +
                           std::to_string(dim) + " exceeds " +
                           std::to_string(kMaxTensorDim));
  const int dx = rep_x.dim, dy = rep_y.dim, d = dx * dy;

  const Eigen::VectorXd x0 = rep_x.x0_diag();
  const Eigen::VectorXd y0 = rep_y.x0_diag();
  const Eigen::MatrixXd wx = rep_x.xplus + rep_x.xminus();
  const Eigen::MatrixXd wy = rep_y.xplus + rep_y.xminus();

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  std::vector<std::pair<int, int>> labels(d);
  for (int ix = 0; ix < dx; ++ix)
    for (int iy = 0; iy < dy; ++iy) {
      const int row = ix * dy + iy;
      labels[row] = {ix, iy};
      h(row, row) = spec.omega1 * x0[ix] + spec.omega2 * y0[iy];
      for (int jx = 0; jx < dx; ++jx)
        for (int jy = 0; jy < dy; ++jy)
          if (wx(ix, jx) != 0.0 && wy(iy, jy) != 0.0)
            h(row, jx * dy + jy) += spec.g * wx(ix, jx) * wy(iy, jy);
    }
  return Operator::from_symmetric(std::move(h), std::move(labels));
}

// ---------------------------------------------------------------------------
// Generalized displacement and the effective coefficients
// ---------------------------------------------------------------------------

std::function<double(double, double)> generalized_displacement(
    std::function<double(double, double)> f, int m, int n) {
  return [f = std::move(f), m, n](double x, double y) {
    return f(x, y) - f(x + m, y + n);
  };
}

namespace {

// Phi(u, v) with Phi(x, y+1) defined as the (1, 1)-displacement of
// phi_x(x)*phi_y(y); equivalently Phi(u, v) = phi_x(u)phi_y(v-1)
//                                           - phi_x(u+1)phi_y(v).
double phi_pair(const algebra::LadderRep& rep_x, const algebra::LadderRep& rep_y,
                double u, double v) {
  return rep_x.phi(u) * rep_y.phi(v - 1.0) - rep_x.phi(u + 1.0) * rep_y.phi(v);
}

}  // namespace

double effective_q2(const algebra::LadderRep& rep_y, const ModelSpec& spec,
                    double y0) {
  const double d = spec.delta();
  return spec.g * d * (rep_y.phi(y0) - rep_y.phi(y0 + 1.0));
}

double effective_q4(const algebra::LadderRep& rep_y, const ModelSpec& spec,
                    double y0) {
  const double d = spec.delta();
  auto d2phi = [&rep_y](double z) {
    return rep_y.phi(z) - 2.0 * rep_y.phi(z + 1.0) + rep_y.phi(z + 2.0);
  };
  auto u = [&](double y) { return rep_y.phi(y) * d2phi(y - 1.0); };
  return 0.5 * spec.g * d * d * d * (u(y0) - u(y0 + 1.0));
}

double effective_shift_diag(const algebra::LadderRep& rep_x,
                            const algebra::LadderRep& rep_y,
                            const ModelSpec& spec, double x0, double y0,
                            int shift_m, int shift_n) {
  const double d = spec.delta();
  const double shifted = phi_pair(rep_x, rep_y, x0, y0 + 1.0) -
                         phi_pair(rep_x, rep_y, x0 + shift_m,
                                  y0 + 1.0 + shift_n);
  return -2.0 * spec.omega1 * d * d * shifted;
}

// ---------------------------------------------------------------------------
// Third-order effective Hamiltonian
// ---------------------------------------------------------------------------

Operator build_generic_effective(const algebra::LadderRep& rep_x,
                                 const algebra::LadderRep& rep_y,
                                 const ModelSpec& spec, int shift_m,
                                 int shift_n) {
  const long long dim = 1LL * rep_x.dim * rep_y.dim;
  if (dim > kMaxTensorDim)
    throw size_limit_error("build_generic_effective: tensor dimension " +
                           std::to_string(dim) + " exceeds " +
                           std::to_string(kMaxTensorDim));
  if (!(spec.delta() < 1.0))
    throw invalid_parameter_error("build_generic_effective: delta must be < 1");

  const int dx = rep_x.dim, dy = rep_y.dim, d = dx * dy;
  const Eigen::VectorXd x0 = rep_x.x0_diag();
  const Eigen::VectorXd y0 = rep_y.x0_diag();

  const Eigen::MatrixXd w = rep_x.xplus + rep_x.xminus();
  const Eigen::MatrixXd w2 = sym_square(w);
  const Eigen::MatrixXd w4 = sym_square(w2);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  std::vector<std::pair<int, int>> labels(d);
  for (int iy = 0; iy < dy; ++iy) {
    const double y = y0[iy];
    const double q2 = effective_q2(rep_y, spec, y);
    const double q4 = effective_q4(rep_y, spec, y);
    for (int ix = 0; ix < dx; ++ix) {
      const int row = ix * dy + iy;
      labels[row] = {ix, iy};
      h(row, row) += spec.omega1 * x0[ix] + spec.omega2 * y +
                     effective_shift_diag(rep_x, rep_y, spec, x0[ix], y,
                                          shift_m, shift_n);
      for (int jx = 0; jx < dx; ++jx) {
        const double val = q2 * w2(ix, jx) + q4 * w4(ix, jx);
        if (val != 0.0) h(row, jx * dy + iy) += val;
      }
    }
  }
  return Operator::from_symmetric(std::move(h), std::move(labels));
}

Operator project_fast_ground(const Operator& h, const algebra::LadderRep& rep_y,
                             double y0) {
  int iy0 = -1;
  for (int i = 0; i < rep_y.dim; ++i)
    if (std::abs(rep_y.x0_twice[i] / 2.0 - y0) < 1e-12) iy0 = i;
  if (iy0 < 0)
    throw invalid_parameter_error(
        "project_fast_ground: y0 is not a fast level of this representation");

  const int dy = rep_y.dim;
  if (h.dim() % dy != 0)
    throw invalid_parameter_error(
        "project_fast_ground: operator dimension incompatible with rep_y");
  const int dx = h.dim() / dy;

  // The projection is only meaningful for fast-diagonal operators; verify.
  for (int row = 0; row < h.dim(); ++row)
    for (int col = 0; col < h.dim(); ++col)
      if (h.basis_labels[row].second != h.basis_labels[col].second &&
          h.matrix(row, col) != 0.0)
        throw invalid_parameter_error(
            "project_fast_ground: operator couples different fast levels");

  Eigen::MatrixXd block(dx, dx);
  for (int ix = 0; ix < dx; ++ix)
    for (int jx = 0; jx < dx; ++jx)
      block(ix, jx) = h.matrix(ix * dy + iy0, jx * dy + iy0);
  return Operator::from_symmetric(std::move(block), single_axis_labels(dx));
}

}  // namespace effham::effective
