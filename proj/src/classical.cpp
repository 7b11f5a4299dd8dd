#include "effham/classical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "effham/errors.hpp"

namespace effham::classical {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Stationarity: |grad H_cl| < kGradTolFactor * A.
constexpr double kGradTolFactor = 1e-10;
// Stationary points closer than this arc distance are one point.
constexpr double kDedupArc = 1e-6;
constexpr double kPoleSnap = 1e-7;
// Radius of the 8-direction neighborhood probe.
constexpr double kProbeRadius = 1e-4;
// Hessian eigenvalue sign threshold (relative to A); below it the
// neighborhood probe decides the classification.
constexpr double kHessTolFactor = 1e-10;
// Coarse scan grid: theta 0..pi, phi -pi..pi (last column wraps onto the
// first).
constexpr int kThetaGrid = 181;
constexpr int kPhiGrid = 361;
constexpr int kNewtonMaxIters = 200;
constexpr double kNewtonStepClamp = 0.2;  // radians
// Bisection bracket half-width, relative to the sweep span.
constexpr double kBracketTolFactor = 1e-6;

// ---------------------------------------------------------------------------
// Energy surface: H = -(A/2) B with
// B = w cos(phi) sin(theta) + k2 cos^2(theta)
//     - kc cos^2(phi) sin^2(theta) + kq cos(theta) cos(phi) sin^2(theta).
// ---------------------------------------------------------------------------

struct Coeffs {
  double w = 0.0;      // renormalized slow frequency
  double k2 = 0.0;     // 2 A g delta
  double kc = 0.0;     // A w2 delta^2 (0 with corrections off)
  double kq = 0.0;     // 4 A^2 g delta^3 (0 with corrections off)
  double scale = 0.0;  // A/2
};

Coeffs coeffs_of(int A, const ModelSpec& spec, bool corrections) {
  const double d = spec.delta();
  Coeffs c;
  c.w = models::omega1_tilde_atom_slow(spec);
  c.k2 = 2.0 * A * spec.g * d;
  c.kc = corrections ? A * spec.omega2 * d * d : 0.0;
  c.kq = corrections ? 4.0 * A * A * spec.g * d * d * d : 0.0;
  c.scale = 0.5 * A;
  return c;
}

double energy(const Coeffs& c, double th, double ph) {
  const double st = std::sin(th), ct = std::cos(th);
  const double sp = std::sin(ph), cp = std::cos(ph);
  return -c.scale * (c.w * cp * st + c.k2 * ct * ct -
                     c.kc * cp * cp * st * st + c.kq * ct * cp * st * st);
}

void gradient(const Coeffs& c, double th, double ph, double* gt, double* gp) {
  const double st = std::sin(th), ct = std::cos(th);
  const double sp = std::sin(ph), cp = std::cos(ph);
  const double bt = c.w * cp * ct - 2.0 * c.k2 * st * ct -
                    2.0 * c.kc * cp * cp * st * ct +
                    c.kq * cp * st * (2.0 * ct * ct - st * st);
  const double bp = -c.w * sp * st + 2.0 * c.kc * sp * cp * st * st -
                    c.kq * ct * sp * st * st;
  *gt = -c.scale * bt;
  *gp = -c.scale * bp;
}

void hessian(const Coeffs& c, double th, double ph, double* htt, double* htp,
             double* hpp) {
  const double st = std::sin(th), ct = std::cos(th);
  const double sp = std::sin(ph), cp = std::cos(ph);
  const double c2t = ct * ct - st * st;
  const double c2p = cp * cp - sp * sp;
  const double btt = -c.w * cp * st - 2.0 * c.k2 * c2t -
                     2.0 * c.kc * cp * cp * c2t +
                     c.kq * cp * ct * (2.0 * ct * ct - 7.0 * st * st);
  const double btp = -c.w * sp * ct + 4.0 * c.kc * sp * cp * st * ct -
                     c.kq * sp * st * (2.0 * ct * ct - st * st);
  const double bpp = -c.w * cp * st + 2.0 * c.kc * c2p * st * st -
                     c.kq * ct * cp * st * st;
  *htt = -c.scale * btt;
  *htp = -c.scale * btp;
  *hpp = -c.scale * bpp;
}

double grad_norm(const Coeffs& c, double th, double ph) {
  double gt, gp;
  gradient(c, th, ph, &gt, &gp);
  return std::hypot(gt, gp);
}

// ---------------------------------------------------------------------------
// Angle bookkeeping
// ---------------------------------------------------------------------------

void normalize_angles(double* th, double* ph) {
  double t = std::fmod(*th, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  double p = *ph;
  if (t > kPi) {
    t = 2.0 * kPi - t;
    p += kPi;
  }
  p = std::remainder(p, 2.0 * kPi);  // (-pi, pi]
  if (p >= kPi) p = -kPi;
  *th = t;
  *ph = p;
}

double arc_distance(double th1, double ph1, double th2, double ph2) {
  const double c = std::cos(th1) * std::cos(th2) +
                   std::sin(th1) * std::sin(th2) * std::cos(ph1 - ph2);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// ---------------------------------------------------------------------------
// Refinement: damped Newton on |grad|^2
// ---------------------------------------------------------------------------

bool refine(const Coeffs& c, double tol, double* th, double* ph) {
  // Iterate to full convergence instead of exiting at the acceptance
  // tolerance: near a degenerate threshold the |grad| < tol basin can be far
  // wider than the dedup radius, and early-exit would scatter distinct
  // pseudo-stationary points across it.
  const double hard_floor =
      1e-14 * c.scale *
      (std::abs(c.w) + 2.0 * std::abs(c.k2) + 2.0 * std::abs(c.kc) +
       std::abs(c.kq));
  double t = *th, p = *ph;
  for (int iter = 0; iter < kNewtonMaxIters; ++iter) {
    double gt, gp;
    gradient(c, t, p, &gt, &gp);
    const double gn = std::hypot(gt, gp);
    if (gn < hard_floor) break;

    double htt, htp, hpp;
    hessian(c, t, p, &htt, &htp, &hpp);
    const double det = htt * hpp - htp * htp;
    double dt, dp;
    if (std::abs(det) > 1e-14 * c.scale * c.scale * c.w * c.w) {
      dt = -(hpp * gt - htp * gp) / det;
      dp = -(htt * gp - htp * gt) / det;
    } else {
      // Singular Hessian: fall back to a short descent step on |grad|^2.
      dt = -gt / gn * kNewtonStepClamp * 0.1;
      dp = -gp / gn * kNewtonStepClamp * 0.1;
    }
    const double step = std::hypot(dt, dp);
    if (step > kNewtonStepClamp) {
      dt *= kNewtonStepClamp / step;
      dp *= kNewtonStepClamp / step;
    }

    // Backtrack until |grad|^2 decreases.
    const double f0 = gt * gt + gp * gp;
    double lambda = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 30; ++halvings) {
      const double tt = t + lambda * dt, pp2 = p + lambda * dp;
      double g2t, g2p;
      gradient(c, tt, pp2, &g2t, &g2p);
      if (g2t * g2t + g2p * g2p < f0) {
        t = tt;
        p = pp2;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;  // stuck; final tolerance check below
    if (lambda * std::hypot(dt, dp) < 1e-13) break;
  }
  const bool ok = grad_norm(c, t, p) < tol;
  if (ok) {
    *th = t;
    *ph = p;
  }
  return ok;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

StationaryKind classify_by_probe(const Coeffs& c, double th, double ph) {
  const double e0 = energy(c, th, ph);
  bool any_lower = false, any_higher = false;
  for (int k = 0; k < 8; ++k) {
    const double a = k * kPi / 4.0;
    const double e = energy(c, th + kProbeRadius * std::cos(a),
                            ph + kProbeRadius * std::sin(a));
    (e < e0 ? any_lower : any_higher) = true;
  }
  if (!any_lower) return StationaryKind::minimum;
  if (!any_higher) return StationaryKind::maximum;
  return StationaryKind::saddle;
}

StationaryKind classify(const Coeffs& c, double th, double ph, double a_size) {
  double htt, htp, hpp;
  hessian(c, th, ph, &htt, &htp, &hpp);
  const double mean = 0.5 * (htt + hpp);
  const double disc = std::hypot(0.5 * (htt - hpp), htp);
  const double lo = mean - disc, hi = mean + disc;
  const double tau = kHessTolFactor * a_size;
  if (lo > tau && hi > tau) return StationaryKind::minimum;
  if (lo < -tau && hi < -tau) return StationaryKind::maximum;
  if (lo < -tau && hi > tau) return StationaryKind::saddle;
  // Eigenvalue too close to zero for a sign call (e.g. near-degenerate well,
  // or the phi direction collapsing near a pole): sample the neighborhood.
  return classify_by_probe(c, th, ph);
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

double hcl_eval(double theta, double phi, int A, const ModelSpec& spec,
                bool include_corrections) {
  if (A < 1) throw invalid_parameter_error("hcl_eval: A must be >= 1");
  if (!std::isfinite(theta) || !std::isfinite(phi))
    throw invalid_parameter_error("hcl_eval: angles must be finite");
  return energy(coeffs_of(A, spec, include_corrections), theta, phi);
}

void hcl_gradient(double theta, double phi, int A, const ModelSpec& spec,
                  bool include_corrections, double* d_theta, double* d_phi) {
  if (A < 1) throw invalid_parameter_error("hcl_gradient: A must be >= 1");
  gradient(coeffs_of(A, spec, include_corrections), theta, phi, d_theta,
           d_phi);
}

void hcl_hessian(double theta, double phi, int A, const ModelSpec& spec,
                 bool include_corrections, double* h_tt, double* h_tp,
                 double* h_pp) {
  if (A < 1) throw invalid_parameter_error("hcl_hessian: A must be >= 1");
  hessian(coeffs_of(A, spec, include_corrections), theta, phi, h_tt, h_tp,
          h_pp);
}

ClassicalLandscape find_stationary(int A, const ModelSpec& spec,
                                   bool include_corrections) {
  if (A < 1) throw invalid_parameter_error("find_stationary: A must be >= 1");
  const Coeffs c = coeffs_of(A, spec, include_corrections);
  if (!(c.w > 0.0))
    throw regime_invalid_error(
        "find_stationary: renormalized frequency <= 0");
  const double tol = kGradTolFactor * A;

  // Coarse |grad|^2 landscape.
  static_assert(kPhiGrid == 361, "last phi column duplicates the first");
  std::vector<double> g2(kThetaGrid * kPhiGrid);
  auto theta_at = [](int i) { return i * kPi / (kThetaGrid - 1); };
  auto phi_at = [](int j) { return -kPi + j * 2.0 * kPi / (kPhiGrid - 1); };
  for (int i = 0; i < kThetaGrid; ++i)
    for (int j = 0; j < kPhiGrid; ++j) {
      const double gn = grad_norm(c, theta_at(i), phi_at(j));
      g2[i * kPhiGrid + j] = gn * gn;
    }

  // Seeds: 4-neighbor local minima of |grad|^2 on interior theta rows, with
  // phi wrapping across the duplicated end column.
  std::vector<std::pair<double, double>> refined;
  auto at = [&](int i, int j) { return g2[i * kPhiGrid + j]; };
  for (int i = 1; i + 1 < kThetaGrid; ++i)
    for (int j = 0; j + 1 < kPhiGrid; ++j) {
      const int jl = (j == 0) ? kPhiGrid - 2 : j - 1;
      const double v = at(i, j);
      if (v <= at(i - 1, j) && v <= at(i + 1, j) && v <= at(i, jl) &&
          v <= at(i, j + 1)) {
        double th = theta_at(i), ph = phi_at(j);
        if (refine(c, tol, &th, &ph)) {
          normalize_angles(&th, &ph);
          // The (theta, phi) chart is singular at the poles: d/dphi vanishes
          // identically there, so refinement can park on a pole that is not
          // stationary on the sphere. Poles are judged only by the
          // slope test below.
          if (th < kPoleSnap || th > kPi - kPoleSnap) continue;
          refined.emplace_back(th, ph);
        }
      }
    }

  // Poles: single candidate points, stationary only if the energy is flat to
  // first order in every direction.
  std::vector<std::pair<double, double>> candidates;
  for (double pole : {0.0, kPi}) {
    const double e0 = energy(c, pole, 0.0);
    double slope = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double a = k * kPi / 4.0;
      slope = std::max(slope, std::abs(energy(c, pole + kProbeRadius, a) -
                                       e0) / kProbeRadius);
    }
    if (slope < tol) candidates.emplace_back(pole, 0.0);
  }

  // Deterministic dedup: poles first, then refined points sorted by angle.
  std::sort(refined.begin(), refined.end());
  candidates.insert(candidates.end(), refined.begin(), refined.end());
  std::vector<std::pair<double, double>> unique_pts;
  for (const auto& [th, ph] : candidates) {
    bool dup = false;
    for (const auto& [uth, uph] : unique_pts)
      if (arc_distance(th, ph, uth, uph) < kDedupArc) {
        dup = true;
        break;
      }
    if (!dup) unique_pts.emplace_back(th, ph);
  }
  if (unique_pts.empty())
    throw no_convergence_error(
        "find_stationary: refinement produced no stationary points");

  ClassicalLandscape out;
  out.omega1_tilde = c.w;
  out.xi = 4.0 * A * spec.g * spec.delta() / c.w;
  out.include_cubic_corrections = include_corrections;
  for (const auto& [th, ph] : unique_pts) {
    StationaryPoint pt;
    pt.theta = th;
    pt.phi = ph;
    pt.energy = energy(c, th, ph);
    const bool at_pole = th < kDedupArc || th > kPi - kDedupArc;
    pt.kind = at_pole ? classify_by_probe(c, th, ph)
                      : classify(c, th, ph, static_cast<double>(A));
    out.stationary_points.push_back(pt);
  }
  std::sort(out.stationary_points.begin(), out.stationary_points.end(),
            [](const StationaryPoint& a, const StationaryPoint& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              if (a.theta != b.theta) return a.theta < b.theta;
              return a.phi < b.phi;
            });

  const StationaryPoint* global_min = nullptr;
  for (const auto& pt : out.stationary_points)
    if (pt.kind == StationaryKind::minimum) {
      global_min = &pt;
      break;
    }
  if (!global_min)
    throw no_convergence_error("find_stationary: no minimum located");
  out.order_parameter = std::abs(std::cos(global_min->theta));

  if (out.xi > 1.0) {
    const StationaryPoint* sep = nullptr;
    for (const auto& pt : out.stationary_points)
      if (pt.kind == StationaryKind::saddle &&
          (!sep || std::abs(pt.theta - 0.5 * kPi) <
                       std::abs(sep->theta - 0.5 * kPi)))
        sep = &pt;
    if (sep) out.separatrix_energy = sep->energy;
  }
  return out;
}

double order_parameter(double xi) {
  if (!(xi >= 0.0))
    throw invalid_parameter_error("order_parameter: xi must be >= 0");
  if (xi <= 1.0) return 0.0;
  return std::sqrt(1.0 - 1.0 / (xi * xi));
}

// ---------------------------------------------------------------------------
// Bifurcation scan
// ---------------------------------------------------------------------------

double bifurcation_scan(models::ModelId id, const SweepGrid& sweep,
                        int a_fixed, double omega1, double omega2,
                        double g_fixed) {
  if (sweep.n_points < 16)
    throw invalid_parameter_error(
        "bifurcation_scan: sweep grid needs at least 16 points");
  if (!(sweep.lo < sweep.hi) || !std::isfinite(sweep.lo) ||
      !std::isfinite(sweep.hi))
    throw invalid_parameter_error(
        "bifurcation_scan: sweep range must be finite with lo < hi");

  std::function<bool(double)> past_transition;
  switch (id) {
    case models::ModelId::dicke_full:
    case models::ModelId::dicke_field_slow:
      // Sweep the system size A; the well is double once c2 <= 0.
      past_transition = [&](double a) {
        return models::field_slow_coeffs(a, ModelSpec(omega1, omega2,
                                                      g_fixed))
                   .c2 <= 0.0;
      };
      break;
    case models::ModelId::dicke_atom_slow:
    case models::ModelId::dicke_atom_slow_rotated:
      // Sweep the coupling g; count classical minima (corrections off).
      past_transition = [&](double g) {
        const ModelSpec s(omega1, omega2, g);
        const ClassicalLandscape land =
            find_stationary(a_fixed, s, /*include_corrections=*/false);
        int minima = 0;
        for (const auto& pt : land.stationary_points)
          if (pt.kind == StationaryKind::minimum) ++minima;
        return minima >= 2;
      };
      break;
    case models::ModelId::spin_spin_slow:
      throw invalid_parameter_error(
          "bifurcation_scan: the spin-spin model has no sweep contract");
  }

  const double span = sweep.hi - sweep.lo;
  double lo = sweep.lo;
  bool lo_side = past_transition(lo);
  double hi = 0.0;
  bool found = false;
  for (int i = 1; i < sweep.n_points; ++i) {
    const double x =
        sweep.lo + span * static_cast<double>(i) / (sweep.n_points - 1);
    if (past_transition(x) != lo_side) {
      hi = x;
      found = true;
      break;
    }
    lo = x;
  }
  if (!found)
    throw not_bracketed_error(
        "bifurcation_scan: no transition inside the sweep range");

  while (0.5 * (hi - lo) > kBracketTolFactor * span) {
    const double mid = 0.5 * (lo + hi);
    if (past_transition(mid) == lo_side)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace effham::classical
