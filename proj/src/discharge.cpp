#include "sluiceops/discharge.hpp"

#include <algorithm>
#include <cmath>

namespace sluiceops {

namespace {

constexpr double kClosedRatio = 1e-4;  // a/h1 below this counts as closed

double clamp_ratio(double ratio) {
  // The solver may probe openings close to (or nominally above) the upstream
  // depth; the empirical fits are only defined on (0, 1].
  return std::clamp(ratio, kClosedRatio, 1.0);
}

void check_geometry(const GateGeometry& geom) {
  if (geom.w <= 0.0) throw std::domain_error("bay width must be positive");
  if (geom.a < 0.0) throw std::domain_error("gate opening must be >= 0");
  if (geom.w_in < geom.w || geom.w_out < geom.w) {
    throw std::domain_error("approach/exit widths must be >= bay width");
  }
}

}  // namespace

double LossCoefficients::xi_in() const {
  if (c_c_in <= 0.0 || c_c_in > 1.0) {
    throw std::domain_error("entrance contraction coefficient must be in (0, 1]");
  }
  const double r = 1.0 / c_c_in - 1.0;
  return r * r;
}

double contraction_coefficient(double ratio) {
  if (!(ratio > 0.0) || ratio > 1.0) {
    throw std::domain_error("a/h1 must be in (0, 1]");
  }
  const auto henry = [](double r) { return 0.782 / (1.782 - r); };
  const auto cozzo = [](double r) { return -0.004 * std::log(r) + 0.6074; };
  // The two fits differ by ~1e-4 where they meet; a narrow linear blend keeps
  // C_c continuous so the discharge iteration has no jump to fall into.
  constexpr double kLo = 0.49, kHi = 0.51;
  if (ratio >= kHi) return henry(ratio);
  if (ratio <= kLo) return cozzo(ratio);
  const double s = (ratio - kLo) / (kHi - kLo);
  return (1.0 - s) * cozzo(kLo) + s * henry(kHi);
}

double discharge_coefficient(double c_c, double ratio) {
  if (!(c_c > 0.0) || c_c > 1.0) throw std::domain_error("C_c must be in (0, 1]");
  if (!(ratio > 0.0) || ratio > 1.0) throw std::domain_error("a/h1 must be in (0, 1]");
  return c_c / std::sqrt(1.0 + c_c * ratio);
}

double simple_submerged_discharge(double c_d, double a, double w, double h_up,
                                  double h_down) {
  if (a == 0.0) return 0.0;
  if (c_d <= 0.0 || a < 0.0 || w <= 0.0) {
    throw std::domain_error("c_d, a, w must be positive");
  }
  if (!(h_up > h_down)) {
    throw std::domain_error("zero or adverse head; treat gate as closed");
  }
  return c_d * a * w * std::sqrt(2.0 * kGravity * (h_up - h_down));
}

double solve_cubic_subcritical(const std::array<double, 4>& coeffs, double lo,
                               double hi, double tol) {
  auto p = [&coeffs](double h) {
    return coeffs[0] + h * (coeffs[1] + h * (coeffs[2] + h * coeffs[3]));
  };
  if (!(lo < hi)) throw std::domain_error("empty bracket");
  double flo = p(lo);
  double fhi = p(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NoSolutionError("no real root inside the physical bracket");
  }
  for (int i = 0; i < 200 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ForwardResult forward_sweep(double h0, double q, const GateGeometry& geom,
                            const LossCoefficients& losses) {
  if (!(h0 > 0.0)) throw std::domain_error("h0 must be positive");
  if (q < 0.0) throw std::domain_error("discharge must be >= 0");
  check_geometry(geom);

  ForwardResult res;
  if (q == 0.0) {
    res.h1 = h0;
    res.h2 = h0;
    res.c_c = contraction_coefficient(clamp_ratio(geom.a / h0));
    return res;
  }

  const double g2 = 2.0 * kGravity;
  const double u_in = q / (geom.w_in * h0);
  const double energy0 = h0 + u_in * u_in / g2;
  const double qw = q / geom.w;
  const double c0 = (1.0 + losses.xi_in()) * qw * qw / g2;

  // [h0,h1] as h1^3 - E0 h1^2 + (1+xi_in) (Q/w)^2 / 2g = 0, subcritical branch.
  const double h_crit = std::cbrt(2.0 * c0);
  if (!(h_crit < energy0)) {
    throw NoSolutionError("energy head too low for the entrance transition");
  }
  res.h1 = solve_cubic_subcritical({c0, 0.0, -energy0, 1.0}, h_crit, energy0);

  const double ratio = clamp_ratio(geom.a / res.h1);
  res.c_c = contraction_coefficient(ratio);

  // [h1,h2]: h2 enters linearly; the jet velocity head uses area w*C_c*a.
  const double u1 = qw / res.h1;
  const double u_jet = qw / (res.c_c * geom.a);
  res.h2 = res.h1 + (u1 * u1 - u_jet * u_jet) / g2;
  if (!(res.h2 > 0.0)) {
    throw NoSolutionError("flow cannot pass the gate at this discharge");
  }
  return res;
}

BackwardResult backward_sweep(double h4, double q, const GateGeometry& geom,
                              const LossCoefficients& losses, double c_c) {
  if (!(h4 > 0.0)) throw std::domain_error("h4 must be positive");
  if (q < 0.0) throw std::domain_error("discharge must be >= 0");
  if (!(c_c > 0.0) || c_c > 1.0) throw std::domain_error("C_c must be in (0, 1]");
  check_geometry(geom);

  BackwardResult res;
  if (q == 0.0) {
    res.h3 = h4;
    res.h2 = h4;
    return res;
  }

  const double g2 = 2.0 * kGravity;
  const double u4 = q / (geom.w_out * h4);
  const double rhs = h4 + u4 * u4 / g2;
  const double qw = q / geom.w;
  const double c = (losses.xi_out - 1.0) * qw * qw / g2;

  // [h3,h4] as h3^3 - rhs*h3^2 - c = 0.
  if (std::abs(c) < 1e-300) {
    res.h3 = rhs;
  } else if (c > 0.0) {
    // Monotone branch; the root sits just above rhs.
    const double hi = rhs + c / (rhs * rhs) + 1e-12;
    res.h3 = solve_cubic_subcritical({-c, 0.0, -rhs, 1.0}, rhs, hi);
  } else {
    // Energy-like shape; take the subcritical (deep) root below rhs.
    const double h_crit = 2.0 * rhs / 3.0;
    res.h3 = solve_cubic_subcritical({-c, 0.0, -rhs, 1.0}, h_crit, rhs);
  }

  // [h2,h3] momentum balance per unit width:
  //   1/2 g h2^2 + q^2/(C_c a) = 1/2 g h3^2 + q^2/h3, q = Q/w.
  const double s = res.h3 * res.h3 + 2.0 * qw * qw / (kGravity * res.h3) -
                   2.0 * qw * qw / (kGravity * c_c * geom.a);
  if (!(s > 0.0)) {
    throw NoSolutionError("momentum balance has no positive control depth");
  }
  res.h2 = std::sqrt(s);
  return res;
}

FlowRegime classify_regime(double h2, double c_c, double a) {
  return h2 > c_c * a ? FlowRegime::submerged : FlowRegime::modular_limit_reached;
}

double nago_ce(double c_d, double h1, double h3) {
  if (!(h1 > h3) || !(h3 > 0.0)) {
    throw std::domain_error("nago_ce requires h1 > h3 > 0");
  }
  return c_d * std::sqrt(h1 - h3) / std::sqrt(h1);
}

namespace {

struct SweepPair {
  double h1, h2f, h2b, h3, c_c;
  double residual() const { return h2f - h2b; }
};

// Runs both sweeps at a trial discharge. nullopt means the flow cannot pass
// in the submerged regime at this Q (treated as "Q too high" by the caller).
std::optional<SweepPair> try_sweeps(double h0, double h4, double q,
                                    const GateGeometry& geom,
                                    const LossCoefficients& losses) {
  try {
    const ForwardResult fwd = forward_sweep(h0, q, geom, losses);
    const BackwardResult bwd = backward_sweep(h4, q, geom, losses, fwd.c_c);
    return SweepPair{fwd.h1, fwd.h2, bwd.h2, bwd.h3, fwd.c_c};
  } catch (const NoSolutionError&) {
    return std::nullopt;
  }
}

// Discharge at which the control section just contracts to the vena-contracta
// height: the forward branch gives h2f(Q) decreasing, so bisect h2f = C_c a.
double modular_flow_discharge(double h0, const GateGeometry& geom,
                              const LossCoefficients& losses, double q_upper) {
  double lo = 0.0, hi = q_upper;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    try {
      const ForwardResult fwd = forward_sweep(h0, mid, geom, losses);
      (fwd.h2 > fwd.c_c * geom.a ? lo : hi) = mid;
    } catch (const NoSolutionError&) {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

DischargeSolution solve_discharge(double h0, double h4,
                                  const GateGeometry& geom,
                                  const LossCoefficients& losses, double tol) {
  if (!(h4 > 0.0) || !(h0 > h4)) {
    throw std::domain_error("solve_discharge requires h0 > h4 > 0");
  }
  if (!(geom.a > 0.0)) throw std::domain_error("gate opening must be positive");
  check_geometry(geom);

  DischargeSolution sol;
  sol.levels = {h0, h0, h4, h4, h4};

  // Degenerate near-closure: treat as a closed gate.
  if (geom.a / h0 < kClosedRatio) {
    sol.c_c = contraction_coefficient(kClosedRatio);
    sol.c_d = discharge_coefficient(sol.c_c, kClosedRatio);
    return sol;
  }

  const double head = h0 - h4;
  double q_hi = 1.5 * geom.a * geom.w * std::sqrt(2.0 * kGravity * head);
  double q_lo = 0.0;  // residual h0 - h4 > 0 at Q = 0

  // Make sure the upper end of the search range is past the solution.
  for (int i = 0; i < 4; ++i) {
    const auto probe = try_sweeps(h0, h4, q_hi, geom, losses);
    if (!probe || probe->residual() < 0.0) break;
    if (i == 3) {
      throw ConvergenceError("discharge bracket exhausted", probe->residual());
    }
    q_hi *= 2.0;
  }

  // g(Q) = h2_forward - h2_backward starts positive but is not monotone: the
  // tailwater branch collapses towards the modular limit and g can turn
  // positive again beyond the physical root. Bracket the FIRST sign change
  // by a linear scan so the bisection cannot land on the spurious branch.
  {
    constexpr int kScan = 64;
    const double step = q_hi / kScan;
    for (int k = 1; k <= kScan; ++k) {
      const double q_probe = k * step;
      const auto probe = try_sweeps(h0, h4, q_probe, geom, losses);
      if (!probe || probe->residual() < 0.0) {
        q_lo = (k - 1) * step;
        q_hi = q_probe;
        break;
      }
    }
  }

  double q = 0.5 * (q_lo + q_hi);
  std::optional<SweepPair> best;
  double best_q = 0.0;
  for (int i = 0; i < 200; ++i) {
    q = 0.5 * (q_lo + q_hi);
    const auto pair = try_sweeps(h0, h4, q, geom, losses);
    if (pair) {
      if (!best || std::abs(pair->residual()) < std::abs(best->residual())) {
        best = pair;
        best_q = q;
      }
      if (std::abs(pair->residual()) <= tol) break;
      (pair->residual() > 0.0 ? q_lo : q_hi) = q;
    } else {
      q_hi = q;
    }
  }
  if (!best || std::abs(best->residual()) > tol) {
    // A persistent positive residual means the bracket collapsed against the
    // validity limit of the sweeps without a sign change: no submerged match
    // exists and the flow is past the modular limit (the bisection only
    // lowers the upper end on invalid sweeps or negative residuals). Report
    // the flow capped at Q_MF instead of failing.
    if (best && best->residual() > 0.0) {
      // Cap at the end of the submerged branch: past it the downstream no
      // longer influences the flow, and the forward-criterion discharge can
      // only overestimate what the schematization supports.
      const double q_mf = std::min(
          modular_flow_discharge(h0, geom, losses, q_hi), best_q);
      if (const auto pair = try_sweeps(h0, h4, q_mf, geom, losses)) {
        sol.levels = {h0, pair->h1, pair->h2f, pair->h3, h4};
        sol.c_c = pair->c_c;
        sol.residual = std::abs(pair->residual());
      } else {
        // Beyond the modular limit even the tailwater branch has no
        // subcritical solution; keep the upstream side and leave h3 at the
        // boundary value. The bisected q_mf can sit a hair past the forward
        // validity edge, so back off slightly if needed.
        ForwardResult fwd;
        double q_fwd = q_mf;
        for (int i = 0;; ++i) {
          try {
            fwd = forward_sweep(h0, q_fwd, geom, losses);
            break;
          } catch (const NoSolutionError&) {
            if (i == 8) {
              throw ConvergenceError("discharge iteration did not converge",
                                     best->residual());
            }
            q_fwd *= 0.999;
          }
        }
        sol.levels = {h0, fwd.h1, fwd.h2, h4, h4};
        sol.c_c = fwd.c_c;
        sol.residual = std::abs(best->residual());
      }
      sol.q_total = q_mf;
      sol.c_d = discharge_coefficient(
          sol.c_c, clamp_ratio(geom.a / sol.levels.h1));
      sol.regime = FlowRegime::modular_limit_reached;
      sol.q_mf = q_mf;
      return sol;
    }
    throw ConvergenceError("discharge iteration did not converge",
                           best ? best->residual() : head);
  }

  const double h2 = 0.5 * (best->h2f + best->h2b);
  sol.levels = {h0, best->h1, h2, best->h3, h4};
  sol.q_total = best_q;
  sol.c_c = best->c_c;
  sol.c_d = discharge_coefficient(best->c_c, clamp_ratio(geom.a / best->h1));
  sol.residual = std::abs(best->residual());
  sol.regime = classify_regime(h2, best->c_c, geom.a);

  if (sol.regime == FlowRegime::modular_limit_reached) {
    // Back off along the forward branch to the discharge at which the
    // control section just reaches the vena-contracta height.
    sol.q_mf = modular_flow_discharge(h0, geom, losses, best_q);
  }
  return sol;
}

}  // namespace sluiceops
