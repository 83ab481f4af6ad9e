#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace sluiceops {

inline constexpr double kGravity = 9.81;  // m/s^2

// Geometry of a single bay. Widths of the approach and exit sections may
// exceed the width between the piers; all depths are measured above the sill.
struct GateGeometry {
  double w = 0.0;      // flow width between piers (m)
  double a = 0.0;      // gate opening (m)
  double w_in = 0.0;   // approach-section width upstream of the piers (m)
  double w_out = 0.0;  // exit-section width downstream of the piers (m)
  double sill_level = 0.0;  // sill elevation above datum (m)
};

struct LossCoefficients {
  double c_c_in = 0.9;  // entrance contraction coefficient
  double xi_out = 1.0;  // exit loss coefficient

  // xi_in = (1/C_c,in - 1)^2
  double xi_in() const;
};

// Water depths above the sill at the five stations across the structure.
struct StationLevels {
  double h0 = 0, h1 = 0, h2 = 0, h3 = 0, h4 = 0;
};

enum class FlowRegime { submerged, modular_limit_reached };

struct DischargeSolution {
  StationLevels levels;
  double q_total = 0.0;  // per-gate discharge (m^3/s)
  double c_c = 1.0;      // contraction coefficient at the solution
  double c_d = 1.0;      // discharge coefficient at the solution
  FlowRegime regime = FlowRegime::submerged;
  double residual = 0.0;  // |h2_forward - h2_backward| (m)
  std::optional<double> q_mf;  // modular-flow discharge bound (m^3/s)
};

// A transition equation has no subcritical root at the attempted discharge;
// signals a regime change rather than a numerical defect.
class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, double residual)
      : std::runtime_error(msg), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Contraction coefficient for a sharp-edged gate as a function of a/h1.
// Henry fit above a/h1 = 0.5, Cozzo fit (natural log) at or below it.
double contraction_coefficient(double ratio);

// C_D = C_c / sqrt(1 + C_c * a/h1)
double discharge_coefficient(double c_c, double ratio);

// Q = C_D * a * w * sqrt(2 g (h_up - h_down))
double simple_submerged_discharge(double c_d, double a, double w, double h_up,
                                  double h_down);

// Root of coeffs[0] + coeffs[1] h + coeffs[2] h^2 + coeffs[3] h^3 = 0 inside
// (lo, hi), found by bisection. The bracket must isolate the subcritical
// branch; a bracket without a sign change raises NoSolutionError.
double solve_cubic_subcritical(const std::array<double, 4>& coeffs, double lo,
                               double hi, double tol = 1e-13);

struct ForwardResult {
  double h1 = 0, h2 = 0;
  double c_c = 1.0;
};

// Upstream side in flow direction: h0 -> h1 (Bernoulli with entrance loss),
// then h1 -> h2 with jet area w * C_c * a. C_c is evaluated at a/h1.
ForwardResult forward_sweep(double h0, double q, const GateGeometry& geom,
                            const LossCoefficients& losses);

struct BackwardResult {
  double h3 = 0, h2 = 0;
};

// Downstream side against the flow: h4 -> h3 (exit loss), then the momentum
// balance over the recirculation zone h3 -> h2, per unit width.
BackwardResult backward_sweep(double h4, double q, const GateGeometry& geom,
                              const LossCoefficients& losses, double c_c);

// Iterates on Q until h2 computed from upstream matches h2 computed from
// downstream within tol (meters of depth), then applies the modular-flow
// check. h0 and h4 are depths above the sill.
DischargeSolution solve_discharge(double h0, double h4,
                                  const GateGeometry& geom,
                                  const LossCoefficients& losses,
                                  double tol = 1e-6);

// Submerged iff the control-section depth exceeds the vena-contracta height.
FlowRegime classify_regime(double h2, double c_c, double a);

// C_E = C_D * sqrt(h1 - h3) / sqrt(h1)
double nago_ce(double c_d, double h1, double h3);

}  // namespace sluiceops
