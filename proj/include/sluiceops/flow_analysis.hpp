#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sluiceops/flow_field.hpp"

namespace sluiceops {

struct SeparationEdge {
  std::vector<double> x;       // columns downstream of the gate
  std::vector<double> z_edge;  // dividing line between forward and return flow
  bool no_contraction = false; // u > 0 over the full depth everywhere
  std::size_t vc_column = 0;   // index into x/z_edge
  double x_vc = 0.0;           // vena-contracta station
  double thickness = 0.0;      // contracted-flow height at x_vc
};

// Traces the edge of the separated layer per column (highest z below which
// u > 0 contiguously from the bed, sign change interpolated linearly) and
// locates the thickness minimum. window limits the search downstream of
// gate_x; <= 0 means five times the exit depth.
SeparationEdge separation_edge(const FlowField& field, double window = 0.0);

// C_c = jet thickness at the vena contracta / a.
double contraction_from_field(const FlowField& field);

// Depth-average of |(u,w)| over z in [0, c_c*a] at the vena contracta.
double vena_velocity(const FlowField& field, double c_c);

// Fr = U_vc / sqrt(g h2)
double froude(double u_vc, double h2);

// Vr = U_vc / (f_gate L)
double reduced_velocity(double u_vc, double f_gate, double L);

struct ResponseCurve {
  std::string label;  // regime: small/large opening
  std::vector<std::pair<double, double>> samples;  // (Vr, A/A_max), Vr ascending
};

ResponseCurve load_response_curve(const std::string& path,
                                  const std::string& label = "");

// Piecewise-linear interpolation; zero outside the sampled Vr range.
double amplitude_lookup(const ResponseCurve& curve, double vr);

struct GateDynamics {
  double k_struct = 0.0;  // structural stiffness (N/m)
  double k_w = 0.0;       // added rigidity (N/m)
  double m_struct = 0.0;  // mass (kg)
  double m_w = 0.0;       // added water mass (kg)
  double L = 0.0;         // gate-bottom thickness (m)
  std::optional<double> f_gate;  // measured response frequency override (Hz)
};

// f = (1/2pi) sqrt((k + k_w)/(m + m_w)); damping neglected. A measured
// f_gate override takes precedence.
double natural_frequency(const GateDynamics& dyn);

struct StabilityProfile {
  std::vector<double> x;
  std::vector<double> psi;
  double alpha = 0.0;
  double delta = 1.65;
  double psi_max = 0.0;
};

// Shields-type load profile: per column the depth-average of
// (U + alpha sqrt(k))^2 over the wet nodes, divided by Delta g d.
StabilityProfile psi_profile(const FlowField& field, double alpha, double delta,
                             double x_from, double x_to);

}  // namespace sluiceops
