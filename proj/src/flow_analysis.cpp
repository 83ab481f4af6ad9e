#include "sluiceops/flow_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sluiceops/discharge.hpp"

namespace sluiceops {

namespace {

// Trapezoidal integral of the nodal values of one column from the bed up to
// the free surface; the value at the surface is the last wet node's value
// (the profile is treated as constant across the partial top cell).
double column_integral(const FlowField& f, std::size_t ix,
                       const std::vector<double>& nodal, double z_top) {
  const std::size_t nz = f.nz();
  double integral = 0.0;
  std::size_t j = 1;
  for (; j < nz && f.z[j] <= z_top + 1e-12; ++j) {
    integral += 0.5 * (nodal[f.idx(ix, j - 1)] + nodal[f.idx(ix, j)]) *
                (f.z[j] - f.z[j - 1]);
  }
  const std::size_t j_last = j - 1;
  if (f.z[j_last] < z_top) {
    integral += nodal[f.idx(ix, j_last)] * (z_top - f.z[j_last]);
  }
  return integral;
}

}  // namespace

SeparationEdge separation_edge(const FlowField& field, double window) {
  if (field.nx() < 2 || field.nz() < 2) {
    throw std::domain_error("field grid too small");
  }
  SeparationEdge edge;
  const double bed = field.z.front();
  double win = window;
  if (!(win > 0.0)) {
    // Default search window: five times the exit-side water depth.
    win = 5.0 * (field.surface.back() - bed);
  }

  bool any_contraction = false;
  for (std::size_t i = 0; i < field.nx(); ++i) {
    const double x = field.x[i];
    if (x <= field.gate_x || x > field.gate_x + win) continue;
    double z_edge = field.surface[i];
    bool contracted = false;
    for (std::size_t j = 0; j < field.nz(); ++j) {
      if (!field.wet(i, j)) break;
      const double u = field.u[field.idx(i, j)];
      if (u > 0.0) continue;
      if (j == 0) {
        z_edge = bed;
      } else {
        const double u_prev = field.u[field.idx(i, j - 1)];
        z_edge = field.z[j - 1] +
                 (field.z[j] - field.z[j - 1]) * u_prev / (u_prev - u);
      }
      contracted = true;
      break;
    }
    edge.x.push_back(x);
    edge.z_edge.push_back(z_edge);
    any_contraction = any_contraction || contracted;
  }
  if (edge.x.empty()) {
    throw std::domain_error("no columns downstream of the gate plane");
  }
  edge.no_contraction = !any_contraction;

  std::size_t best = 0;
  for (std::size_t i = 1; i < edge.x.size(); ++i) {
    if (edge.z_edge[i] < edge.z_edge[best]) best = i;
  }
  edge.vc_column = best;
  edge.x_vc = edge.x[best];
  edge.thickness = edge.z_edge[best] - bed;
  return edge;
}

double contraction_from_field(const FlowField& field) {
  if (!(field.a > 0.0)) throw std::domain_error("field carries no gate opening");
  const SeparationEdge edge = separation_edge(field);
  if (edge.no_contraction) {
    throw NoSolutionError("flow is not contracted downstream of the gate");
  }
  return edge.thickness / field.a;
}

double vena_velocity(const FlowField& field, double c_c) {
  if (!(c_c > 0.0) || c_c > 1.0) throw std::domain_error("C_c must be in (0, 1]");
  if (!(field.a > 0.0)) throw std::domain_error("field carries no gate opening");
  const SeparationEdge edge = separation_edge(field);

  // Column index of the vena contracta in the full grid.
  std::size_t ix = 0;
  double best = 1e300;
  for (std::size_t i = 0; i < field.nx(); ++i) {
    const double d = std::abs(field.x[i] - edge.x_vc);
    if (d < best) {
      best = d;
      ix = i;
    }
  }

  const double span = c_c * field.a;
  const double bed = field.z.front();
  if (span > field.surface[ix] - bed + 1e-9) {
    throw std::domain_error("integration span exceeds the water column");
  }

  // Trapezoidal integral of |(u,w)| over [bed, bed + span], with linear
  // interpolation of the magnitude at the upper limit.
  const double z_top = bed + span;
  double integral = 0.0;
  double mag_prev = std::hypot(field.u[field.idx(ix, 0)], field.w[field.idx(ix, 0)]);
  double z_prev = field.z[0];
  for (std::size_t j = 1; j < field.nz(); ++j) {
    const double mag = std::hypot(field.u[field.idx(ix, j)], field.w[field.idx(ix, j)]);
    if (field.z[j] >= z_top) {
      const double frac = (z_top - z_prev) / (field.z[j] - z_prev);
      const double mag_top = mag_prev + frac * (mag - mag_prev);
      integral += 0.5 * (mag_prev + mag_top) * (z_top - z_prev);
      return integral / span;
    }
    integral += 0.5 * (mag_prev + mag) * (field.z[j] - z_prev);
    mag_prev = mag;
    z_prev = field.z[j];
  }
  return integral / span;
}

double froude(double u_vc, double h2) {
  if (!(h2 > 0.0)) throw std::domain_error("control-section depth must be positive");
  return u_vc / std::sqrt(kGravity * h2);
}

double reduced_velocity(double u_vc, double f_gate, double L) {
  if (!(f_gate > 0.0) || !(L > 0.0)) {
    throw std::domain_error("gate frequency and length scale must be positive");
  }
  return u_vc / (f_gate * L);
}

ResponseCurve load_response_curve(const std::string& path,
                                  const std::string& label) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ResponseCurve curve;
  curve.label = label;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line.rfind("vr", 0) == 0) continue;  // header
    std::stringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',')) {
      throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                               ": expected vr,relative_amplitude");
    }
    curve.samples.emplace_back(std::stod(a), std::stod(b));
  }
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const auto& [vr, amp] = curve.samples[i];
    if (amp < 0.0 || amp > 1.0) {
      throw std::runtime_error(path + ": relative amplitude outside [0, 1]");
    }
    if (i > 0 && !(vr > curve.samples[i - 1].first)) {
      throw std::runtime_error(path + ": Vr samples not strictly increasing");
    }
  }
  return curve;
}

double amplitude_lookup(const ResponseCurve& curve, double vr) {
  if (curve.samples.empty()) throw std::domain_error("empty response curve");
  const auto& s = curve.samples;
  if (vr < s.front().first || vr > s.back().first) return 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (vr <= s[i].first) {
      const double t = (vr - s[i - 1].first) / (s[i].first - s[i - 1].first);
      return s[i - 1].second + t * (s[i].second - s[i - 1].second);
    }
  }
  return s.back().second;
}

double natural_frequency(const GateDynamics& dyn) {
  if (dyn.f_gate) return *dyn.f_gate;
  const double mass = dyn.m_struct + dyn.m_w;
  if (!(mass > 0.0)) throw std::domain_error("total mass must be positive");
  if (dyn.k_struct < 0.0 || dyn.k_w < 0.0) {
    throw std::domain_error("stiffnesses must be >= 0");
  }
  return std::sqrt((dyn.k_struct + dyn.k_w) / mass) / (2.0 * std::numbers::pi);
}

StabilityProfile psi_profile(const FlowField& field, double alpha, double delta,
                             double x_from, double x_to) {
  if (alpha < 0.0) throw std::domain_error("alpha must be >= 0");
  if (!(delta > 0.0)) throw std::domain_error("relative density must be positive");
  StabilityProfile prof;
  prof.alpha = alpha;
  prof.delta = delta;

  // (U + alpha sqrt(k))^2 at each node.
  std::vector<double> load(field.u.size());
  for (std::size_t n = 0; n < load.size(); ++n) {
    const double mag = std::hypot(field.u[n], field.w[n]);
    const double v = mag + alpha * std::sqrt(field.k[n]);
    load[n] = v * v;
  }

  const double bed = field.z.front();
  for (std::size_t i = 0; i < field.nx(); ++i) {
    const double x = field.x[i];
    if (x < x_from || x > x_to) continue;
    const double d = field.surface[i] - bed;
    if (!(d > 1e-9)) continue;  // dry column
    const double mean = column_integral(field, i, load, field.surface[i]) / d;
    const double psi = mean / (delta * kGravity * d);
    prof.x.push_back(x);
    prof.psi.push_back(psi);
    prof.psi_max = std::max(prof.psi_max, psi);
  }
  return prof;
}

}  // namespace sluiceops
