#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sluiceops {

// Time-mean 2DV flow field on a regular rectangular grid. Node storage is
// row-major by x then z: index(ix, iz) = ix * nz + iz. Nodes above the free
// surface are present but masked via wet().
struct FlowField {
  std::vector<double> x;  // grid lines, strictly increasing (m)
  std::vector<double> z;  // grid lines, strictly increasing (m)
  std::vector<double> u;  // horizontal velocity (m/s)
  std::vector<double> w;  // vertical velocity (m/s)
  std::vector<double> k;  // turbulent kinetic energy (m^2/s^2)
  std::vector<double> surface;  // free-surface z per column (m)
  double gate_x = 0.0;  // gate plane abscissa (m)
  double a = 0.0;       // gate opening (m)

  std::size_t nx() const { return x.size(); }
  std::size_t nz() const { return z.size(); }
  std::size_t idx(std::size_t ix, std::size_t iz) const { return ix * nz() + iz; }
  bool wet(std::size_t ix, std::size_t iz) const {
    return z[iz] <= surface[ix] + 1e-12;
  }
  double depth(std::size_t ix) const { return surface[ix] - z.front(); }
};

// Reads the documented CSV pair: field rows `x,z,u,w,k[,eps]` (row-major by
// x then z) and the companion surface file `x,eta`. Malformed rows raise
// std::runtime_error naming the offending line.
FlowField load_flow_field(const std::string& field_csv,
                          const std::string& surface_csv, double gate_x = 0.0,
                          double a = 0.0);

// Canonical writer; save(load(f)) is byte-identical for files produced here.
void save_flow_field(const FlowField& field, const std::string& field_csv,
                     const std::string& surface_csv);

struct SynthJetSpec {
  double w = 1.0;        // bay width carried by the per-gate discharge (m)
  std::size_t nx = 121;
  std::size_t nz = 81;
  double upstream_len = 0.0;   // domain extent upstream of the gate (m); 0 = 2a
  double downstream_len = 0.0; // extent downstream (m); 0 = 6*h3
};

// Mass-consistent jet/recirculation fixture standing in for a CFD result:
// a jet contracting to c_c*a just downstream of the gate with a negative-u
// recirculating layer above it, TKE peaked in the shear layer, and the
// depth-integrated u equal to Q/w in every column.
FlowField synth_jet_field(double h1, double h3, double a, double c_c, double q,
                          const SynthJetSpec& spec = {});

}  // namespace sluiceops
