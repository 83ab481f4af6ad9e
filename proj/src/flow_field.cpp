#include "sluiceops/flow_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sluiceops {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_num(const std::string& s, const std::string& file, int line_no) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() && s.find_first_not_of(" \t\r", pos) != std::string::npos) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(file + ": line " + std::to_string(line_no) +
                             ": bad numeric value '" + s + "'");
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_increasing(const std::vector<double>& v, const std::string& what) {
  for (size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) {
      throw std::runtime_error(what + " coordinates not strictly increasing");
    }
  }
}

}  // namespace

FlowField load_flow_field(const std::string& field_csv,
                          const std::string& surface_csv, double gate_x,
                          double a) {
  std::ifstream in(field_csv);
  if (!in) throw std::runtime_error("cannot open " + field_csv);
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw std::runtime_error(field_csv + ": empty file");
  {
    auto cells = split_csv(line);
    if (cells.size() < 5 || cells[0] != "x" || cells[1] != "z" ||
        cells[2] != "u" || cells[3] != "w" || cells[4] != "k") {
      throw std::runtime_error(field_csv + ": malformed header, expected x,z,u,w,k");
    }
  }

  struct Row { double x, z, u, w, k; };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() < 5) {
      throw std::runtime_error(field_csv + ": line " + std::to_string(line_no) +
                               ": expected at least 5 columns");
    }
    Row r{parse_num(cells[0], field_csv, line_no),
          parse_num(cells[1], field_csv, line_no),
          parse_num(cells[2], field_csv, line_no),
          parse_num(cells[3], field_csv, line_no),
          parse_num(cells[4], field_csv, line_no)};
    if (r.k < 0.0) {
      throw std::runtime_error(field_csv + ": line " + std::to_string(line_no) +
                               ": negative turbulent kinetic energy");
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw std::runtime_error(field_csv + ": no data rows");

  FlowField f;
  f.gate_x = gate_x;
  f.a = a;
  for (const auto& r : rows) {
    if (f.x.empty() || r.x != f.x.back()) f.x.push_back(r.x);
  }
  const size_t nx = f.x.size();
  if (rows.size() % nx != 0) {
    throw std::runtime_error(field_csv + ": incomplete grid (" +
                             std::to_string(rows.size()) + " rows, " +
                             std::to_string(nx) + " x-lines)");
  }
  const size_t nz = rows.size() / nx;
  f.z.reserve(nz);
  for (size_t j = 0; j < nz; ++j) f.z.push_back(rows[j].z);
  require_increasing(f.x, field_csv + ": x");
  require_increasing(f.z, field_csv + ": z");

  f.u.resize(rows.size());
  f.w.resize(rows.size());
  f.k.resize(rows.size());
  for (size_t i = 0; i < nx; ++i) {
    for (size_t j = 0; j < nz; ++j) {
      const Row& r = rows[i * nz + j];
      if (r.x != f.x[i] || r.z != f.z[j]) {
        throw std::runtime_error(field_csv + ": line " +
                                 std::to_string(i * nz + j + 2) +
                                 ": grid not row-major by x then z");
      }
      f.u[f.idx(i, j)] = r.u;
      f.w[f.idx(i, j)] = r.w;
      f.k[f.idx(i, j)] = r.k;
    }
  }

  std::ifstream sin(surface_csv);
  if (!sin) throw std::runtime_error("cannot open " + surface_csv);
  line_no = 1;
  if (!std::getline(sin, line) || split_csv(line).size() < 2) {
    throw std::runtime_error(surface_csv + ": malformed header, expected x,eta");
  }
  while (std::getline(sin, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() < 2) {
      throw std::runtime_error(surface_csv + ": line " +
                               std::to_string(line_no) + ": expected x,eta");
    }
    f.surface.push_back(parse_num(cells[1], surface_csv, line_no));
  }
  if (f.surface.size() != nx) {
    throw std::runtime_error(surface_csv + ": surface column count " +
                             std::to_string(f.surface.size()) +
                             " does not match field x-lines " +
                             std::to_string(nx));
  }
  for (double eta : f.surface) {
    if (eta < f.z.front() || eta > f.z.back() + 1e-9) {
      throw std::runtime_error(surface_csv + ": surface elevation outside z range");
    }
  }
  return f;
}

void save_flow_field(const FlowField& field, const std::string& field_csv,
                     const std::string& surface_csv) {
  std::ofstream out(field_csv);
  if (!out) throw std::runtime_error("cannot write " + field_csv);
  out << "x,z,u,w,k\n";
  for (size_t i = 0; i < field.nx(); ++i) {
    for (size_t j = 0; j < field.nz(); ++j) {
      const size_t n = field.idx(i, j);
      out << fmt(field.x[i]) << ',' << fmt(field.z[j]) << ','
          << fmt(field.u[n]) << ',' << fmt(field.w[n]) << ','
          << fmt(field.k[n]) << '\n';
    }
  }
  std::ofstream sout(surface_csv);
  if (!sout) throw std::runtime_error("cannot write " + surface_csv);
  sout << "x,eta\n";
  for (size_t i = 0; i < field.nx(); ++i) {
    sout << fmt(field.x[i]) << ',' << fmt(field.surface[i]) << '\n';
  }
}

FlowField synth_jet_field(double h1, double h3, double a, double c_c, double q,
                          const SynthJetSpec& spec) {
  if (!(q > 0.0)) throw std::domain_error("discharge must be positive");
  if (!(a > 0.0) || !(c_c > 0.0) || c_c > 1.0) {
    throw std::domain_error("need a > 0 and C_c in (0, 1]");
  }
  if (!(h3 > c_c * a)) {
    throw std::domain_error("downstream depth must exceed the contracted jet");
  }
  if (!(h1 > a)) throw std::domain_error("gate must be below the upstream surface");
  if (spec.nx < 8 || spec.nz < 8) throw std::domain_error("grid too coarse");

  const double qw = q / spec.w;  // discharge per unit width
  const double up_len = spec.upstream_len > 0.0 ? spec.upstream_len : 2.0 * a;
  const double down_len =
      spec.downstream_len > 0.0 ? spec.downstream_len : 6.0 * h3;

  FlowField f;
  f.gate_x = 0.0;
  f.a = a;
  const double z_max = std::max(h1, h3);
  f.x.resize(spec.nx);
  f.z.resize(spec.nz);
  const double dx = (up_len + down_len) / (spec.nx - 1);
  const double dz = z_max / (spec.nz - 1);
  for (size_t i = 0; i < spec.nx; ++i) f.x[i] = -up_len + i * dx;
  for (size_t j = 0; j < spec.nz; ++j) f.z[j] = j * dz;

  // Vena contracta one opening downstream of the gate, snapped to the grid
  // so the thickness minimum is sampled exactly.
  double x_vc = a;
  {
    double best = 1e300;
    for (double xi : f.x) {
      if (xi > 0.0 && std::abs(xi - a) < std::abs(best - a)) best = xi;
    }
    if (best < 1e300) x_vc = best;
  }
  const double x_reattach = 5.0 * h3;

  const size_t n = spec.nx * spec.nz;
  f.u.assign(n, 0.0);
  f.w.assign(n, 0.0);
  f.k.assign(n, 1e-6);
  f.surface.resize(spec.nx);

  for (size_t i = 0; i < spec.nx; ++i) {
    const double x = f.x[i];
    if (x < 0.0) {
      f.surface[i] = h1;
      const double u_up = qw / h1;
      for (size_t j = 0; j < spec.nz; ++j) {
        if (f.z[j] <= h1 + 1e-12) f.u[f.idx(i, j)] = u_up;
      }
      continue;
    }
    f.surface[i] = h3;
    // Jet thickness: contracts from a to c_c*a at the vena contracta, then
    // grows linearly until reattachment.
    double delta;
    if (x <= x_vc) {
      delta = a - (a - c_c * a) * (x / x_vc);
    } else if (x < x_reattach) {
      delta = c_c * a + (0.95 * h3 - c_c * a) * (x - x_vc) / (x_reattach - x_vc);
    } else {
      delta = h3;  // reattached, uniform positive flow
    }
    const double d = h3;
    delta = std::min(delta, d);
    // Snap the jet edge to a grid node; with the sign change landing exactly
    // on a node, the edge detector recovers delta to within half a cell and
    // the nodal trapezoid flux can be made exact.
    size_t jd = static_cast<size_t>(std::llround(delta / dz));
    jd = std::clamp<size_t>(jd, 1, spec.nz - 2);
    delta = f.z[jd];
    if (delta >= 0.97 * d) {
      const double u_uni = qw / d;
      for (size_t j = 0; j < spec.nz; ++j) {
        if (f.z[j] <= d + 1e-12) f.u[f.idx(i, j)] = u_uni;
      }
      continue;
    }
    // Profile: u_jet up to the node below the edge, 0 at the edge node,
    // -u_back above. Trapezoidal integration of this piecewise-linear shape
    // gives u_jet*(delta - dz/2) - u_back*(d - delta - dz/2); solve u_jet so
    // that it equals qw exactly.
    const double beta = std::min(0.15, 0.4 * delta / (d - delta));
    const double denom = (delta - 0.5 * dz) - beta * (d - delta - 0.5 * dz);
    if (!(denom > 0.0)) throw std::domain_error("jet too thin for this grid");
    const double u_jet = qw / denom;
    const double u_back = beta * u_jet;
    const double k_peak = 0.04 * u_jet * u_jet;
    const double sigma = std::max(0.3 * c_c * a, 2.0 * dz);
    for (size_t j = 0; j < spec.nz; ++j) {
      const double z = f.z[j];
      if (z > d + 1e-12) continue;
      double u;
      if (j < jd) {
        u = u_jet;
      } else if (j == jd) {
        u = 0.0;
      } else {
        u = -u_back;
      }
      f.u[f.idx(i, j)] = u;
      const double r = (z - delta) / sigma;
      f.k[f.idx(i, j)] = 1e-6 + k_peak * std::exp(-r * r);
    }
  }
  return f;
}

}  // namespace sluiceops
