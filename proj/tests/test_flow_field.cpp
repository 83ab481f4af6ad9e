#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "sluiceops/flow_field.hpp"

using namespace sluiceops;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

// Trapezoidal depth integral of u in one column, the same quadrature the
// analysis module uses.
double column_flux(const FlowField& f, std::size_t ix) {
  double integral = 0.0;
  const double eta = f.surface[ix];
  std::size_t j = 1;
  for (; j < f.nz() && f.z[j] <= eta + 1e-12; ++j) {
    integral += 0.5 * (f.u[f.idx(ix, j - 1)] + f.u[f.idx(ix, j)]) *
                (f.z[j] - f.z[j - 1]);
  }
  if (f.z[j - 1] < eta) integral += f.u[f.idx(ix, j - 1)] * (eta - f.z[j - 1]);
  return integral;
}

}  // namespace

TEST_CASE("synthetic jet field closes the mass balance in every column") {
  const double h1 = 3.0, h3 = 2.5, a = 1.0, c_c = 0.62, q = 90.0;
  SynthJetSpec spec;
  spec.w = 22.5;
  const FlowField f = synth_jet_field(h1, h3, a, c_c, q, spec);
  const double qw = q / spec.w;
  for (std::size_t i = 0; i < f.nx(); ++i) {
    CHECK(column_flux(f, i) == doctest::Approx(qw).epsilon(0.01));
  }
}

TEST_CASE("synthetic jet field carries the requested geometry") {
  const FlowField f = synth_jet_field(3.0, 2.5, 1.0, 0.62, 90.0);
  CHECK(f.a == 1.0);
  CHECK(f.gate_x == 0.0);
  CHECK(f.x.front() < 0.0);
  CHECK(f.x.back() > 0.0);
  // Upstream columns sit at the upstream depth, downstream at the exit depth.
  CHECK(f.surface.front() == doctest::Approx(3.0));
  CHECK(f.surface.back() == doctest::Approx(2.5));
  CHECK_THROWS_AS(synth_jet_field(3.0, 0.5, 1.0, 0.62, 90.0),
                  std::domain_error);  // h3 below the contracted jet
}

TEST_CASE("save/load round trip is byte-identical") {
  const FlowField f = synth_jet_field(3.0, 2.5, 1.0, 0.62, 90.0);
  const std::string f1 = "/tmp/ff_a.csv", s1 = "/tmp/fs_a.csv";
  const std::string f2 = "/tmp/ff_b.csv", s2 = "/tmp/fs_b.csv";
  save_flow_field(f, f1, s1);
  const FlowField g = load_flow_field(f1, s1, f.gate_x, f.a);
  save_flow_field(g, f2, s2);
  CHECK(slurp(f1) == slurp(f2));
  CHECK(slurp(s1) == slurp(s2));
  CHECK(g.nx() == f.nx());
  CHECK(g.nz() == f.nz());
  std::remove(f1.c_str());
  std::remove(s1.c_str());
  std::remove(f2.c_str());
  std::remove(s2.c_str());
}

TEST_CASE("loader names the offending line") {
  const std::string fp = "/tmp/ff_bad.csv", sp = "/tmp/fs_bad.csv";
  write_file(fp, "x,z,u,w,k\n0,0,1,0,0\n0,1,oops,0,0\n");
  write_file(sp, "x,eta\n0,1\n");
  try {
    load_flow_field(fp, sp);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  write_file(fp, "x,z,u,w\n");
  CHECK_THROWS_WITH_AS(load_flow_field(fp, sp),
                       doctest::Contains("malformed header"),
                       std::runtime_error);

  // Negative turbulent kinetic energy is rejected.
  write_file(fp, "x,z,u,w,k\n0,0,1,0,-0.5\n");
  CHECK_THROWS_AS(load_flow_field(fp, sp), std::runtime_error);
  std::remove(fp.c_str());
  std::remove(sp.c_str());
}

TEST_CASE("loader checks grid consistency") {
  const std::string fp = "/tmp/ff_grid.csv", sp = "/tmp/fs_grid.csv";
  // 2 x-lines but 3 rows: incomplete grid.
  write_file(fp, "x,z,u,w,k\n0,0,1,0,0\n0,1,1,0,0\n1,0,1,0,0\n");
  write_file(sp, "x,eta\n0,1\n1,1\n");
  CHECK_THROWS_AS(load_flow_field(fp, sp), std::runtime_error);

  // Surface column count must match the field.
  write_file(fp, "x,z,u,w,k\n0,0,1,0,0\n0,1,1,0,0\n1,0,1,0,0\n1,1,1,0,0\n");
  write_file(sp, "x,eta\n0,1\n");
  CHECK_THROWS_AS(load_flow_field(fp, sp), std::runtime_error);
  std::remove(fp.c_str());
  std::remove(sp.c_str());
}
