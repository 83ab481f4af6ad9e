#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "sluiceops/discharge.hpp"
#include "sluiceops/flow_analysis.hpp"

using namespace sluiceops;

namespace {

// Hand-built downstream field: forward flow below z_jet, return flow above,
// so the separation edge and the vena-contracta integrals are known exactly.
FlowField manual_field(double u0, double slope) {
  FlowField f;
  f.gate_x = 0.0;
  f.a = 1.0;
  f.x = {-1.0, 0.5, 1.0, 1.5};
  for (int j = 0; j <= 8; ++j) f.z.push_back(0.25 * j);  // 0 .. 2
  const std::size_t n = f.x.size() * f.z.size();
  f.u.assign(n, 0.0);
  f.w.assign(n, 0.0);
  f.k.assign(n, 0.0);
  f.surface.assign(f.x.size(), 2.0);
  for (std::size_t i = 0; i < f.x.size(); ++i) {
    for (std::size_t j = 0; j < f.z.size(); ++j) {
      const double z = f.z[j];
      f.u[f.idx(i, j)] = z <= 1.0 ? u0 + slope * z : -0.2;
    }
  }
  return f;
}

FlowField uniform_field(double u, double k, double depth) {
  FlowField f;
  f.gate_x = 0.0;
  f.a = 0.5;
  f.x = {0.0, 1.0, 2.0};
  for (int j = 0; j <= 8; ++j) f.z.push_back(depth * j / 8.0);
  const std::size_t n = f.x.size() * f.z.size();
  f.u.assign(n, u);
  f.w.assign(n, 0.0);
  f.k.assign(n, k);
  f.surface.assign(f.x.size(), depth);
  return f;
}

}  // namespace

TEST_CASE("contraction recovery from the synthetic jet") {
  const double h1 = 3.0, h3 = 2.5, a = 1.0, q = 90.0;
  SynthJetSpec spec;
  spec.w = 22.5;
  const double dz = std::max(h1, h3) / (spec.nz - 1);
  for (double c_c : {0.6, 0.75, 0.9}) {
    const FlowField f = synth_jet_field(h1, h3, a, c_c, q, spec);
    const double rec = contraction_from_field(f);
    CHECK(std::abs(rec * a - c_c * a) <= dz + 1e-12);  // within one grid cell
  }
}

TEST_CASE("grid refinement tightens the contraction recovery") {
  SynthJetSpec fine;
  fine.w = 22.5;
  fine.nx = 241;
  fine.nz = 161;
  const double dz_fine = 3.0 / (fine.nz - 1);
  const FlowField f = synth_jet_field(3.0, 2.5, 1.0, 0.75, 90.0, fine);
  CHECK(std::abs(contraction_from_field(f) - 0.75) <= dz_fine + 1e-12);
}

TEST_CASE("uncontracted flow raises the dedicated error") {
  const FlowField f = uniform_field(1.0, 0.0, 1.0);
  CHECK(separation_edge(f).no_contraction);
  CHECK_THROWS_AS(contraction_from_field(f), NoSolutionError);
}

TEST_CASE("vena velocity is exact for constant and linear profiles") {
  // Constant u below the jet edge.
  const FlowField fc = manual_field(1.3, 0.0);
  CHECK(vena_velocity(fc, 0.8) == doctest::Approx(1.3).epsilon(1e-12));
  // Linear u(z) = 1 + 0.5 z over the span [0, 0.8]: mean = 1 + 0.5*0.4.
  const FlowField fl = manual_field(1.0, 0.5);
  CHECK(vena_velocity(fl, 0.8) == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("Froude number and reduced velocity") {
  CHECK(froude(3.0, 2.0) == doctest::Approx(3.0 / std::sqrt(9.81 * 2.0)));
  CHECK(reduced_velocity(3.37, 5.0, 0.2) == doctest::Approx(3.37));
  CHECK(reduced_velocity(3.37, 2.0, 0.2) == doctest::Approx(8.425));
}

TEST_CASE("reduced-velocity bands cover the quoted ranges") {
  const double L = 0.2, f_min = 2.0, f_max = 5.0;
  {
    const double lo = reduced_velocity(3.37, f_max, L);
    const double hi = reduced_velocity(3.37, f_min, L);
    CHECK(std::abs(lo - 3.5) <= 0.2);
    CHECK(std::abs(hi - 8.5) <= 0.2);
  }
  {
    const double lo = reduced_velocity(2.54, f_max, L);
    const double hi = reduced_velocity(2.54, f_min, L);
    CHECK(std::abs(lo - 2.5) <= 0.4);
    CHECK(std::abs(hi - 6.0) <= 0.4);
  }
}

TEST_CASE("stability parameter hand example") {
  // U = 1 m/s, k = 0.04 m^2/s^2, alpha = 6, Delta = 1.65, d = 1 m:
  // Psi = (1 + 6*0.2)^2 / (1.65 * 9.81 * 1) = 0.299.
  const FlowField f = uniform_field(1.0, 0.04, 1.0);
  const StabilityProfile prof = psi_profile(f, 6.0, 1.65, -10.0, 10.0);
  REQUIRE(!prof.psi.empty());
  CHECK(std::abs(prof.psi_max - 0.299) <= 1e-3);
  for (double psi : prof.psi) CHECK(psi == doctest::Approx(prof.psi_max));
}

TEST_CASE("stability parameter grows with turbulence") {
  const FlowField lo = uniform_field(1.0, 0.04, 1.0);
  const FlowField hi = uniform_field(1.0, 0.09, 1.0);
  const double p_lo = psi_profile(lo, 6.0, 1.65, -10.0, 10.0).psi_max;
  const double p_hi = psi_profile(hi, 6.0, 1.65, -10.0, 10.0).psi_max;
  CHECK(p_hi > p_lo);
  // With alpha = 0 the turbulence level drops out.
  const double q_lo = psi_profile(lo, 0.0, 1.65, -10.0, 10.0).psi_max;
  const double q_hi = psi_profile(hi, 0.0, 1.65, -10.0, 10.0).psi_max;
  CHECK(q_lo == doctest::Approx(q_hi));
}

TEST_CASE("natural frequency and measured override") {
  GateDynamics dyn{1.0e6, 5.0e5, 2.0e4, 1.0e4, 0.2, std::nullopt};
  CHECK(natural_frequency(dyn) ==
        doctest::Approx(std::sqrt(1.5e6 / 3.0e4) / (2.0 * M_PI)));
  dyn.f_gate = 2.5;
  CHECK(natural_frequency(dyn) == 2.5);
  GateDynamics bad;
  CHECK_THROWS_AS(natural_frequency(bad), std::domain_error);
}

TEST_CASE("response-curve interpolation") {
  ResponseCurve curve{"small_opening",
                      {{2.0, 0.0}, {4.0, 0.5}, {6.0, 1.0}, {8.0, 0.0}}};
  CHECK(amplitude_lookup(curve, 3.0) == doctest::Approx(0.25));
  CHECK(amplitude_lookup(curve, 6.0) == doctest::Approx(1.0));
  CHECK(amplitude_lookup(curve, 1.0) == 0.0);   // outside: no resonance
  CHECK(amplitude_lookup(curve, 10.0) == 0.0);
}

TEST_CASE("response-curve loader validates its input") {
  const std::string path = "/tmp/curve_test.csv";
  std::ofstream(path) << "vr,relative_amplitude\n2.0,0.0\n4.0,0.5\n6.0,0.2\n";
  const ResponseCurve curve = load_response_curve(path, "test");
  CHECK(curve.samples.size() == 3);
  CHECK(curve.label == "test");

  std::ofstream(path) << "vr,relative_amplitude\n2.0,0.0\n1.0,0.5\n";
  CHECK_THROWS_AS(load_response_curve(path), std::runtime_error);
  std::ofstream(path) << "vr,relative_amplitude\n2.0,1.5\n";
  CHECK_THROWS_AS(load_response_curve(path), std::runtime_error);
  std::remove(path.c_str());
}
