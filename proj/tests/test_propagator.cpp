#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pwf/pwf.hpp"
#include "test_util.hpp"

using namespace pwf;

namespace {
constexpr double pi = std::numbers::pi;

double relation_error(const HelicityTriad& t) {
  // |khat x e_pm +/- i e_pm|
  const cplx i(0, 1);
  const auto cp = vec::cross(t.khat, t.e_plus);
  const auto cm = vec::cross(t.khat, t.e_minus);
  return std::max(vec::norm(CVec3{cp[0] + i * t.e_plus[0], cp[1] + i * t.e_plus[1], cp[2] + i * t.e_plus[2]}),
                  vec::norm(CVec3{cm[0] - i * t.e_minus[0], cm[1] - i * t.e_minus[1], cm[2] - i * t.e_minus[2]}));
}

double orthonormality_error(const HelicityTriad& t) {
  const CVec3 kc{t.khat[0], t.khat[1], t.khat[2]};
  return std::max({std::abs(vec::hdot(t.e_plus, t.e_plus) - 1.0), std::abs(vec::hdot(t.e_minus, t.e_minus) - 1.0),
                   std::abs(vec::hdot(t.e_plus, t.e_minus)), std::abs(vec::hdot(kc, t.e_plus)),
                   std::abs(vec::hdot(kc, t.e_minus))});
}
}  // namespace

TEST(HelicityBasis, ZAxisGivesCircularPolarizations) {
  const auto t = helicity_triad({0, 0, 3.0});
  ASSERT_TRUE(t);
  const double r = 1.0 / std::sqrt(2.0);
  const CVec3 canon_plus{cplx(r), cplx(0, r), cplx(0)};
  const CVec3 canon_minus{cplx(r), cplx(0, -r), cplx(0)};
  // Equal to the canonical vectors up to a unit-modulus phase.
  EXPECT_NEAR(std::abs(vec::hdot(canon_plus, t->e_plus)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(vec::hdot(canon_minus, t->e_minus)), 1.0, 1e-15);
  EXPECT_LT(relation_error(*t), 1e-15);
}

TEST(HelicityBasis, AntipodeHasNoSignError) {
  const auto t = helicity_triad({0, 0, -1.0});
  ASSERT_TRUE(t);
  EXPECT_LT(relation_error(*t), 1e-15);
  EXPECT_LT(orthonormality_error(*t), 1e-15);
  // For khat = -z the + helicity vector is the (x - i y)/sqrt(2) circular state.
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(vec::hdot(CVec3{cplx(r), cplx(0, -r), cplx(0)}, t->e_plus)), 1.0, 1e-15);
}

TEST(HelicityBasis, ZeroModeAbsent) {
  EXPECT_FALSE(helicity_triad({0, 0, 0}));
  const auto b = helicity_basis(make_grid({4, 4, 4}, {1, 1, 1}));
  EXPECT_FALSE(b.present(0));
  EXPECT_TRUE(b.present(1));
}

TEST(HelicityBasis, AllModesSatisfyInvariants) {
  const auto g = make_grid({8, 6, 10}, {1.0, 2.0, 0.7});
  const auto b = helicity_basis(g);
  double rel = 0.0, orth = 0.0;
  for (std::size_t s = 1; s < g.size(); ++s) {
    ASSERT_TRUE(b.present(s));
    rel = std::max(rel, relation_error(b[s]));
    orth = std::max(orth, orthonormality_error(b[s]));
  }
  EXPECT_LT(rel, 1e-14);
  EXPECT_LT(orth, 1e-14);
}

TEST(EvolveSpectral, SingleModePlaneWaveDispersion) {
  const double L = 2 * pi, c = 1.7;
  const auto g = make_grid({8, 8, 8}, {L, L, L});
  const Units u(1.0, c);
  const Vec3 k{0, 0, 2};
  const auto amp = single_mode(g, u, k, Polarization::helical(Helicity::positive));
  const auto psi0 = synthesize_onshell(amp, 0.0, WeightChoice::unit);
  const double t = 0.37;
  const auto psi_t = evolve_spectral(psi0, t);
  EXPECT_DOUBLE_EQ(psi_t.time, t);
  const cplx phase = std::polar(1.0, -c * 2.0 * t);
  double err = 0.0;
  for (std::size_t i = 0; i < psi0.data.size(); ++i) err = std::max(err, std::abs(psi_t.data[i] - phase * psi0.data[i]));
  EXPECT_LT(err, 1e-14);
}

TEST(EvolveSpectral, ZeroTimeIsExactIdentity) {
  const auto g = make_grid({6, 6, 6}, {1, 1, 1});
  const auto psi = pwf::testing::random_field(g, 4);
  const auto out = evolve_spectral(psi, 0.0);
  EXPECT_EQ(out.data, psi.data);
  EXPECT_EQ(out.time, psi.time);
}

TEST(EvolveSpectral, RejectsMomentumSpaceInput) {
  const auto g = make_grid({4, 4, 4}, {1, 1, 1});
  EXPECT_THROW(evolve_spectral(ComplexVectorField(g, Space::momentum), 1.0), ValidationError);
}

TEST(EvolveSpectral, ForwardThenBackwardIsIdentity) {
  const auto g = make_grid({8, 8, 8}, {1, 1, 1});
  for (auto h : {Helicity::positive, Helicity::negative}) {
    const auto psi = pwf::testing::random_field(g, 9, Space::coordinate, h);
    const auto back = evolve_spectral(evolve_spectral(psi, 2.3), -2.3);
    EXPECT_LT(max_difference(back, psi) / max_magnitude(psi), 1e-12);
    EXPECT_NEAR(back.time, psi.time, 1e-15);
  }
}

TEST(EvolveSpectral, LongitudinalPartIsFrozen) {
  const auto g = make_grid({8, 8, 8}, {1, 1, 1});
  const auto psi_k = pwf::testing::random_field(g, 12, Space::momentum);
  const auto lon = transverse_project(psi_k).longitudinal;
  const auto psi = to_coordinate(lon);
  const auto out = evolve_spectral(psi, 5.0);
  EXPECT_LT(max_difference(out, psi) / max_magnitude(psi), 1e-13);
}

TEST(EvolveSpectral, PerModeMagnitudeAndTransversalityPreserved) {
  const auto g = make_grid({8, 8, 8}, {1, 1, 1});
  const auto psi = pwf::testing::random_transverse_field(g, 31, 2 * pi * 3.0);
  const auto h0 = to_momentum(psi);
  for (double t : {0.1, 1.0, 13.7}) {
    const auto ht = to_momentum(evolve_spectral(psi, t));
    double drift = 0.0;
    for (std::size_t s = 0; s < g.size(); ++s) drift = std::max(drift, std::abs(vec::norm(ht.at(s)) - vec::norm(h0.at(s))));
    EXPECT_LT(drift / max_magnitude(h0), 1e-14) << "t=" << t;
    EXPECT_LT(transversality_residual(ht), 1e-13);
  }
}

TEST(Energy, ZeroAndConstantFields) {
  const auto g = make_grid({4, 4, 4}, {1, 1, 1});
  ComplexVectorField psi(g, Space::coordinate);
  EXPECT_EQ(energy(psi), 0.0);
  for (std::size_t s = 0; s < g.size(); ++s) psi.set(s, {cplx(0.6), cplx(0, 0.8), cplx(0)});
  EXPECT_NEAR(energy(psi), 1.0, 1e-15);
}

TEST(Energy, ConservedUnderSpectralEvolution) {
  const auto g = make_grid({8, 8, 8}, {2, 2, 2});
  const auto psi = pwf::testing::random_transverse_field(g, 41, 2 * pi * 1.2);
  const double e0 = energy(psi);
  for (double t : {-3.0, 0.5, 7.25}) EXPECT_LT(std::abs(energy(evolve_spectral(psi, t)) - e0) / e0, 1e-13);
}

TEST(Energy, EqualsHalfSumOfSquaresOfSplitFields) {
  const auto g = make_grid({6, 8, 4}, {1, 2, 3});
  for (auto h : {Helicity::positive, Helicity::negative}) {
    const auto psi = pwf::testing::random_field(g, 77, Space::coordinate, h);
    const double e = energy(psi);
    EXPECT_LT(std::abs(e - field_energy(split_real_imag(psi))) / e, 1e-13);
  }
}

TEST(MaxwellReal, UniformStaticFieldsUnchanged) {
  const auto g = make_grid({4, 4, 4}, {1, 1, 1});
  RealFieldPair f(g);
  for (std::size_t s = 0; s < g.size(); ++s) {
    f.e[s] = 1.5;
    f.b[2 * g.size() + s] = -0.25;
  }
  StepperConfig cfg;
  cfg.dt = 0.01;
  const auto out = evolve_maxwell_real(f, 0.5, cfg);
  EXPECT_LT(pwf::testing::max_abs_diff(out.e, f.e), 1e-14);
  EXPECT_LT(pwf::testing::max_abs_diff(out.b, f.b), 1e-14);
  EXPECT_DOUBLE_EQ(out.time, 0.5);
}

TEST(MaxwellReal, RejectsNonPositiveDt) {
  const auto g = make_grid({4, 4, 4}, {1, 1, 1});
  StepperConfig cfg;
  cfg.dt = 0.0;
  EXPECT_THROW(evolve_maxwell_real(RealFieldPair(g), 1.0, cfg), ValidationError);
  cfg.dt = -1e-3;
  EXPECT_THROW(evolve_maxwell_real(RealFieldPair(g), 1.0, cfg), ValidationError);
}

namespace {
// E = xhat cos(kz) cos(ckt), B = yhat sin(kz) sin(ckt): the closed-form standing wave.
double standing_wave_error(double dt) {
  const double L = 2 * pi, kz = 3.0, c = 1.0, t = 1.0;
  const auto g = make_grid({4, 4, 16}, {L, L, L});
  RealFieldPair f(g);
  for_each_site(g, [&](std::size_t s, std::size_t, std::size_t, std::size_t k) {
    f.e[s] = std::cos(kz * g.coordinate(2, k));
  });
  StepperConfig cfg;
  cfg.dt = dt;
  const auto out = evolve_maxwell_real(f, t, cfg);
  double err = 0.0;
  for_each_site(g, [&](std::size_t s, std::size_t, std::size_t, std::size_t k) {
    const double z = g.coordinate(2, k);
    err = std::max(err, std::abs(out.e[s] - std::cos(kz * z) * std::cos(c * kz * t)));
    err = std::max(err, std::abs(out.b[g.size() + s] - std::sin(kz * z) * std::sin(c * kz * t)));
  });
  return err;
}
}  // namespace

TEST(MaxwellReal, StandingWaveFourthOrderConvergence) {
  const double e1 = standing_wave_error(0.02);
  const double e2 = standing_wave_error(0.01);
  EXPECT_LT(e1, 1e-5);
  EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.2);
}

TEST(MaxwellReal, LongitudinalInputIsProjectedWithWarning) {
  const double L = 2 * pi;
  const auto g = make_grid({8, 8, 8}, {L, L, L});
  RealFieldPair f(g);
  // E = zhat cos(z) is purely longitudinal.
  for_each_site(g, [&](std::size_t s, std::size_t, std::size_t, std::size_t k) {
    f.e[2 * g.size() + s] = std::cos(g.coordinate(2, k));
  });
  std::vector<std::string> warnings;
  StepperConfig cfg;
  cfg.dt = 0.05;
  cfg.warn = [&](std::string_view m) { warnings.emplace_back(m); };
  const auto out = evolve_maxwell_real(f, 0.1, cfg);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("longitudinal"), std::string::npos);
  double m = 0.0;
  for (double v : out.e) m = std::max(m, std::abs(v));
  EXPECT_LT(m, 1e-14);
}

TEST(MaxwellReal, AgreesWithSpectralEvolutionSmallGrid) {
  const double L = 2 * pi;
  const auto g = make_grid({16, 16, 16}, {L, L, L});
  const auto amp = gaussian_wavepacket(g, Units{}, {0, 0, 4}, 1.0, Polarization::linear({1, 0, 0}));
  const auto psi = synthesize_onshell(amp, 0.0, WeightChoice::sqrt_energy);
  const auto spectral = split_real_imag(evolve_spectral(psi, 0.5));
  StepperConfig cfg;
  cfg.dt = 1e-3;
  const auto rk4 = evolve_maxwell_real(split_real_imag(psi), 0.5, cfg);
  EXPECT_LT(max_relative_deviation(spectral, rk4), 1e-6);
}

TEST(HelicityRule, BothHelicitiesReproduceTheSameFields) {
  const auto g = make_grid({8, 8, 8}, {1, 1, 1});
  const auto fields = split_real_imag(pwf::testing::random_transverse_field(g, 55, 2 * pi * 2.5));
  const auto plus = split_real_imag(evolve_spectral(riemann_silberstein(fields, Helicity::positive), 0.8));
  const auto minus = split_real_imag(evolve_spectral(riemann_silberstein(fields, Helicity::negative), 0.8));
  EXPECT_LT(max_relative_deviation(plus, minus), 1e-12);
  // The two wave functions are pointwise complex conjugates.
  const auto psi_p = riemann_silberstein(plus, Helicity::positive);
  const auto psi_m = riemann_silberstein(minus, Helicity::negative);
  double err = 0.0;
  for (std::size_t i = 0; i < psi_p.data.size(); ++i) err = std::max(err, std::abs(psi_p.data[i] - std::conj(psi_m.data[i])));
  EXPECT_LT(err, 1e-12);
}
