#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pdm/errors.hpp"
#include "pdm/oracle.hpp"
#include "pdm/pct.hpp"

using namespace pdm;
using namespace pdm::pct;

namespace {

const refpot::ReferencePotential kRm = refpot::RosenMorseParams{6, 0, 1, 1};
const refpot::ReferencePotential kTilted = refpot::RosenMorseParams{10, 1.5, 1.2, 2.0};
const refpot::ReferencePotential kScarf = refpot::ScarfParams{6, 0, 1, 1};

std::vector<double> xs() {
  std::vector<double> out;
  for (double x = -9.0; x <= 9.0; x += 0.37) {
    out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("context construction") {
  const PctContext id = build_context(mass::ConstantMass{}, 0.4);
  CHECK(id.mapping(2.5) == 2.5);
  const PctContext asinh_ctx = build_context(mass::RationalSingle{1, 1}, -0.25);
  CHECK(asinh_ctx.mapping(1.5) == doctest::Approx(std::asinh(1.5)).epsilon(1e-15));
  const PctContext quad = build_context(mass::RationalSingle{1, 1}, 0.3);
  CHECK(quad.mapping.source() == mass::MappingSource::quadrature);
  CHECK(quad.mapping.derivative(0.5) == doctest::Approx(std::pow(1.25, -1.6)));
  CHECK(quad.mapping.inverse(quad.mapping(0.8)) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK_THROWS_AS(build_context(mass::ConstantMass{}, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(build_context(mass::ConstantMass{}, 0.0, -1.0), DomainError);
}

TEST_CASE("constant mass reproduces the reference problem exactly") {
  for (double alpha : {-0.25, 0.0, 0.7}) {
    const PctContext ctx = build_context(mass::ConstantMass{}, alpha);
    for (const auto& ref : {kRm, kTilted, kScarf}) {
      for (int n = 0; n < refpot::num_bound_states(ref); ++n) {
        const TargetPotential vt = target_potential(ctx, ref, n);
        const auto psi = transform_wavefunction(ctx, refpot::wavefunction(ref, n));
        const auto phi = refpot::wavefunction(ref, n);
        for (double x : xs()) {
          CHECK(vt(x) == refpot::potential(ref, x));
          CHECK(psi(x) == phi(x));
        }
        CHECK(transform_energy(ctx, ref, n) == refpot::energy(ref, n));
      }
    }
  }
}

TEST_CASE("ordering correction of the single rational profile") {
  for (double kappa : {0.5, 1.0}) {
    for (double alpha : {-0.25, 0.0, 0.3, 1.0}) {
      const double a = 1.3;
      const double q = 0.8;
      const PctContext ctx = build_context(mass::RationalSingle{a, q}, alpha, kappa);
      CHECK(ordering_correction(ctx, 0.0) ==
            doctest::Approx(2.0 * kappa * alpha / (a * a)).scale(1.0));
      for (double x : xs()) {
        const double expected =
            2.0 * kappa * alpha / (a * a) * (1.0 + 2.0 * alpha * x * x / (q + x * x));
        CHECK(ordering_correction(ctx, x) == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
      }
    }
  }
}

TEST_CASE("alpha = -1/4 target potentials do not depend on n") {
  for (const mass::MassProfile p :
       {mass::MassProfile(mass::RationalSingle{1, 1}), mass::MassProfile(mass::RationalSquared{1, 1}),
        mass::MassProfile(mass::Exponential{0.3})}) {
    const PctContext ctx = build_context(p, -0.25);
    const TargetPotential v0 = target_potential(ctx, kRm, 0);
    const TargetPotential v1 = target_potential(ctx, kRm, 1);
    for (double x : xs()) {
      CHECK(std::abs(v0(x) - v1(x)) <= 1e-12 * std::max(1.0, std::abs(v0(x))));
      // leading term is V(f(x)) itself
      CHECK(v0(x) - ordering_correction(ctx, x) ==
            doctest::Approx(refpot::potential(kRm, ctx.mapping(x))).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("target potential pointwise values") {
  const PctContext ctx = build_context(mass::RationalSingle{1, 1}, 0.0);
  CHECK(target_potential(ctx, kRm, 0)(0.0) == doctest::Approx(-6.0).epsilon(1e-15));
  CHECK(target_potential(ctx, kRm, 1)(0.0) == doctest::Approx(-6.0).epsilon(1e-15));
  // m(1) = 1/2, f(1) = pi/4
  const double expected = 0.5 * refpot::potential(kRm, std::atan(1.0)) + 0.5 * -4.0;
  CHECK(target_potential(ctx, kRm, 0)(1.0) == doctest::Approx(expected).epsilon(1e-14));
  CHECK_THROWS_AS(target_potential(ctx, kRm, 2), IndexError);
}

TEST_CASE("transformed wavefunctions") {
  const PctContext ctx = build_context(mass::RationalSingle{1, 1}, -0.25);
  const auto psi0 = transform_wavefunction(ctx, refpot::wavefunction(kRm, 0));
  // psi0 = (1 + x^2)^(-1/4) cosh(asinh x)^(-2) = (1 + x^2)^(-5/4)
  CHECK(psi0(0.0) / psi0(1.0) == doctest::Approx(std::pow(2.0, 1.25)).epsilon(1e-13));

  for (const mass::MassProfile p :
       {mass::MassProfile(mass::RationalSingle{1, 1}), mass::MassProfile(mass::RationalSquared{1.4, 2}),
        mass::MassProfile(mass::Exponential{0.2})}) {
    for (double alpha : {-0.25, -0.5}) {
      const PctContext c = build_context(p, alpha);
      for (int n = 0; n < refpot::num_bound_states(kTilted); ++n) {
        const auto psi = transform_wavefunction(c, refpot::wavefunction(kTilted, n));
        const auto samples = oracle::sample(psi, {-20, 20, 4001});
        CHECK(oracle::count_nodes(samples) == n);
      }
    }
  }
}

TEST_CASE("transformed energies") {
  for (double alpha : {-0.25, 0.0, 0.5}) {
    const PctContext ctx = build_context(mass::RationalSingle{1, 1}, alpha);
    CHECK(transform_energy(ctx, kRm, 0) == doctest::Approx(-4.0));
    CHECK(transform_energy(ctx, kRm, 1) == doctest::Approx(-1.0));
    CHECK(transform_energy(ctx, kScarf, 0) == doctest::Approx(-4.0));
  }
}

TEST_CASE("quadrature and closed-form mappings give the same target") {
  for (double alpha : {-0.25, 0.0}) {
    const PctContext closed = build_context(mass::RationalSingle{1, 1}, alpha);
    const PctContext quad =
        build_context(mass::RationalSingle{1, 1}, alpha, 1.0, MappingPolicy::force_quadrature);
    REQUIRE(quad.mapping.source() == mass::MappingSource::quadrature);
    const TargetPotential a = target_potential(closed, kRm, 0);
    const TargetPotential b = target_potential(quad, kRm, 0);
    for (double x : xs()) {
      CHECK(a(x) == doctest::Approx(b(x)).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("transformed wavefunction satisfies the PDM equation") {
  const mass::RationalSingle profile{1, 1};
  const PctContext ctx = build_context(profile, -0.25);
  const oracle::Grid g{-1000, 1000, 100000};
  for (int n = 0; n < 2; ++n) {
    const TargetPotential vt = target_potential(ctx, kRm, n);
    const auto op = oracle::FdOperator::pdm(g, [&vt](double x) { return vt(x); }, profile);
    const auto psi = oracle::sample(transform_wavefunction(ctx, refpot::wavefunction(kRm, n)), g);
    CHECK(oracle::residual_norm(op, psi, transform_energy(ctx, kRm, n)) < 1e-3);
  }
}
