#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "pdm/errors.hpp"
#include "pdm/oracle.hpp"
#include "pdm/pct.hpp"

using namespace pdm;
using namespace pdm::oracle;
using std::numbers::pi;

namespace {

const refpot::ReferencePotential kRm = refpot::RosenMorseParams{6, 0, 1, 1};

Sampler rm_potential() {
  return [](double y) { return refpot::potential(kRm, y); };
}

SymmetricTridiagonal laplacian(int n) {
  return {std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
}

}  // namespace

TEST_CASE("tridiagonal eigenvalues of the discrete Laplacian") {
  for (int n : {1, 2, 7, 500}) {
    const auto t = laplacian(n);
    const int k = std::min(n, 5);
    const auto ev = lowest_eigenvalues(t, k);
    for (int j = 0; j < k; ++j) {
      const double exact = 2.0 - 2.0 * std::cos((j + 1) * pi / (n + 1));
      CHECK(ev[j] == doctest::Approx(exact).epsilon(1e-10).scale(4.0));
    }
    CHECK(count_below(t, 4.5) == n);
    CHECK(count_below(t, -0.1) == 0);
  }
  CHECK_THROWS_AS(lowest_eigenvalues(laplacian(4), 5), DomainError);
  CHECK_THROWS_AS(lowest_eigenvalues(laplacian(4), 0), DomainError);
}

TEST_CASE("tridiagonal eigenvectors") {
  const auto t = laplacian(200);
  const auto ev = lowest_eigenvalues(t, 3);
  for (int j = 0; j < 3; ++j) {
    const auto z = eigenvector(t, ev[j]);
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < 200; ++i) {
      double tz = t.diag[i] * z[i];
      if (i > 0) tz += t.off[i - 1] * z[i - 1];
      if (i + 1 < 200) tz += t.off[i] * z[i + 1];
      num += (tz - ev[j] * z[i]) * (tz - ev[j] * z[i]);
      den += z[i] * z[i];
    }
    CHECK(std::sqrt(num / den) < 1e-12);
    CHECK(count_nodes(z) == j);
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS((Grid{1.0, 1.0, 10}.validate()), DomainError);
  CHECK_THROWS_AS((Grid{2.0, 1.0, 10}.validate()), DomainError);
  CHECK_THROWS_AS((Grid{0.0, 1.0, 2}.validate()), DomainError);
  const Grid g{-1.0, 1.0, 5};
  CHECK(g.spacing() == 0.5);
  CHECK(g.refined().n_points == 9);
  CHECK(g.refined().spacing() == 0.25);
}

TEST_CASE("constant-mass solver: reference spectra") {
  const auto ho = solve_constant_mass([](double x) { return x * x; }, {-8, 8, 2000}, 2);
  CHECK(std::abs(ho[0].energy - 1.0) < 1e-4);
  CHECK(std::abs(ho[1].energy - 3.0) < 1e-4);

  const auto rm = solve_constant_mass(rm_potential(), {-12, 12, 4000}, 2);
  CHECK(std::abs(rm[0].energy + 4.0) < 1e-3);
  CHECK(std::abs(rm[1].energy + 1.0) < 1e-3);

  double previous = 1.0;
  for (int n : {50, 200, 800}) {
    const double e0 = solve_constant_mass([](double) { return 0.0; }, {0, pi, n}, 1)[0].energy;
    const double err = std::abs(e0 - 1.0);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-5);
}

TEST_CASE("eigenvectors are normalized, sign-fixed and zero at the ends") {
  const Grid g{-12, 12, 4000};
  const auto pairs = solve_constant_mass(rm_potential(), g, 2);
  for (int n = 0; n < 2; ++n) {
    const auto& v = pairs[n].vector;
    REQUIRE(static_cast<int>(v.size()) == g.n_points);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 0.0);
    double norm = 0.0;
    double peak = 0.0;
    double first_peak = 0.0;
    for (double x : v) {
      norm += x * x;
      if (std::abs(x) > peak) {
        peak = std::abs(x);
        first_peak = x;
      }
    }
    CHECK(norm * g.spacing() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(first_peak > 0.0);
    CHECK(count_nodes(v) == n);
  }
}

TEST_CASE("PDM solver with constant mass is bitwise the constant-mass solver") {
  const Grid g{-12, 12, 1500};
  const auto a = solve_constant_mass(rm_potential(), g, 2, 0.75);
  const auto b = solve_pdm(rm_potential(), mass::ConstantMass{}, g, 2, 0.75);
  for (int n = 0; n < 2; ++n) {
    CHECK(a[n].energy == b[n].energy);
    CHECK(a[n].vector == b[n].vector);
  }
}

TEST_CASE("PDM solver: isospectral target and sanity") {
  const mass::RationalSingle profile{1, 1};
  const pct::PctContext ctx = pct::build_context(profile, -0.25);
  const auto vt = pct::target_potential(ctx, kRm, 0);
  const auto e = solve_pdm([&vt](double x) { return vt(x); }, profile, {-15, 15, 4000}, 1);
  CHECK(std::abs(e[0].energy + 4.0) < 1e-3);

  const auto h = solve_pdm([](double x) { return x * x; }, mass::Exponential{0.1}, {-8, 8, 1000}, 6);
  for (std::size_t i = 1; i < h.size(); ++i) {
    CHECK(h[i].energy > h[i - 1].energy);
  }

  CHECK_THROWS_AS(FdOperator({-1, 1, 10}, [](double) { return 0.0; },
                             [](double x) { return x > 0.3 ? -1.0 : 1.0; }, 1.0),
                  DomainError);
  CHECK_THROWS_AS(FdOperator::constant_mass({-1, 1, 10}, [](double) { return 0.0; }, 0.0),
                  DomainError);
}

TEST_CASE("assembled operator is symmetric") {
  const mass::RationalSquared profile{1.2, 0.7};
  const Grid g{-5, 5, 301};
  const auto op = FdOperator::pdm(g, [](double x) { return std::sin(x); }, profile, 1.3);
  std::mt19937 rng(3);
  std::normal_distribution<double> noise;
  std::vector<double> u(g.n_points, 0.0);
  std::vector<double> v(g.n_points, 0.0);
  for (int i = 1; i + 1 < g.n_points; ++i) {
    u[i] = noise(rng);
    v[i] = noise(rng);
  }
  const auto hu = op.apply(u);
  const auto hv = op.apply(v);
  double uhv = 0.0;
  double vhu = 0.0;
  for (int r = 0; r + 2 < g.n_points; ++r) {
    uhv += u[r + 1] * hv[r];
    vhu += v[r + 1] * hu[r];
  }
  CHECK(uhv == doctest::Approx(vhu).epsilon(1e-12));
}

TEST_CASE("residual norm") {
  const Grid g{-12, 12, 4000};
  const auto op = FdOperator::constant_mass(g, rm_potential());
  const auto pairs = solve(op, 1);
  const double exact = residual_norm(op, pairs[0].vector, pairs[0].energy);
  CHECK(exact < 1e-10);

  const auto phi = sample(refpot::wavefunction(kRm, 0), g);
  CHECK(residual_norm(op, phi, -4.0) < 1e-3);

  std::mt19937 rng(11);
  std::normal_distribution<double> noise;
  auto perturbed = pairs[0].vector;
  for (std::size_t i = 1; i + 1 < perturbed.size(); ++i) {
    perturbed[i] += 0.1 * noise(rng);
  }
  CHECK(residual_norm(op, perturbed, pairs[0].energy) > exact);
}

TEST_CASE("node counting") {
  const int n = 1001;
  const double length = 2.0;
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) {
    s[i] = std::sin(3.0 * pi * (i * length / (n - 1)) / length);
  }
  CHECK(count_nodes(s) == 2);
  CHECK(count_nodes(std::vector<double>{1.0, 1e-12, -1e-12, 2.0}) == 0);
  CHECK(count_nodes(std::vector<double>{}) == 0);
}

TEST_CASE("second-order convergence") {
  const Grid g{-12, 12, 2000};
  for (int n = 0; n < 2; ++n) {
    const double exact = refpot::energy(kRm, n);
    const double coarse = solve_constant_mass(rm_potential(), g, 2)[n].energy;
    const double fine = solve_constant_mass(rm_potential(), g.refined(), 2)[n].energy;
    CHECK(std::abs(fine - exact) < 0.4 * std::abs(coarse - exact));
  }
}

TEST_CASE("variational bound under nonnegative perturbations") {
  const Grid g{-12, 12, 1000};
  const double base = solve_constant_mass(rm_potential(), g, 1)[0].energy;
  const double bump =
      solve_constant_mass([](double y) { return refpot::potential(kRm, y) + std::exp(-y * y); }, g, 1)[0]
          .energy;
  const double shelf =
      solve_constant_mass([](double y) { return refpot::potential(kRm, y) + (y > 1.0 ? 0.5 : 0.0); },
                          g, 1)[0]
          .energy;
  CHECK(bump >= base);
  CHECK(shelf >= base);
}

TEST_CASE("kinetic coefficient covariance") {
  // -c kappa (psi'/m)' + c V has spectrum c E
  const mass::RationalSingle profile{1, 1};
  const Grid g{-10, 10, 1200};
  const Sampler v = [](double x) { return -5.0 / (1.0 + x * x); };
  const auto base = solve_pdm(v, profile, g, 3, 1.0);
  const double c = 2.5;
  const auto scaled = solve_pdm([&v, c](double x) { return c * v(x); }, profile, g, 3, c);
  for (int n = 0; n < 3; ++n) {
    CHECK(scaled[n].energy == doctest::Approx(c * base[n].energy).epsilon(1e-11));
  }
}

TEST_CASE("verify: constant mass and the arcsinh mapping") {
  for (double alpha : {0.0, -0.25}) {
    const auto report = verify_isospectrality(mass::ConstantMass{}, alpha, kRm, {0, 1}, {-12, 12, 4000});
    CHECK(report.passed());
    for (const auto& s : report.states) {
      CHECK(s.abs_error < 1e-3);
      CHECK(s.residual < 1e-3);
      CHECK(s.nodes_numeric == s.n);
      CHECK(s.convergence_ratio() > 2.5);
    }
  }
  // algebraic decay of the arcsinh target needs a wide window
  const auto report =
      verify_isospectrality(mass::RationalSingle{1, 1}, -0.25, kRm, {0, 1}, {-1000, 1000, 100000});
  CHECK(report.passed());
  CHECK(report.mapping_source == "closed-form");
  for (const auto& s : report.states) {
    CAPTURE(s.n);
    CHECK(s.abs_error < 1e-3);
    CHECK(s.nodes_analytic == s.n);
    CHECK(s.nodes_numeric == s.n);
    CHECK(s.convergence_ratio() > 2.5);
  }
}

TEST_CASE("bounded mapping: the transformation is exact for the boxed reference problem") {
  // f = atan maps the x-window onto |y| < atan(15). The reference problem
  // restricted to that box has its own ground state E_box; the alpha = 0 target
  // built with E_box reproduces it, while the one built with E_0 of the full
  // line does not.
  const mass::RationalSingle profile{1, 1};
  const pct::PctContext ctx = pct::build_context(profile, 0.0);
  const Grid g{-15, 15, 8000};
  const double box =
      solve_constant_mass(rm_potential(), {std::atan(-15.0), std::atan(15.0), 8000}, 1)[0].energy;
  const Sampler boxed_target = [&ctx, box](double x) {
    const double m = mass::mass_value(ctx.profile, x);
    return m * refpot::potential(kRm, ctx.mapping(x)) + (1.0 - m) * box;
  };
  CHECK(solve_pdm(boxed_target, profile, g, 1)[0].energy == doctest::Approx(box).epsilon(1e-4));

  const auto vt = pct::target_potential(ctx, kRm, 0);
  const double line = solve_pdm([&vt](double x) { return vt(x); }, profile, g, 1)[0].energy;
  CHECK(std::abs(line + 4.0) > 1e-2);
}

TEST_CASE("verify: errors are attached to the state record") {
  const auto report = verify_isospectrality(mass::ConstantMass{}, 0.0, kRm, {0, 2}, {-12, 12, 800});
  REQUIRE(report.states.size() == 2);
  CHECK(report.states[0].error.empty());
  CHECK(report.states[1].error.find("n < 2") != std::string::npos);
  CHECK_FALSE(report.passed());
}

TEST_CASE("verify: experimental scarf branches need the override") {
  const refpot::ScarfParams branch{6, 0, 1, 1, 1, -1};
  CHECK_THROWS_AS(verify_isospectrality(mass::ConstantMass{}, 0.0, branch, {0}, {-12, 12, 400}),
                  DomainError);
  VerifyOptions opts;
  opts.allow_experimental = true;
  const auto report =
      verify_isospectrality(mass::ConstantMass{}, 0.0, branch, {0}, {-12, 12, 400}, 1.0, opts);
  REQUIRE(report.states.size() == 1);
  CHECK_FALSE(report.states[0].error.empty());
}

TEST_CASE("verify: kappa mismatch shows a systematic energy shift") {
  const auto report =
      verify_isospectrality(mass::ConstantMass{}, 0.0, kRm, {0, 1}, {-12, 12, 2000}, 0.5);
  CHECK_FALSE(report.passed());
  for (const auto& s : report.states) {
    CHECK(s.abs_error > 0.1);
  }
}
