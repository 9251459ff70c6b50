#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/differentiation/finite_difference.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "pdm/errors.hpp"
#include "pdm/massprofile.hpp"

using namespace pdm;
using namespace pdm::mass;
using boost::math::differentiation::finite_difference_derivative;
using std::numbers::pi;

namespace {

struct Case {
  MassProfile profile;
  double alpha;
};

// Every (profile, alpha) pair with a tabulated closed form, at non-unit parameters.
std::vector<Case> closed_form_cases() {
  return {
      {RationalSingle{1.0, 1.0}, -0.25}, {RationalSingle{1.3, 2.5}, -0.25},
      {RationalSingle{1.0, 1.0}, 0.0},   {RationalSingle{0.8, 1.7}, 0.0},
      {RationalSingle{1.2, 0.6}, 0.25},  {RationalSingle{1.2, 0.6}, 0.5},
      {RationalSingle{0.9, 1.4}, 1.0},   {RationalSquared{1.0, 1.0}, -0.25},
      {RationalSquared{1.5, 2.0}, 0.0},  {RationalSquared{1.1, 0.7}, 0.25},
      {RationalSquared{0.9, 1.3}, 0.5},  {Exponential{1.0}, 0.0},
      {Exponential{0.4}, 0.5},           {Exponential{-0.7}, 0.0},
      {Exponential{0.3}, -0.5},          {ConstantMass{}, 0.0},
      {ConstantMass{}, -0.25},
  };
}

std::vector<double> sample_points(const MassProfile& p, int count) {
  const double ell = length_scale(p);
  std::vector<double> xs;
  for (int i = 0; i < count; ++i) {
    xs.push_back(ell * (-5.0 + 10.0 * (i + 0.37) / count));
  }
  return xs;
}

bool same_limit(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) {
    return a == b;
  }
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
}

}  // namespace

TEST_CASE("mass profile values") {
  CHECK(mass_value(RationalSingle{1, 1}, 0.0) == 1.0);
  CHECK(mass_value(RationalSquared{2, 1}, 1.0) == 1.0);
  CHECK(mass_value(Exponential{1}, 0.0) == 1.0);
  CHECK(mass_d1(Exponential{1}, 0.0) == -1.0);
  CHECK(mass_value(ConstantMass{}, 3.0) == 1.0);
  CHECK_THROWS_AS(validate(RationalSingle{0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(RationalSquared{1.0, -1.0}), DomainError);
}

TEST_CASE("mass derivatives match finite differences") {
  for (const MassProfile p : {MassProfile(RationalSingle{1.3, 0.8}),
                              MassProfile(RationalSquared{0.7, 1.9}),
                              MassProfile(Exponential{0.6})}) {
    CAPTURE(describe(p));
    for (double x : sample_points(p, 40)) {
      const double d1 = finite_difference_derivative([&p](double t) { return mass_value(p, t); }, x);
      const double d2 = finite_difference_derivative([&p](double t) { return mass_d1(p, t); }, x);
      CHECK(mass_d1(p, x) == doctest::Approx(d1).epsilon(1e-8).scale(mass_value(p, x)));
      CHECK(mass_d2(p, x) == doctest::Approx(d2).epsilon(1e-8).scale(mass_value(p, x)));
      CHECK(mass_value(p, x) > 0.0);
    }
  }
}

TEST_CASE("closed-form mappings: reference values") {
  const auto atan_map = closed_form_mapping(RationalSingle{1, 1}, 0.0);
  REQUIRE(atan_map);
  CHECK((*atan_map)(1.0) == doctest::Approx(pi / 4).epsilon(1e-15));

  const auto asinh_map = closed_form_mapping(RationalSingle{1, 1}, -0.25);
  REQUIRE(asinh_map);
  CHECK((*asinh_map)(0.0) == 0.0);
  for (double x : {-3.0, 0.5, 7.0}) {
    CHECK((*asinh_map)(x) == doctest::Approx(std::log(x + std::sqrt(1 + x * x))).epsilon(1e-14));
  }

  const auto exp_map = closed_form_mapping(Exponential{1}, 0.0);
  REQUIRE(exp_map);
  CHECK((*exp_map)(0.0) == -1.0);
  CHECK((*exp_map)(2.0) == doctest::Approx(-std::exp(-2.0)).epsilon(1e-15));

  const auto id = closed_form_mapping(ConstantMass{}, 0.7);
  REQUIRE(id);
  CHECK((*id)(4.25) == 4.25);
  CHECK(id->source() == MappingSource::identity);

  CHECK_FALSE(closed_form_mapping(RationalSingle{1, 1}, 0.3).has_value());
  CHECK_FALSE(closed_form_mapping(RationalSquared{1, 1}, 0.3).has_value());
}

TEST_CASE("closed-form mappings with shifted prefactors") {
  // alpha = 1: a^6 q^(-5/2) [3/8 t + 3/8 sin t cos t + 1/4 sin t cos^3 t], t = atan(x/sqrt q)
  const double a = 0.9;
  const double q = 1.4;
  const auto f = closed_form_mapping(RationalSingle{a, q}, 1.0);
  REQUIRE(f);
  const double x = 0.8;
  const double t = std::atan(x / std::sqrt(q));
  const double s = std::sin(t);
  const double c = std::cos(t);
  const double expected = std::pow(a, 6) * std::pow(q, -2.5) *
                          (0.375 * t + 0.375 * s * c + 0.25 * s * c * c * c);
  CHECK((*f)(x) == doctest::Approx(expected).epsilon(1e-14));

  // rational-squared, alpha = 1/2: I_6 with leading term (5/16) t
  const auto g = closed_form_mapping(RationalSquared{1, 1}, 0.5);
  REQUIRE(g);
  CHECK(g->upper_limit() == doctest::Approx(5.0 * pi / 32.0).epsilon(1e-14));
}

TEST_CASE("closed form agrees with quadrature") {
  for (const Case& c : closed_form_cases()) {
    CAPTURE(describe(c.profile));
    CAPTURE(c.alpha);
    const auto closed = closed_form_mapping(c.profile, c.alpha);
    REQUIRE(closed);
    const Mapping quad = quadrature_mapping(c.profile, c.alpha, (*closed)(0.0));
    for (double x : sample_points(c.profile, 100)) {
      CHECK(std::abs((*closed)(x) - quad(x)) < 1e-10);
    }
    CHECK(same_limit(closed->lower_limit(), quad.lower_limit()));
    CHECK(same_limit(closed->upper_limit(), quad.upper_limit()));
  }
}

TEST_CASE("mapping derivative law") {
  std::vector<Case> cases = closed_form_cases();
  cases.push_back({RationalSingle{1, 1}, 0.3});
  cases.push_back({RationalSquared{1.2, 0.9}, -0.1});
  for (const Case& c : cases) {
    CAPTURE(describe(c.profile));
    CAPTURE(c.alpha);
    for (const Mapping& f : {make_mapping(c.profile, c.alpha), quadrature_mapping(c.profile, c.alpha)}) {
      for (double x : sample_points(c.profile, 100)) {
        const double expected = std::pow(mass_value(c.profile, x), 2 * c.alpha + 1);
        const double numeric = finite_difference_derivative([&f](double t) { return f(t); }, x);
        CHECK(numeric == doctest::Approx(expected).epsilon(1e-8));
        CHECK(f.derivative(x) == doctest::Approx(expected).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("inverse mapping: reference values") {
  CHECK(inverse_mapping(Exponential{1}, 0.0, -1.0) == doctest::Approx(0.0));
  CHECK(inverse_mapping(RationalSingle{1, 1}, 0.0, pi / 4) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(inverse_mapping(RationalSingle{1, 1}, -0.25, std::asinh(2.0)) ==
        doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("inverse mapping round trip") {
  std::vector<Case> cases = closed_form_cases();
  cases.push_back({RationalSingle{1, 1}, 0.3});
  cases.push_back({RationalSquared{1.2, 0.9}, -0.1});
  std::mt19937 rng(99);
  for (const Case& c : cases) {
    CAPTURE(describe(c.profile));
    CAPTURE(c.alpha);
    const Mapping f = make_mapping(c.profile, c.alpha);
    std::uniform_real_distribution<double> u(-4.0 * length_scale(c.profile), 4.0 * length_scale(c.profile));
    for (int i = 0; i < 50; ++i) {
      const double x = u(rng);
      CHECK(f.inverse(f(x)) == doctest::Approx(x).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("quadrature mapping for a non-tabulated exponent") {
  const Mapping f = make_mapping(RationalSingle{1, 1}, 0.3);
  CHECK(f.source() == MappingSource::quadrature);
  CHECK(f(0.0) == 0.0);
  CHECK(f.derivative(0.5) == doctest::Approx(std::pow(1.25, -1.6)));
  const double y = f(1.7);
  CHECK(f.inverse(y) == doctest::Approx(1.7).epsilon(1e-11));
}

TEST_CASE("mappings are strictly increasing") {
  for (const Case& c : closed_form_cases()) {
    const Mapping f = make_mapping(c.profile, c.alpha);
    const auto xs = sample_points(c.profile, 200);
    for (std::size_t i = 1; i < xs.size(); ++i) {
      CHECK(f(xs[i - 1]) < f(xs[i]));
    }
  }
}

TEST_CASE("inverse mapping range errors mirror the attained range") {
  const Mapping atan_map = make_mapping(RationalSingle{1, 1}, 0.0);
  CHECK(atan_map.upper_limit() == doctest::Approx(pi / 2));
  CHECK_NOTHROW(atan_map.inverse(pi / 2 - 1e-3));
  CHECK_THROWS_AS(atan_map.inverse(pi / 2), RangeError);
  CHECK_THROWS_AS(atan_map.inverse(-2.0), RangeError);

  const Mapping exp_map = make_mapping(Exponential{1}, 0.0);
  CHECK_THROWS_AS(exp_map.inverse(0.0), RangeError);
  CHECK_THROWS_AS(exp_map.inverse(0.5), RangeError);
  CHECK_NOTHROW(exp_map.inverse(-1e5));

  const Mapping quad = make_mapping(RationalSingle{1, 1}, 0.3);
  CHECK(std::isfinite(quad.upper_limit()));
  CHECK_THROWS_AS(quad.inverse(quad.upper_limit() + 1e-9), RangeError);
  CHECK_NOTHROW(quad.inverse(0.9 * quad.upper_limit()));

  const Mapping unbounded = make_mapping(RationalSingle{1, 1}, -0.3);
  CHECK(std::isinf(unbounded.upper_limit()));
  CHECK(unbounded.inverse(unbounded(25.0)) == doctest::Approx(25.0).epsilon(1e-10));
}
