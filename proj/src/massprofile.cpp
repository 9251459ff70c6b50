#include "pdm/massprofile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "pdm/errors.hpp"
#include "pdm/specfun.hpp"

namespace pdm::mass {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Absolute tolerance for each quadrature segment of a mapping.
constexpr double kSegmentTol = 1e-13;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "mass profile parameter " << name << " must be finite and > 0, got " << value;
    throw DomainError(msg.str());
  }
}

std::optional<int> as_nonnegative_integer(double v) {
  const double r = std::round(v);
  if (r >= 0.0 && std::abs(v - r) < 1e-12 && r < 1000.0) {
    return static_cast<int>(r);
  }
  return std::nullopt;
}

bool near(double v, double target) { return std::abs(v - target) < 1e-14; }

std::string number(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

Mapping identity_mapping() {
  Mapping::Parts parts;
  parts.forward = [](double x) { return x; };
  parts.derivative = [](double) { return 1.0; };
  parts.inverse = [](double y) { return y; };
  parts.lower = -kInf;
  parts.upper = kInf;
  parts.source = MappingSource::identity;
  parts.formula = "y = x";
  return Mapping(std::move(parts));
}

std::function<double(double)> power_derivative(const MassProfile& p, double alpha) {
  const double exponent = 2.0 * alpha + 1.0;
  if (const auto* e = std::get_if<Exponential>(&p)) {
    const double c = exponent * e->a;
    return [c](double x) { return std::exp(-c * x); };
  }
  return [p, exponent](double x) { return std::pow(mass_value(p, x), exponent); };
}

// f(+inf) - f(0); +inf when m^(2 alpha + 1) is not integrable at +inf.
double right_tail(const MassProfile& p, double alpha) {
  return std::visit(
      overloaded{
          [alpha](const RationalSingle& r) {
            if (!(alpha > -0.25)) return kInf;
            return std::pow(r.a, 4.0 * alpha + 2.0) * std::pow(r.q, -2.0 * alpha - 0.5) *
                   specfun::cos_power_half_period(4.0 * alpha);
          },
          [alpha](const RationalSquared& r) {
            if (!(alpha > -0.375)) return kInf;
            return std::pow(r.a, 4.0 * alpha + 2.0) * std::pow(r.b, -(4.0 * alpha + 1.5)) *
                   specfun::cos_power_half_period(8.0 * alpha + 2.0);
          },
          [alpha](const Exponential& e) {
            const double c = (2.0 * alpha + 1.0) * e.a;
            return c > 0.0 ? 1.0 / c : kInf;
          },
          [](const ConstantMass&) { return kInf; }},
      p);
}

// f(0) - f(-inf)
double left_tail(const MassProfile& p, double alpha) {
  if (const auto* e = std::get_if<Exponential>(&p)) {
    const double c = (2.0 * alpha + 1.0) * e->a;
    return c < 0.0 ? -1.0 / c : kInf;
  }
  return right_tail(p, alpha);  // even profiles
}

// sec^2-substitution closed form  y = C * I_p(atan(x / sqrt(s)))
Mapping cos_power_mapping(double prefactor, double scale_sq, int power, double alpha,
                          const MassProfile& p, std::string formula) {
  const double root = std::sqrt(scale_sq);
  const double half = prefactor * specfun::cos_power_half_period(power);
  Mapping::Parts parts;
  parts.forward = [prefactor, root, power](double x) {
    return prefactor * specfun::cos_power_antiderivative(power, std::atan(x / root));
  };
  parts.derivative = power_derivative(p, alpha);
  if (power == 0) {
    parts.inverse = [prefactor, root](double y) { return root * std::tan(y / prefactor); };
  }
  parts.lower = -half;
  parts.upper = half;
  parts.length = root;
  parts.source = MappingSource::closed_form;
  parts.formula = std::move(formula);
  return Mapping(std::move(parts));
}

}  // namespace

void validate(const MassProfile& p) {
  std::visit(overloaded{[](const RationalSingle& r) {
                          require_positive(r.a, "a");
                          require_positive(r.q, "q");
                        },
                        [](const RationalSquared& r) {
                          require_positive(r.a, "a");
                          require_positive(r.b, "b");
                        },
                        [](const Exponential& e) {
                          if (!std::isfinite(e.a) || e.a == 0.0) {
                            throw DomainError("exponential mass profile needs a finite a != 0");
                          }
                        },
                        [](const ConstantMass&) {}},
             p);
}

double mass_value(const MassProfile& p, double x) {
  return std::visit(overloaded{[x](const RationalSingle& r) { return r.a * r.a / (r.q + x * x); },
                               [x](const RationalSquared& r) {
                                 const double s = r.b + x * x;
                                 return r.a * r.a / (s * s);
                               },
                               [x](const Exponential& e) { return std::exp(-e.a * x); },
                               [](const ConstantMass&) { return 1.0; }},
                    p);
}

double mass_d1(const MassProfile& p, double x) {
  return std::visit(overloaded{[x](const RationalSingle& r) {
                                 const double s = r.q + x * x;
                                 return -2.0 * r.a * r.a * x / (s * s);
                               },
                               [x](const RationalSquared& r) {
                                 const double s = r.b + x * x;
                                 return -4.0 * r.a * r.a * x / (s * s * s);
                               },
                               [x](const Exponential& e) { return -e.a * std::exp(-e.a * x); },
                               [](const ConstantMass&) { return 0.0; }},
                    p);
}

double mass_d2(const MassProfile& p, double x) {
  return std::visit(overloaded{[x](const RationalSingle& r) {
                                 const double s = r.q + x * x;
                                 return r.a * r.a * (6.0 * x * x - 2.0 * r.q) / (s * s * s);
                               },
                               [x](const RationalSquared& r) {
                                 const double s = r.b + x * x;
                                 return r.a * r.a * (20.0 * x * x - 4.0 * r.b) / (s * s * s * s);
                               },
                               [x](const Exponential& e) {
                                 return e.a * e.a * std::exp(-e.a * x);
                               },
                               [](const ConstantMass&) { return 0.0; }},
                    p);
}

double length_scale(const MassProfile& p) {
  return std::visit(overloaded{[](const RationalSingle& r) { return std::sqrt(r.q); },
                               [](const RationalSquared& r) { return std::sqrt(r.b); },
                               [](const Exponential& e) { return 1.0 / std::abs(e.a); },
                               [](const ConstantMass&) { return 1.0; }},
                    p);
}

std::string describe(const MassProfile& p) {
  return std::visit(
      overloaded{[](const RationalSingle& r) {
                   return "rational-single(a=" + number(r.a) + ", q=" + number(r.q) + ")";
                 },
                 [](const RationalSquared& r) {
                   return "rational-squared(a=" + number(r.a) + ", b=" + number(r.b) + ")";
                 },
                 [](const Exponential& e) { return "exponential(a=" + number(e.a) + ")"; },
                 [](const ConstantMass&) { return std::string("constant"); }},
      p);
}

std::string to_string(MappingSource s) {
  switch (s) {
    case MappingSource::identity:
      return "identity";
    case MappingSource::closed_form:
      return "closed-form";
    case MappingSource::quadrature:
      return "quadrature";
  }
  return "unknown";
}

Mapping::Mapping(Parts parts) : parts_(std::make_shared<const Parts>(std::move(parts))) {}

double Mapping::inverse(double y) const {
  const Parts& p = *parts_;
  if (!(y > p.lower && y < p.upper)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "y = " << y << " is outside the mapping range (" << p.lower << ", " << p.upper
        << ")";
    throw RangeError(msg.str());
  }
  if (p.inverse) {
    return p.inverse(y);
  }

  const double tol = 1e-12 * (1.0 + std::abs(y));
  const double f0 = p.forward(0.0);
  if (std::abs(f0 - y) <= tol) {
    return 0.0;
  }

  // Expand a bracket away from the origin; f is strictly increasing.
  double lo = 0.0;
  double hi = 0.0;
  const double dir = y > f0 ? 1.0 : -1.0;
  double step = p.length;
  double inner = 0.0;
  for (;;) {
    const double outer = dir * step;
    const double fo = p.forward(outer);
    if ((dir > 0.0 && fo >= y) || (dir < 0.0 && fo <= y)) {
      lo = std::min(inner, outer);
      hi = std::max(inner, outer);
      break;
    }
    inner = outer;
    step *= 2.0;
    if (step > 1e200) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "y = " << y << " is not attainable in double precision (mapping range ("
          << p.lower << ", " << p.upper << "))";
      throw RangeError(msg.str());
    }
  }

  // Safeguarded Newton on [lo, hi], run until the step reaches roundoff so
  // that x is accurate even where f is flat.
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double x = 0.5 * (lo + hi);
  double best_x = x;
  double best_r = kInf;
  for (int iter = 0; iter < 300; ++iter) {
    const double r = p.forward(x) - y;
    if (std::abs(r) < best_r) {
      best_r = std::abs(r);
      best_x = x;
    }
    if (r == 0.0) {
      break;
    }
    if (r < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    double next = x - r / p.derivative(x);
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - x) <= 4.0 * kEps * std::max(1.0, std::abs(x)) ||
        hi - lo <= 4.0 * kEps * std::max(std::abs(lo), std::abs(hi))) {
      break;
    }
    x = next;
  }
  if (best_r <= tol) {
    return best_x;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "inverse mapping did not converge for y = " << y << " (residual " << best_r << ")";
  throw ConvergenceError(msg.str());
}

std::optional<Mapping> closed_form_mapping(const MassProfile& p, double alpha) {
  validate(p);
  return std::visit(
      overloaded{
          [&](const RationalSingle& r) -> std::optional<Mapping> {
            if (near(alpha, -0.25)) {
              const double a = r.a;
              const double shift = 0.5 * std::log(r.q);
              const double root = std::sqrt(r.q);
              Mapping::Parts parts;
              parts.forward = [a, root, shift](double x) {
                return a * (std::asinh(x / root) + shift);
              };
              parts.derivative = power_derivative(p, alpha);
              parts.inverse = [a, root, shift](double y) {
                return root * std::sinh(y / a - shift);
              };
              parts.lower = -kInf;
              parts.upper = kInf;
              parts.length = root;
              parts.formula = "y = a ln(x + sqrt(q + x^2))";
              return Mapping(std::move(parts));
            }
            if (auto power = as_nonnegative_integer(4.0 * alpha)) {
              const double prefactor =
                  std::pow(r.a, 4.0 * alpha + 2.0) * std::pow(r.q, -2.0 * alpha - 0.5);
              return cos_power_mapping(prefactor, r.q, *power, alpha, p,
                                       "y = a^(4alpha+2) q^(-2alpha-1/2) I_" +
                                           std::to_string(*power) + "(atan(x/sqrt(q)))");
            }
            return std::nullopt;
          },
          [&](const RationalSquared& r) -> std::optional<Mapping> {
            if (auto power = as_nonnegative_integer(8.0 * alpha + 2.0)) {
              const double prefactor =
                  std::pow(r.a, 4.0 * alpha + 2.0) * std::pow(r.b, -(4.0 * alpha + 1.5));
              return cos_power_mapping(prefactor, r.b, *power, alpha, p,
                                       "y = a^(4alpha+2) b^(-4alpha-3/2) I_" +
                                           std::to_string(*power) + "(atan(x/sqrt(b)))");
            }
            return std::nullopt;
          },
          [&](const Exponential& e) -> std::optional<Mapping> {
            const double c = (2.0 * alpha + 1.0) * e.a;
            if (c == 0.0 || near(alpha, -0.5)) {
              return identity_mapping();
            }
            Mapping::Parts parts;
            parts.forward = [c](double x) { return -std::exp(-c * x) / c; };
            parts.derivative = power_derivative(p, alpha);
            parts.inverse = [c](double y) {
              const double arg = -c * y;
              if (!(arg > 0.0)) {
                throw RangeError("exponential mapping: -(2alpha+1) a y must be positive");
              }
              return -std::log(arg) / c;
            };
            parts.lower = c > 0.0 ? -kInf : 0.0;
            parts.upper = c > 0.0 ? 0.0 : kInf;
            parts.length = 1.0 / std::abs(c);
            parts.formula = "y = -exp(-(2alpha+1) a x) / ((2alpha+1) a)";
            return Mapping(std::move(parts));
          },
          [](const ConstantMass&) -> std::optional<Mapping> { return identity_mapping(); }},
      p);
}

Mapping quadrature_mapping(const MassProfile& p, double alpha, double anchor) {
  validate(p);
  const auto integrand = power_derivative(p, alpha);
  const double ell = length_scale(p);

  // Knot table x_k = k * spacing, |k| <= kHalf, with exact cumulative values.
  constexpr int kHalf = 256;
  const double spacing = ell / 4.0;
  auto knots = std::make_shared<std::vector<double>>(2 * kHalf + 1);
  (*knots)[kHalf] = anchor;
  for (int k = 1; k <= kHalf; ++k) {
    const double x_prev = (k - 1) * spacing;
    const double x_next = k * spacing;
    (*knots)[kHalf + k] =
        (*knots)[kHalf + k - 1] + specfun::integrate_adaptive(integrand, x_prev, x_next, kSegmentTol);
    (*knots)[kHalf - k] =
        (*knots)[kHalf - k + 1] - specfun::integrate_adaptive(integrand, -x_next, -x_prev, kSegmentTol);
  }

  Mapping::Parts parts;
  parts.forward = [knots, integrand, spacing](double x) {
    const double pos = std::round(x / spacing);
    const int k = static_cast<int>(std::clamp(pos, -double(kHalf), double(kHalf)));
    const double xk = k * spacing;
    return (*knots)[kHalf + k] + specfun::integrate_adaptive(integrand, xk, x, kSegmentTol);
  };
  parts.derivative = integrand;
  parts.lower = anchor - left_tail(p, alpha);
  parts.upper = anchor + right_tail(p, alpha);
  parts.length = ell;
  parts.source = MappingSource::quadrature;
  parts.formula = "y = f(0) + integral_0^x m(t)^(2alpha+1) dt";
  return Mapping(std::move(parts));
}

Mapping make_mapping(const MassProfile& p, double alpha) {
  if (auto closed = closed_form_mapping(p, alpha)) {
    return *closed;
  }
  return quadrature_mapping(p, alpha, 0.0);
}

double inverse_mapping(const MassProfile& p, double alpha, double y) {
  return make_mapping(p, alpha).inverse(y);
}

}  // namespace pdm::mass
