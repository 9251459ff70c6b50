#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace pdm::mass {

/// m(x) = a^2 / (q + x^2)
struct RationalSingle {
  double a = 1.0;
  double q = 1.0;
};

/// m(x) = a^2 / (b + x^2)^2
struct RationalSquared {
  double a = 1.0;
  double b = 1.0;
};

/// m(x) = exp(-a x). The decay rate a is independent of the transformation parameter.
struct Exponential {
  double a = 1.0;
};

/// m(x) = 1
struct ConstantMass {};

using MassProfile = std::variant<RationalSingle, RationalSquared, Exponential, ConstantMass>;

void validate(const MassProfile& p);

double mass_value(const MassProfile& p, double x);
double mass_d1(const MassProfile& p, double x);
double mass_d2(const MassProfile& p, double x);

/// Natural length of the profile: sqrt(q), sqrt(b), 1/|a| or 1.
double length_scale(const MassProfile& p);

std::string describe(const MassProfile& p);

enum class MappingSource { identity, closed_form, quadrature };

std::string to_string(MappingSource s);

/// Monotone coordinate map y = f(x) with f'(x) = m(x)^(2 alpha + 1).
///
/// Immutable and cheap to copy; every copy shares the same evaluation state.
class Mapping {
public:
  struct Parts {
    std::function<double(double)> forward;
    std::function<double(double)> derivative;
    std::function<double(double)> inverse;  // optional closed-form inverse
    double lower = 0.0;                     // f(-infinity)
    double upper = 0.0;                     // f(+infinity)
    double length = 1.0;                    // bracketing step for numeric inversion
    MappingSource source = MappingSource::closed_form;
    std::string formula;
  };

  explicit Mapping(Parts parts);

  double operator()(double x) const { return parts_->forward(x); }
  double derivative(double x) const { return parts_->derivative(x); }

  /// x with |f(x) - y| < 1e-12 (1 + |y|). Throws RangeError when y lies
  /// outside the open interval (lower_limit, upper_limit).
  double inverse(double y) const;

  double lower_limit() const { return parts_->lower; }
  double upper_limit() const { return parts_->upper; }
  MappingSource source() const { return parts_->source; }
  const std::string& formula() const { return parts_->formula; }

private:
  std::shared_ptr<const Parts> parts_;
};

/// The closed-form mapping for the tabulated (profile, alpha) pairs:
///   rational-single   alpha = -1/4, or 4 alpha a nonnegative integer
///   rational-squared  8 alpha + 2 a nonnegative integer
///   exponential       any alpha (alpha = -1/2 gives the identity)
///   constant          any alpha (identity)
/// Returns nullopt otherwise.
std::optional<Mapping> closed_form_mapping(const MassProfile& p, double alpha);

/// Mapping built by adaptive quadrature of m^(2 alpha + 1), anchored at
/// f(0) = anchor. Values are exact up to quadrature tolerance (no interpolation).
Mapping quadrature_mapping(const MassProfile& p, double alpha, double anchor = 0.0);

/// Closed form when available, quadrature otherwise (anchored at f(0) = 0).
Mapping make_mapping(const MassProfile& p, double alpha);

double inverse_mapping(const MassProfile& p, double alpha, double y);

}  // namespace pdm::mass
