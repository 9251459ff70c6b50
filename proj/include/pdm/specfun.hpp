#pragma once

#include <complex>
#include <functional>

namespace pdm::specfun {

using complex = std::complex<double>;

/// Largest |y| accepted by the deformed hyperbolic functions.
inline constexpr double kMaxArgument = 700.0;

/// Argument pair of a q-deformed hyperbolic function. Rejects q <= 0.
class DeformedArg {
public:
  DeformedArg(double y, double q);

  double y() const { return y_; }
  double q() const { return q_; }

  /// y - ln(sqrt(q)): the shift that turns the deformed function into the
  /// ordinary one, e.g. sinh_q(y) = sqrt(q) sinh(shifted()).
  double shifted() const;

private:
  double y_;
  double q_;
};

// q-deformed hyperbolic functions:
//   sinh_q y = (e^y - q e^-y) / 2,   cosh_q y = (e^y + q e^-y) / 2
// and their ratios/reciprocals. Evaluated through the translated form,
// which is exact at q = 1 and accurate near the zero of sinh_q.
double deformed_sinh(double y, double q);
double deformed_cosh(double y, double q);
double deformed_tanh(double y, double q);
double deformed_sech(double y, double q);
double deformed_cosech(double y, double q);
double deformed_coth(double y, double q);

/// log(cosh_q y), finite for every admissible y.
double deformed_log_cosh(double y, double q);

struct JacobiParams {
  int n = 0;
  complex a;
  complex b;
};

/// Jacobi polynomial P_n^{(a,b)}(z) for complex a, b, z.
///
/// Uses the three-term degree recurrence. When a recurrence denominator
/// vanishes (a + b = -k for some small integer k) the explicit binomial sum is
/// used instead. Throws OverflowError on a non-finite result.
complex jacobi_eval(const JacobiParams& p, complex z);

/// Explicit sum  sum_s C(n+a, n-s) C(n+b, s) ((z-1)/2)^s ((z+1)/2)^(n-s).
complex jacobi_explicit(const JacobiParams& p, complex z);

/// Integral of cos^p t over [0, theta] for integer p >= 0.
double cos_power_antiderivative(int p, double theta);

/// Integral of cos^p t over [0, pi/2] for real p > -1 (Beta-function form).
double cos_power_half_period(double p);

/// Adaptive Gauss-Kronrod (7/15) quadrature with an absolute error bound.
///
/// Subdivides the panel with the largest error estimate until the summed
/// estimate drops below max(tol, roundoff floor). Throws ConvergenceError
/// after kMaxSubdivisions panels and DomainError on a non-finite integrand.
inline constexpr int kMaxSubdivisions = 4000;

double integrate_adaptive(const std::function<double(double)>& f, double x0, double x1,
                          double tol);

}  // namespace pdm::specfun
