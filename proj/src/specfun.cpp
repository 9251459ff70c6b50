#include "pdm/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "pdm/errors.hpp"

namespace pdm::specfun {

namespace {

void require_admissible(double y, double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    std::ostringstream msg;
    msg << "deformation parameter q must be finite and > 0, got " << q;
    throw DomainError(msg.str());
  }
  if (!std::isfinite(y) || std::abs(y) > kMaxArgument) {
    std::ostringstream msg;
    msg << "deformed hyperbolic argument |y| must not exceed " << kMaxArgument << ", got " << y;
    throw DomainError(msg.str());
  }
}

double checked(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw OverflowError(std::string(what) + ": result is not finite");
  }
  return value;
}

complex binomial(complex x, int k) {
  complex r{1.0, 0.0};
  for (int j = 0; j < k; ++j) {
    r *= (x - static_cast<double>(j)) / static_cast<double>(j + 1);
  }
  return r;
}

complex checked(complex value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw OverflowError("jacobi_eval: result is not finite");
  }
  return value;
}

// QUADPACK qk15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double result;
  double error;
  double resabs;

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrate_adaptive: integrand is not finite at x = " << x;
      throw DomainError(msg.str());
    }
    return v;
  };

  const double fc = eval(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double resabs = std::abs(fc) * kKronrodWeights[7];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double f1 = eval(center - dx);
    const double f2 = eval(center + dx);
    kronrod += (f1 + f2) * kKronrodWeights[i];
    resabs += (std::abs(f1) + std::abs(f2)) * kKronrodWeights[i];
    if (i % 2 == 1) {
      gauss += (f1 + f2) * kGaussWeights[i / 2];
    }
  }
  return Panel{a, b, kronrod * half, std::abs((kronrod - gauss) * half),
               resabs * std::abs(half)};
}

}  // namespace

DeformedArg::DeformedArg(double y, double q) : y_(y), q_(q) { require_admissible(y, q); }

double DeformedArg::shifted() const { return y_ - 0.5 * std::log(q_); }

double deformed_sinh(double y, double q) {
  const DeformedArg arg(y, q);
  return checked(std::sqrt(q) * std::sinh(arg.shifted()), "deformed_sinh");
}

double deformed_cosh(double y, double q) {
  const DeformedArg arg(y, q);
  return checked(std::sqrt(q) * std::cosh(arg.shifted()), "deformed_cosh");
}

double deformed_tanh(double y, double q) {
  const DeformedArg arg(y, q);
  return std::tanh(arg.shifted());
}

double deformed_sech(double y, double q) {
  const DeformedArg arg(y, q);
  return checked(1.0 / (std::sqrt(q) * std::cosh(arg.shifted())), "deformed_sech");
}

double deformed_cosech(double y, double q) {
  const DeformedArg arg(y, q);
  const double t = arg.shifted();
  if (t == 0.0) {
    throw PoleError("deformed_cosech: pole at y = ln(sqrt(q))");
  }
  return checked(1.0 / (std::sqrt(q) * std::sinh(t)), "deformed_cosech");
}

double deformed_coth(double y, double q) {
  const DeformedArg arg(y, q);
  const double t = arg.shifted();
  if (t == 0.0) {
    throw PoleError("deformed_coth: pole at y = ln(sqrt(q))");
  }
  return checked(1.0 / std::tanh(t), "deformed_coth");
}

double deformed_log_cosh(double y, double q) {
  const DeformedArg arg(y, q);
  const double t = std::abs(arg.shifted());
  return 0.5 * std::log(q) + t + std::log1p(std::exp(-2.0 * t)) - std::numbers::ln2;
}

complex jacobi_explicit(const JacobiParams& p, complex z) {
  if (p.n < 0) {
    throw DomainError("jacobi: degree must be >= 0");
  }
  const double n = p.n;
  const complex zm = 0.5 * (z - 1.0);
  const complex zp = 0.5 * (z + 1.0);
  complex sum{0.0, 0.0};
  for (int s = 0; s <= p.n; ++s) {
    sum += binomial(n + p.a, p.n - s) * binomial(n + p.b, s) * std::pow(zm, s) *
           std::pow(zp, p.n - s);
  }
  return checked(sum);
}

complex jacobi_eval(const JacobiParams& p, complex z) {
  if (p.n < 0) {
    throw DomainError("jacobi: degree must be >= 0");
  }
  const complex a = p.a;
  const complex b = p.b;
  complex prev{1.0, 0.0};
  if (p.n == 0) {
    return prev;
  }
  complex cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * z;
  for (int k = 2; k <= p.n; ++k) {
    const complex s = 2.0 * k + a + b;
    const complex c1 = 2.0 * k * (static_cast<double>(k) + a + b) * (s - 2.0);
    if (std::abs(c1) < 1e-12 * (1.0 + std::abs(s) * std::abs(s))) {
      return jacobi_explicit(p, z);
    }
    const complex c2 = (s - 1.0) * (s * (s - 2.0) * z + a * a - b * b);
    const complex c3 = 2.0 * (static_cast<double>(k) + a - 1.0) *
                       (static_cast<double>(k) + b - 1.0) * s;
    const complex next = (c2 * cur - c3 * prev) / c1;
    prev = cur;
    cur = next;
  }
  return checked(cur);
}

double cos_power_antiderivative(int p, double theta) {
  if (p < 0) {
    throw DomainError("cos_power_antiderivative: power must be a nonnegative integer");
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  double value = (p % 2 == 0) ? theta : s;
  double c_pow = (p % 2 == 0) ? c : c * c;  // cos^(k-1) for the first k below
  for (int k = (p % 2 == 0) ? 2 : 3; k <= p; k += 2) {
    value = s * c_pow / k + (static_cast<double>(k - 1) / k) * value;
    c_pow *= c * c;
  }
  return value;
}

double cos_power_half_period(double p) {
  if (!(p > -1.0)) {
    throw DomainError("cos_power_half_period: power must exceed -1");
  }
  return 0.5 * std::sqrt(std::numbers::pi) *
         std::exp(std::lgamma(0.5 * (p + 1.0)) - std::lgamma(0.5 * p + 1.0));
}

double integrate_adaptive(const std::function<double(double)>& f, double x0, double x1,
                          double tol) {
  if (!(tol > 0.0)) {
    throw DomainError("integrate_adaptive: tolerance must be > 0");
  }
  if (!std::isfinite(x0) || !std::isfinite(x1)) {
    throw DomainError("integrate_adaptive: limits must be finite");
  }
  if (x0 == x1) {
    return 0.0;
  }
  if (x1 < x0) {
    return -integrate_adaptive(f, x1, x0, tol);
  }

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  std::priority_queue<Panel> panels;
  Panel first = gauss_kronrod_15(f, x0, x1);
  double total_error = first.error;
  double total_abs = first.resabs;
  panels.push(first);

  int count = 1;
  while (total_error > std::max(tol, 50.0 * kEps * total_abs)) {
    if (count >= kMaxSubdivisions) {
      std::ostringstream msg;
      msg << "integrate_adaptive: no convergence on [" << x0 << ", " << x1 << "] after "
          << count << " panels (error estimate " << total_error << ", tol " << tol << ")";
      throw ConvergenceError(msg.str());
    }
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      std::ostringstream msg;
      msg << "integrate_adaptive: panel at x = " << worst.a
          << " cannot be subdivided further (error estimate " << total_error << ")";
      throw ConvergenceError(msg.str());
    }
    panels.pop();
    const Panel left = gauss_kronrod_15(f, worst.a, mid);
    const Panel right = gauss_kronrod_15(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    total_abs += left.resabs + right.resabs - worst.resabs;
    panels.push(left);
    panels.push(right);
    ++count;
    if (total_error < 0.0) {
      total_error = 0.0;
    }
  }

  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  double result = 0.0;
  for (const Panel& p : all) {
    result += p.result;
  }
  return result;
}

}  // namespace pdm::specfun
