#include "pdm/refpot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "pdm/errors.hpp"
#include "pdm/specfun.hpp"

namespace pdm::refpot {

using specfun::complex;

namespace {

// Guard band for the strict bound-state inequalities: a level sitting on the
// threshold up to rounding is excluded.
double strict_margin(double bound) { return 1e-12 * std::max(1.0, std::abs(bound)); }

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << name << " must be finite and > 0, got " << value;
    throw DomainError(msg.str());
  }
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

void require_level(int n, int count) {
  if (n < 0 || n >= count) {
    std::ostringstream msg;
    msg << "quantum number " << n << " outside bound-state range: valid range 0 <= n < "
        << count;
    throw IndexError(msg.str());
  }
}

double rm_radical(const RosenMorseParams& p) {
  return std::sqrt(0.25 + p.V1 / (p.q * p.beta * p.beta));
}

// Half-sum (sigma sqrt(A+) + tau sqrt(A-)) / 2 of the Scarf spectrum.
complex scarf_half_sum(const ScarfParams& p) {
  const auto [rp, rm] = scarf_roots(p);
  return 0.5 * (static_cast<double>(p.sigma) * rp + static_cast<double>(p.tau) * rm);
}

}  // namespace

void validate(const RosenMorseParams& p) {
  require_finite(p.V1, "V1");
  require_finite(p.V2, "V2");
  if (p.V1 < 0.0) {
    throw DomainError("Rosen-Morse V1 must be >= 0");
  }
  require_positive(p.beta, "beta");
  require_positive(p.q, "q");
}

void validate(const ScarfParams& p) {
  require_finite(p.V1, "V1");
  require_finite(p.V2, "V2");
  require_positive(p.beta, "beta");
  require_positive(p.q, "q");
  if ((p.sigma != 1 && p.sigma != -1) || (p.tau != 1 && p.tau != -1)) {
    throw DomainError("Scarf branch signs sigma and tau must be +1 or -1");
  }
}

double rm_potential(const RosenMorseParams& p, double y) {
  validate(p);
  const double s = specfun::deformed_sech(p.beta * y, p.q);
  return -p.V1 * s * s - p.V2 * specfun::deformed_tanh(p.beta * y, p.q);
}

int rm_num_bound_states(const RosenMorseParams& p) {
  validate(p);
  const double bound = rm_radical(p) - 0.5;
  const double b2 = p.beta * p.beta;
  int count = 0;
  while (static_cast<double>(count) < bound - strict_margin(bound)) {
    const double eta = count + 0.5 - rm_radical(p);
    const double tilt_bound = 2.0 * b2 * eta * eta;
    if (!(std::abs(p.V2) < tilt_bound - strict_margin(tilt_bound))) {
      break;
    }
    ++count;
  }
  return count;
}

double rm_eta(const RosenMorseParams& p, int n) {
  require_level(n, rm_num_bound_states(p));
  return n + 0.5 - rm_radical(p);
}

double rm_energy(const RosenMorseParams& p, int n) {
  const double eta = rm_eta(p, n);
  if (eta == 0.0) {
    throw DegenerateStateError("rm_energy: eta = 0");
  }
  const double b2 = p.beta * p.beta;
  return -p.V2 * p.V2 / (4.0 * b2 * eta * eta) - b2 * eta * eta;
}

Sampler rm_wavefunction(const RosenMorseParams& p, int n) {
  const double eta = rm_eta(p, n);
  const double tilt = p.V2 / (2.0 * p.beta * p.beta * eta);
  const double p_plus = 0.5 * (eta + tilt);
  const double p_minus = 0.5 * (eta - tilt);
  const specfun::JacobiParams jac{n, complex(-2.0 * p_plus), complex(-2.0 * p_minus)};
  const double drift = -p.V2 / (2.0 * p.beta * eta);
  return [p, eta, drift, jac](double y) {
    const double by = p.beta * y;
    const double envelope = std::exp(eta * specfun::deformed_log_cosh(by, p.q) + drift * y);
    const double poly = specfun::jacobi_eval(jac, -specfun::deformed_tanh(by, p.q)).real();
    return envelope * poly;
  };
}

double scarf_potential(const ScarfParams& p, double y) {
  validate(p);
  const double by = p.beta * y;
  const double s = specfun::deformed_sech(by, p.q);
  return -p.V1 * s * s - p.V2 * s * specfun::deformed_tanh(by, p.q);
}

std::pair<complex, complex> scarf_roots(const ScarfParams& p) {
  validate(p);
  const double b2 = p.beta * p.beta;
  const double base = 0.25 + p.V1 / (p.q * b2);
  // V2 / (i beta^2 sqrt q) = -i V2 / (beta^2 sqrt q)
  const double w = p.V2 / (b2 * std::sqrt(p.q));
  return {std::sqrt(complex(base, -w)), std::sqrt(complex(base, w))};
}

std::pair<complex, complex> scarf_omegas(const ScarfParams& p) {
  const auto [rp, rm] = scarf_roots(p);
  return {-0.25 + 0.5 * static_cast<double>(p.sigma) * rp,
          -0.25 + 0.5 * static_cast<double>(p.tau) * rm};
}

bool is_experimental_branch(const ScarfParams& p) { return !(p.sigma == 1 && p.tau == 1); }

int scarf_num_bound_states(const ScarfParams& p) {
  const double bound = scarf_half_sum(p).real() - 0.5;
  int count = 0;
  while (static_cast<double>(count) < bound - strict_margin(bound)) {
    ++count;
  }
  return count;
}

double scarf_energy(const ScarfParams& p, int n) {
  require_level(n, scarf_num_bound_states(p));
  const complex half_sum = scarf_half_sum(p);
  if (std::abs(half_sum.imag()) >= 1e-10 * std::max(1.0, std::abs(half_sum))) {
    std::ostringstream msg;
    msg << "scarf_energy: branch (sigma=" << p.sigma << ", tau=" << p.tau
        << ") gives a non-real spectrum, imaginary residue " << half_sum.imag();
    throw NonRealEnergyError(msg.str());
  }
  const double bracket = n + 0.5 - half_sum.real();
  return -p.beta * p.beta * bracket * bracket;
}

Sampler scarf_wavefunction(const ScarfParams& p, int n) {
  require_level(n, scarf_num_bound_states(p));
  const auto [w_plus, w_minus] = scarf_omegas(p);
  const complex decay = w_plus + w_minus;
  const complex twist = w_plus - w_minus;
  const specfun::JacobiParams jac{n, -2.0 * w_plus - 0.5, -2.0 * w_minus - 0.5};

  auto raw = [p, decay, twist, jac](double y) {
    const double by = p.beta * y;
    // q^{-1/2} sinh_q(beta y) = sinh(beta y - ln sqrt q)
    const double u = specfun::deformed_sinh(by, p.q) / std::sqrt(p.q);
    const complex z(0.0, u);
    // artanh(i u) = i arctan(u)
    const complex phase = twist * complex(0.0, std::atan(u));
    const complex envelope = std::exp(-decay * specfun::deformed_log_cosh(by, p.q) + phase);
    return envelope * specfun::jacobi_eval(jac, z);
  };

  constexpr int kPhasePoints = 4001;
  const double center = 0.5 * std::log(p.q) / p.beta;
  const double half_width = 40.0 / p.beta;
  complex reference{0.0, 0.0};
  std::vector<complex> samples(kPhasePoints);
  for (int i = 0; i < kPhasePoints; ++i) {
    const double y = center - half_width + 2.0 * half_width * i / (kPhasePoints - 1);
    samples[i] = raw(y);
    if (std::abs(samples[i]) > std::abs(reference)) {
      reference = samples[i];
    }
  }
  if (reference == complex(0.0, 0.0)) {
    throw PhaseError("scarf_wavefunction: wavefunction vanishes on the reference grid");
  }
  constexpr double kImagTol = 1e-8;
  for (const complex& s : samples) {
    const complex v = s / reference;
    if (std::abs(v.imag()) >= kImagTol) {
      std::ostringstream msg;
      msg << "scarf_wavefunction: imaginary residue " << std::abs(v.imag())
          << " after phase removal (n = " << n << ")";
      throw PhaseError(msg.str());
    }
  }
  return [raw, reference, n](double y) {
    const complex v = raw(y) / reference;
    if (std::abs(v.imag()) >= kImagTol * std::max(1.0, std::abs(v))) {
      std::ostringstream msg;
      msg << "scarf_wavefunction: imaginary residue " << std::abs(v.imag()) << " at y = " << y
          << " (n = " << n << ")";
      throw PhaseError(msg.str());
    }
    return v.real();
  };
}

void validate(const ReferencePotential& ref) {
  std::visit([](const auto& p) { validate(p); }, ref);
}

double potential(const ReferencePotential& ref, double y) {
  return std::visit(
      [y](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, RosenMorseParams>) {
          return rm_potential(p, y);
        } else {
          return scarf_potential(p, y);
        }
      },
      ref);
}

double energy(const ReferencePotential& ref, int n) {
  return std::visit(
      [n](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, RosenMorseParams>) {
          return rm_energy(p, n);
        } else {
          return scarf_energy(p, n);
        }
      },
      ref);
}

int num_bound_states(const ReferencePotential& ref) {
  return std::visit(
      [](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, RosenMorseParams>) {
          return rm_num_bound_states(p);
        } else {
          return scarf_num_bound_states(p);
        }
      },
      ref);
}

Sampler wavefunction(const ReferencePotential& ref, int n) {
  return std::visit(
      [n](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, RosenMorseParams>) {
          return rm_wavefunction(p, n);
        } else {
          return scarf_wavefunction(p, n);
        }
      },
      ref);
}

BoundState bound_state(const ReferencePotential& ref, int n) {
  return BoundState{n, energy(ref, n), wavefunction(ref, n)};
}

std::string describe(const ReferencePotential& ref) {
  std::ostringstream out;
  out.precision(12);
  std::visit(
      [&out](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, RosenMorseParams>) {
          out << "rosen-morse(V1=" << p.V1 << ", V2=" << p.V2 << ", beta=" << p.beta
              << ", q=" << p.q << ")";
        } else {
          out << "scarf(V1=" << p.V1 << ", V2=" << p.V2 << ", beta=" << p.beta << ", q=" << p.q
              << ", sigma=" << p.sigma << ", tau=" << p.tau << ")";
        }
      },
      ref);
  return out.str();
}

}  // namespace pdm::refpot
