#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>

namespace pdm::refpot {

using Sampler = std::function<double(double)>;

/// -V1 sech_q^2(beta y) - V2 tanh_q(beta y)
struct RosenMorseParams {
  double V1 = 0.0;
  double V2 = 0.0;
  double beta = 1.0;
  double q = 1.0;
};

/// -V1 sech_q^2(beta y) - V2 sech_q(beta y) tanh_q(beta y), branch signs sigma, tau = +-1.
struct ScarfParams {
  double V1 = 0.0;
  double V2 = 0.0;
  double beta = 1.0;
  double q = 1.0;
  int sigma = 1;
  int tau = 1;
};

using ReferencePotential = std::variant<RosenMorseParams, ScarfParams>;

struct BoundState {
  int n = 0;
  double energy = 0.0;
  Sampler wavefunction;
};

// Energies are eigenvalues of -d^2/dy^2 + V (unit kinetic coefficient).

void validate(const RosenMorseParams& p);
void validate(const ScarfParams& p);

double rm_potential(const RosenMorseParams& p, double y);
/// n + 1/2 - sqrt(1/4 + V1/(q beta^2)); negative for every admissible n.
double rm_eta(const RosenMorseParams& p, int n);
double rm_energy(const RosenMorseParams& p, int n);
/// Levels with n < sqrt(1/4 + V1/(q beta^2)) - 1/2 whose wavefunction also
/// decays on the low side of the tilt, i.e. |V2| < 2 beta^2 eta_n^2.
int rm_num_bound_states(const RosenMorseParams& p);
Sampler rm_wavefunction(const RosenMorseParams& p, int n);

double scarf_potential(const ScarfParams& p, double y);
double scarf_energy(const ScarfParams& p, int n);
int scarf_num_bound_states(const ScarfParams& p);
/// Real, phase-fixed wavefunction: the complex closed form divided by its
/// largest-modulus sample on a reference grid. Throws PhaseError if the
/// remainder is not real to 1e-8.
Sampler scarf_wavefunction(const ScarfParams& p, int n);

/// Square roots of 1/4 + V1/(q beta^2) -+ i V2/(beta^2 sqrt q).
std::pair<std::complex<double>, std::complex<double>> scarf_roots(const ScarfParams& p);
/// (omega_plus, omega_minus)
std::pair<std::complex<double>, std::complex<double>> scarf_omegas(const ScarfParams& p);
/// Any branch other than sigma = tau = +1.
bool is_experimental_branch(const ScarfParams& p);

// Dispatch over the variant.
void validate(const ReferencePotential& ref);
double potential(const ReferencePotential& ref, double y);
double energy(const ReferencePotential& ref, int n);
int num_bound_states(const ReferencePotential& ref);
Sampler wavefunction(const ReferencePotential& ref, int n);
BoundState bound_state(const ReferencePotential& ref, int n);
std::string describe(const ReferencePotential& ref);

}  // namespace pdm::refpot
