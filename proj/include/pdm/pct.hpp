#pragma once

#include "pdm/massprofile.hpp"
#include "pdm/refpot.hpp"

namespace pdm::pct {

/// Transformation data: phi(y) = m^alpha psi(x), y = f(x), kinetic operator -kappa d^2/dy^2.
struct PctContext {
  double alpha = 0.0;
  double kappa = 1.0;
  mass::MassProfile profile;
  mass::Mapping mapping;
};

enum class MappingPolicy { prefer_closed_form, force_quadrature };

/// Uses the closed-form mapping when one exists. With force_quadrature the
/// mapping is integrated numerically but anchored where the closed form is.
PctContext build_context(const mass::MassProfile& profile, double alpha, double kappa = 1.0,
                         MappingPolicy policy = MappingPolicy::prefer_closed_form);

/// -kappa alpha / m [m''/m - (alpha + 2) (m'/m)^2], the mass-ordering part of
/// the target potential.
double ordering_correction(const PctContext& ctx, double x);

/// Target potential of level n:
///   V~(x) = m^(4 alpha + 1) V(f(x)) + (1 - m^(4 alpha + 1)) E_n + ordering_correction(x).
/// It depends on n unless alpha = -1/4.
class TargetPotential {
public:
  TargetPotential(PctContext ctx, refpot::ReferencePotential reference, int n);

  double operator()(double x) const;

  const PctContext& context() const { return ctx_; }
  const refpot::ReferencePotential& reference() const { return reference_; }
  int state_index() const { return n_; }
  double energy() const { return energy_; }

private:
  PctContext ctx_;
  refpot::ReferencePotential reference_;
  int n_;
  double energy_;
};

TargetPotential target_potential(const PctContext& ctx, const refpot::ReferencePotential& ref,
                                 int n);

/// psi(x) = m(x)^(-alpha) phi(f(x))
refpot::Sampler transform_wavefunction(const PctContext& ctx, refpot::Sampler phi);

/// The transformation is isospectral: returns the reference energy E_n.
double transform_energy(const PctContext& ctx, const refpot::ReferencePotential& ref, int n);

}  // namespace pdm::pct
