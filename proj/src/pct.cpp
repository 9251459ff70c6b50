#include "pdm/pct.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "pdm/errors.hpp"

namespace pdm::pct {

PctContext build_context(const mass::MassProfile& profile, double alpha, double kappa,
                         MappingPolicy policy) {
  mass::validate(profile);
  if (!std::isfinite(alpha)) {
    throw DomainError("alpha must be finite");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    std::ostringstream msg;
    msg << "kappa must be finite and > 0, got " << kappa;
    throw DomainError(msg.str());
  }
  auto closed = mass::closed_form_mapping(profile, alpha);
  if (policy == MappingPolicy::force_quadrature) {
    const double anchor = closed ? (*closed)(0.0) : 0.0;
    return PctContext{alpha, kappa, profile, mass::quadrature_mapping(profile, alpha, anchor)};
  }
  if (closed) {
    return PctContext{alpha, kappa, profile, *closed};
  }
  return PctContext{alpha, kappa, profile, mass::quadrature_mapping(profile, alpha, 0.0)};
}

double ordering_correction(const PctContext& ctx, double x) {
  const double m = mass::mass_value(ctx.profile, x);
  const double ratio1 = mass::mass_d1(ctx.profile, x) / m;
  const double ratio2 = mass::mass_d2(ctx.profile, x) / m;
  return -ctx.kappa * ctx.alpha / m * (ratio2 - (ctx.alpha + 2.0) * ratio1 * ratio1);
}

TargetPotential::TargetPotential(PctContext ctx, refpot::ReferencePotential reference, int n)
    : ctx_(std::move(ctx)),
      reference_(std::move(reference)),
      n_(n),
      energy_(refpot::energy(reference_, n)) {}

double TargetPotential::operator()(double x) const {
  const double m = mass::mass_value(ctx_.profile, x);
  const double weight = std::pow(m, 4.0 * ctx_.alpha + 1.0);
  const double mapped = refpot::potential(reference_, ctx_.mapping(x));
  return weight * mapped + (1.0 - weight) * energy_ + ordering_correction(ctx_, x);
}

TargetPotential target_potential(const PctContext& ctx, const refpot::ReferencePotential& ref,
                                 int n) {
  return TargetPotential(ctx, ref, n);
}

refpot::Sampler transform_wavefunction(const PctContext& ctx, refpot::Sampler phi) {
  return [ctx, phi = std::move(phi)](double x) {
    return std::pow(mass::mass_value(ctx.profile, x), -ctx.alpha) * phi(ctx.mapping(x));
  };
}

double transform_energy(const PctContext& /*ctx*/, const refpot::ReferencePotential& ref, int n) {
  return refpot::energy(ref, n);
}

}  // namespace pdm::pct
