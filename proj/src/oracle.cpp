#include "pdm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdm/errors.hpp"
#include "pdm/pct.hpp"

namespace pdm::oracle {

namespace {

constexpr double kErrorFloor = 1e-8;

}  // namespace

void Grid::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    std::ostringstream msg;
    msg << "grid requires finite x_min < x_max, got [" << x_min << ", " << x_max << "]";
    throw DomainError(msg.str());
  }
  if (n_points < 3) {
    throw DomainError("grid requires n_points >= 3");
  }
}

std::vector<double> sample(const Sampler& f, const Grid& g) {
  g.validate();
  std::vector<double> out(g.n_points);
  for (int i = 0; i < g.n_points; ++i) {
    out[i] = f(g.node(i));
  }
  return out;
}

FdOperator::FdOperator(const Grid& g, const Sampler& potential, const Sampler& inverse_mass,
                       double kappa)
    : grid_(g) {
  g.validate();
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw DomainError("kinetic coefficient kappa must be finite and > 0");
  }
  const int n = g.n_points;
  const double h = g.spacing();
  scale_ = kappa / (h * h);

  half_weight_.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    const double x = g.x_min + (i + 0.5) * h;
    const double w = inverse_mass(x);
    if (!(w > 0.0) || !std::isfinite(w)) {
      std::ostringstream msg;
      msg << "mass must be positive and finite on the grid; 1/m = " << w << " at x = " << x;
      throw DomainError(msg.str());
    }
    half_weight_[i] = w;
  }

  matrix_.diag.resize(n - 2);
  matrix_.off.resize(n - 3);
  for (int r = 0; r < n - 2; ++r) {
    const int i = r + 1;
    const double v = potential(g.node(i));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "potential is not finite at x = " << g.node(i);
      throw DomainError(msg.str());
    }
    matrix_.diag[r] = scale_ * (half_weight_[i - 1] + half_weight_[i]) + v;
    if (r + 1 < n - 2) {
      matrix_.off[r] = -scale_ * half_weight_[i];
    }
  }
}

FdOperator FdOperator::constant_mass(const Grid& g, const Sampler& potential, double kappa) {
  return FdOperator(g, potential, [](double) { return 1.0; }, kappa);
}

FdOperator FdOperator::pdm(const Grid& g, const Sampler& potential, const mass::MassProfile& m,
                           double kappa) {
  mass::validate(m);
  return FdOperator(g, potential, [&m](double x) { return 1.0 / mass::mass_value(m, x); }, kappa);
}

std::vector<double> FdOperator::apply(std::span<const double> psi) const {
  const int n = grid_.n_points;
  if (static_cast<int>(psi.size()) != n) {
    throw DomainError("FdOperator::apply: vector length does not match the grid");
  }
  std::vector<double> out(n - 2);
  for (int r = 0; r < n - 2; ++r) {
    const int i = r + 1;
    out[r] = -scale_ * half_weight_[i - 1] * psi[i - 1] + matrix_.diag[r] * psi[i] -
             scale_ * half_weight_[i] * psi[i + 1];
  }
  return out;
}

void normalize(std::vector<double>& psi, double h) {
  double sum = 0.0;
  double peak = 0.0;
  std::size_t peak_at = 0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    sum += psi[i] * psi[i];
    if (std::abs(psi[i]) > peak) {
      peak = std::abs(psi[i]);
      peak_at = i;
    }
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw DomainError("normalize: vector has zero or non-finite norm");
  }
  double factor = 1.0 / std::sqrt(sum * h);
  if (psi[peak_at] < 0.0) {
    factor = -factor;
  }
  for (double& v : psi) {
    v *= factor;
  }
}

std::vector<EigenPair> solve(const FdOperator& op, int k) {
  const std::vector<double> energies = lowest_eigenvalues(op.matrix(), k);
  const double h = op.grid().spacing();
  std::vector<EigenPair> out;
  out.reserve(k);
  for (double e : energies) {
    const std::vector<double> z = eigenvector(op.matrix(), e);
    EigenPair pair{e, std::vector<double>(op.grid().n_points, 0.0)};
    std::copy(z.begin(), z.end(), pair.vector.begin() + 1);
    normalize(pair.vector, h);
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<EigenPair> solve_constant_mass(const Sampler& potential, const Grid& g, int k,
                                           double kappa) {
  return solve(FdOperator::constant_mass(g, potential, kappa), k);
}

std::vector<EigenPair> solve_pdm(const Sampler& potential, const mass::MassProfile& m,
                                 const Grid& g, int k, double kappa) {
  return solve(FdOperator::pdm(g, potential, m, kappa), k);
}

double residual_norm(const FdOperator& op, std::span<const double> psi, double energy) {
  const std::vector<double> h_psi = op.apply(psi);
  double num = 0.0;
  for (std::size_t r = 0; r < h_psi.size(); ++r) {
    const double d = h_psi[r] - energy * psi[r + 1];
    num += d * d;
  }
  double den = 0.0;
  for (double v : psi) {
    den += v * v;
  }
  if (den == 0.0) {
    return 0.0;
  }
  return std::sqrt(num / den);
}

int count_nodes(std::span<const double> psi, double threshold) {
  double peak = 0.0;
  for (double v : psi) {
    peak = std::max(peak, std::abs(v));
  }
  const double cutoff = threshold * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double v : psi) {
    if (!(std::abs(v) > cutoff)) {
      continue;
    }
    const int s = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) {
      ++nodes;
    }
    last_sign = s;
  }
  return nodes;
}

bool StateRecord::ok(double tolerance) const {
  return error.empty() && abs_error < tolerance && nodes_numeric == nodes_expected &&
         nodes_analytic == nodes_expected;
}

double StateRecord::convergence_ratio() const {
  if (abs_error <= kErrorFloor || abs_error_refined <= 0.0) {
    return 0.0;
  }
  return abs_error / abs_error_refined;
}

bool VerificationReport::passed() const {
  return std::all_of(states.begin(), states.end(),
                     [this](const StateRecord& s) { return s.ok(tolerance); });
}

VerificationReport verify_isospectrality(const mass::MassProfile& profile, double alpha,
                                         const refpot::ReferencePotential& ref,
                                         const std::vector<int>& states, const Grid& g,
                                         double kappa, const VerifyOptions& options) {
  g.validate();
  refpot::validate(ref);
  if (const auto* scarf = std::get_if<refpot::ScarfParams>(&ref);
      scarf != nullptr && refpot::is_experimental_branch(*scarf) && !options.allow_experimental) {
    throw DomainError(
        "Scarf branch other than sigma = tau = +1 is experimental; verification requires the "
        "override flag");
  }

  const pct::PctContext ctx = pct::build_context(profile, alpha, kappa);

  VerificationReport report;
  report.profile = mass::describe(profile);
  report.reference = refpot::describe(ref);
  report.alpha = alpha;
  report.kappa = kappa;
  report.tolerance = options.tolerance;
  report.grid = g;
  report.refined_grid = options.refine ? g.refined() : g;
  report.mapping_source = mass::to_string(ctx.mapping.source());

  for (int n : states) {
    StateRecord rec;
    rec.n = n;
    rec.nodes_expected = n;
    try {
      rec.energy_analytic = pct::transform_energy(ctx, ref, n);
      const pct::TargetPotential target = pct::target_potential(ctx, ref, n);
      const Sampler vt = [&target](double x) { return target(x); };

      const FdOperator op = FdOperator::pdm(g, vt, profile, kappa);
      const std::vector<EigenPair> pairs = solve(op, n + 1);
      rec.energy_numeric = pairs[n].energy;
      rec.abs_error = std::abs(rec.energy_numeric - rec.energy_analytic);
      rec.nodes_numeric = count_nodes(pairs[n].vector);

      const Sampler psi = pct::transform_wavefunction(ctx, refpot::wavefunction(ref, n));
      const std::vector<double> psi_samples = sample(psi, g);
      rec.residual = residual_norm(op, psi_samples, rec.energy_analytic);
      rec.nodes_analytic = count_nodes(psi_samples);

      if (options.refine) {
        const FdOperator fine = FdOperator::pdm(report.refined_grid, vt, profile, kappa);
        rec.energy_numeric_refined = lowest_eigenvalues(fine.matrix(), n + 1)[n];
        rec.abs_error_refined = std::abs(rec.energy_numeric_refined - rec.energy_analytic);
      } else {
        rec.energy_numeric_refined = rec.energy_numeric;
        rec.abs_error_refined = rec.abs_error;
      }
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    report.states.push_back(std::move(rec));
  }
  return report;
}

}  // namespace pdm::oracle
