#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pdm/massprofile.hpp"
#include "pdm/refpot.hpp"
#include "pdm/tridiag.hpp"

namespace pdm::oracle {

using Sampler = std::function<double(double)>;

struct Grid {
  double x_min = -12.0;
  double x_max = 12.0;
  int n_points = 4000;

  void validate() const;
  double spacing() const { return (x_max - x_min) / (n_points - 1); }
  double node(int i) const { return x_min + i * spacing(); }
  /// Same window with 2N - 1 points, so the spacing is exactly halved.
  Grid refined() const { return Grid{x_min, x_max, 2 * n_points - 1}; }
};

std::vector<double> sample(const Sampler& f, const Grid& g);

/// Dirichlet discretization of -kappa d/dx (1/m) d/dx + V on the interior
/// nodes of a grid, with 1/m sampled at half points.
class FdOperator {
public:
  FdOperator(const Grid& g, const Sampler& potential, const Sampler& inverse_mass, double kappa);

  static FdOperator constant_mass(const Grid& g, const Sampler& potential, double kappa = 1.0);
  static FdOperator pdm(const Grid& g, const Sampler& potential, const mass::MassProfile& m,
                        double kappa = 1.0);

  const Grid& grid() const { return grid_; }
  const SymmetricTridiagonal& matrix() const { return matrix_; }

  /// H psi on the interior rows; psi holds all N grid samples, boundary values included.
  std::vector<double> apply(std::span<const double> psi) const;

private:
  Grid grid_;
  double scale_;                    // kappa / h^2
  std::vector<double> half_weight_; // 1/m(x_{i+1/2}), i = 0 .. N-2
  SymmetricTridiagonal matrix_;
};

struct EigenPair {
  double energy = 0.0;
  std::vector<double> vector;  // all N nodes, zero at both ends
};

/// Lowest k eigenpairs, energies ascending, vectors normalized by normalize().
std::vector<EigenPair> solve(const FdOperator& op, int k);

std::vector<EigenPair> solve_constant_mass(const Sampler& potential, const Grid& g, int k,
                                           double kappa = 1.0);
std::vector<EigenPair> solve_pdm(const Sampler& potential, const mass::MassProfile& m,
                                 const Grid& g, int k, double kappa = 1.0);

/// Scale to sum psi_i^2 h = 1 and flip the sign so that the first sample of
/// largest magnitude is positive.
void normalize(std::vector<double>& psi, double h);

/// |H psi - E psi|_2 / |psi|_2 over the interior rows.
double residual_norm(const FdOperator& op, std::span<const double> psi, double energy);

/// Strict sign changes between consecutive samples that both exceed threshold * max|psi|.
int count_nodes(std::span<const double> psi, double threshold = 1e-8);

struct StateRecord {
  int n = 0;
  double energy_analytic = 0.0;
  double energy_numeric = 0.0;
  double abs_error = 0.0;
  double residual = 0.0;
  int nodes_expected = 0;
  int nodes_analytic = -1;
  int nodes_numeric = -1;
  double energy_numeric_refined = 0.0;
  double abs_error_refined = 0.0;
  std::string error;  // empty unless a sub-step threw

  bool ok(double tolerance) const;
  /// abs_error / abs_error_refined, or 0 when either is below the floor.
  double convergence_ratio() const;
};

struct VerificationReport {
  std::string profile;
  std::string reference;
  double alpha = 0.0;
  double kappa = 1.0;
  double tolerance = 1e-3;
  Grid grid;
  Grid refined_grid;
  std::string mapping_source;
  std::vector<StateRecord> states;

  bool passed() const;
};

struct VerifyOptions {
  double tolerance = 1e-3;
  bool allow_experimental = false;
  bool refine = true;
};

/// Solves the PDM problem for each n-indexed target potential and compares
/// with the analytic reference energy. Sub-step failures land in
/// StateRecord::error. Throws DomainError for an experimental Scarf branch
/// unless options.allow_experimental is set.
VerificationReport verify_isospectrality(const mass::MassProfile& profile, double alpha,
                                         const refpot::ReferencePotential& ref,
                                         const std::vector<int>& states, const Grid& g,
                                         double kappa = 1.0, const VerifyOptions& options = {});

}  // namespace pdm::oracle
