#pragma once

#include <vector>

namespace pdm::oracle {

/// Real symmetric tridiagonal matrix; off[i] couples rows i and i + 1.
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  int size() const { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues strictly below lambda (Sturm sequence count).
int count_below(const SymmetricTridiagonal& t, double lambda);

/// The k smallest eigenvalues in ascending order, by bisection on the Sturm
/// count. Each eigenvalue is resolved to a few ulps of the bracketing interval.
std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t, int k);

/// Eigenvector for an accurate eigenvalue via the twisted factorization
/// T - lambda = N_r D_r N_r^T at the twist index with the smallest |gamma_r|.
/// Unnormalized, with component r equal to one.
std::vector<double> eigenvector(const SymmetricTridiagonal& t, double lambda);

}  // namespace pdm::oracle
