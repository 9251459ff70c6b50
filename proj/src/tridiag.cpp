#include "pdm/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pdm/errors.hpp"

namespace pdm::oracle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxBisection = 400;

double pivot_floor(const SymmetricTridiagonal& t) {
  double max_off = 1.0;
  for (double b : t.off) {
    max_off = std::max(max_off, b * b);
  }
  return std::numeric_limits<double>::min() * max_off;
}

void check_shape(const SymmetricTridiagonal& t) {
  if (t.diag.empty() || t.off.size() + 1 != t.diag.size()) {
    throw DomainError("symmetric tridiagonal matrix has inconsistent dimensions");
  }
}

}  // namespace

int count_below(const SymmetricTridiagonal& t, double lambda) {
  check_shape(t);
  const double pivmin = pivot_floor(t);
  int count = 0;
  double d = t.diag[0] - lambda;
  for (std::size_t i = 0;; ++i) {
    if (std::abs(d) < pivmin) {
      d = -pivmin;
    }
    if (d < 0.0) {
      ++count;
    }
    if (i + 1 == t.diag.size()) {
      break;
    }
    d = (t.diag[i + 1] - lambda) - t.off[i] * t.off[i] / d;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t, int k) {
  check_shape(t);
  if (k < 1 || k > t.size()) {
    std::ostringstream msg;
    msg << "requested " << k << " eigenvalues of a " << t.size() << "x" << t.size() << " matrix";
    throw DomainError(msg.str());
  }

  // Gershgorin interval
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < t.size(); ++i) {
    const double radius = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) +
                          (i + 1 < t.size() ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  const double spread = std::max(std::abs(lo), std::abs(hi));
  lo -= 2.0 * kEps * spread + pivot_floor(t);
  hi += 2.0 * kEps * spread + pivot_floor(t);

  std::vector<double> values;
  values.reserve(k);
  double floor_bound = lo;
  for (int j = 0; j < k; ++j) {
    double a = floor_bound;
    double b = hi;
    int iter = 0;
    while (b - a > 2.0 * kEps * std::max(std::abs(a), std::abs(b)) + pivot_floor(t)) {
      if (++iter > kMaxBisection) {
        std::ostringstream msg;
        msg << "bisection for eigenvalue " << j << " did not converge: bracket [" << a << ", "
            << b << "] after " << kMaxBisection << " steps";
        throw ConvergenceError(msg.str());
      }
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) {
        break;
      }
      if (count_below(t, mid) > j) {
        b = mid;
      } else {
        a = mid;
      }
    }
    const double lambda = 0.5 * (a + b);
    values.push_back(lambda);
    floor_bound = a;
  }
  return values;
}

std::vector<double> eigenvector(const SymmetricTridiagonal& t, double lambda) {
  check_shape(t);
  const int n = t.size();
  if (n == 1) {
    return {1.0};
  }
  const double pivmin = pivot_floor(t);
  auto guard = [pivmin](double d) { return std::abs(d) < pivmin ? -pivmin : d; };

  std::vector<double> forward(n);
  std::vector<double> backward(n);
  forward[0] = guard(t.diag[0] - lambda);
  for (int i = 1; i < n; ++i) {
    forward[i] = guard((t.diag[i] - lambda) - t.off[i - 1] * t.off[i - 1] / forward[i - 1]);
  }
  backward[n - 1] = guard(t.diag[n - 1] - lambda);
  for (int i = n - 2; i >= 0; --i) {
    backward[i] = guard((t.diag[i] - lambda) - t.off[i] * t.off[i] / backward[i + 1]);
  }

  int twist = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double gamma = forward[i] + backward[i] - (t.diag[i] - lambda);
    if (std::abs(gamma) < best) {
      best = std::abs(gamma);
      twist = i;
    }
  }

  std::vector<double> z(n, 0.0);
  z[twist] = 1.0;
  for (int i = twist - 1; i >= 0; --i) {
    z[i] = -(t.off[i] / forward[i]) * z[i + 1];
  }
  for (int i = twist + 1; i < n; ++i) {
    z[i] = -(t.off[i - 1] / backward[i]) * z[i - 1];
  }
  return z;
}

}  // namespace pdm::oracle
