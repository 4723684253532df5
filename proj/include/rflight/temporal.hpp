#pragma once

#include <vector>

#include "rflight/random.hpp"

namespace rflight::temporal {

/// Waiting times tau_1..tau_{n+1} between direction changes on [0, t].
/// The last entry is always stored as the residual t - sum of the others.
struct IntertimeVector {
  std::vector<double> taus;
  double t = 0.0;

  std::size_t changes() const noexcept { return taus.empty() ? 0 : taus.size() - 1; }
};

/// Rescaled Dirichlet density of (tau_1..tau_n):
///   Gamma((n+1)a) / Gamma(a)^{n+1} * prod tau_k^{a-1} / t^{(n+1)a - 1},
/// with a = 2nu + d - 1. Zero outside the open simplex.
double intertime_density(const IntertimeVector& v, int d, double nu);

/// tau_k = t G_k / sum G with G_k ~ Gamma(2nu + d - 1, 1) i.i.d.
IntertimeVector sample_intertimes(int n, int d, double nu, double t, RandomStream& rng);

/// Dirichlet shape shared by every waiting time, 2nu + d - 1.
inline double dirichlet_shape(int d, double nu) { return 2.0 * nu + d - 1.0; }

}  // namespace rflight::temporal
