#include "rflight/temporal.hpp"

#include <boost/random/gamma_distribution.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rflight::temporal {

double intertime_density(const IntertimeVector& v, int d, double nu) {
  if (d < 2 || !(nu >= 0.0)) {
    throw std::domain_error("intertime_density requires d >= 2 and nu >= 0");
  }
  if (v.taus.size() < 2) {
    throw std::domain_error("intertime_density requires at least one direction change");
  }
  if (!(v.t > 0.0)) {
    return 0.0;
  }
  const auto n = static_cast<double>(v.taus.size() - 1);
  double free_sum = 0.0;
  for (std::size_t k = 0; k + 1 < v.taus.size(); ++k) {
    free_sum += v.taus[k];
  }
  const double last = v.t - free_sum;
  const double a = dirichlet_shape(d, nu);
  double log_prod = 0.0;
  for (std::size_t k = 0; k + 1 < v.taus.size(); ++k) {
    if (!(v.taus[k] > 0.0)) return 0.0;
    log_prod += std::log(v.taus[k]);
  }
  if (!(last > 0.0)) return 0.0;
  log_prod += std::log(last);
  const double log_density = std::lgamma((n + 1.0) * a) - (n + 1.0) * std::lgamma(a) +
                             (a - 1.0) * log_prod - ((n + 1.0) * a - 1.0) * std::log(v.t);
  return std::exp(log_density);
}

IntertimeVector sample_intertimes(int n, int d, double nu, double t, RandomStream& rng) {
  if (n < 1 || d < 2 || !(nu >= 0.0) || !(t > 0.0)) {
    throw std::domain_error("sample_intertimes requires n >= 1, d >= 2, nu >= 0, t > 0");
  }
  boost::random::gamma_distribution<double> draw(dirichlet_shape(d, nu), 1.0);
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (double& gk : g) {
    gk = draw(rng);
  }
  const double total = std::accumulate(g.begin(), g.end(), 0.0);
  IntertimeVector v{std::vector<double>(g.size()), t};
  double used = 0.0;
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    v.taus[k] = t * (g[k] / total);
    used += v.taus[k];
  }
  const double residual = t - used;
  v.taus.back() = residual > 0.0 ? residual : t * (g.back() / total);
  return v;
}

}  // namespace rflight::temporal
