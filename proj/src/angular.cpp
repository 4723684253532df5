#include "rflight/angular.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/random/beta_distribution.hpp>
#include <boost/random/bernoulli_distribution.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rflight::angular {
namespace {

constexpr double kPi = std::numbers::pi;

void require_nu(double nu) {
  if (!(nu >= 0.0)) {
    throw std::domain_error("drift parameter nu must be >= 0");
  }
}

void require_colatitude(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::domain_error("colatitude out of [0, pi]: " + std::to_string(theta));
  }
}

void require_azimuth(double phi) {
  if (!(phi >= 0.0 && phi <= 2.0 * kPi)) {
    throw std::domain_error("azimuth out of [0, 2 pi]: " + std::to_string(phi));
  }
}

double log_full_normalizer(int d, double nu) {
  return std::lgamma(nu + 0.5 * d) - std::log(2.0) - 0.5 * (d - 1) * std::log(kPi) -
         std::lgamma(nu + 0.5);
}

}  // namespace

AngleVector::AngleVector(int d, std::vector<double> thetas, double phi)
    : d_(d), thetas_(std::move(thetas)), phi_(phi) {
  if (d_ < 2) {
    throw std::domain_error("dimension must be >= 2");
  }
  if (thetas_.size() != static_cast<std::size_t>(d_ - 2)) {
    throw std::domain_error("AngleVector needs d - 2 colatitudes");
  }
  for (double th : thetas_) {
    require_colatitude(th);
  }
  require_azimuth(phi_);
}

double angular_density(const AngleVector& a, double nu) {
  require_nu(nu);
  const int d = a.dim();
  double value = std::exp(log_full_normalizer(d, nu));
  for (int j = 1; j <= d - 2; ++j) {
    value *= std::pow(std::sin(a.thetas()[static_cast<std::size_t>(j - 1)]), 2.0 * nu + d - 1 - j);
  }
  // pow(0, 0) == 1 keeps nu = 0 uniform at phi in {0, pi, 2pi}
  return value * std::pow(std::abs(std::sin(a.phi())), 2.0 * nu);
}

double marginal_angular_density(std::span<const double> angles, int d, int m, double nu) {
  require_nu(nu);
  if (d < 2 || m < 1 || m >= d) {
    throw std::domain_error("marginal_angular_density requires 1 <= m < d");
  }
  if (angles.size() != static_cast<std::size_t>(m)) {
    throw std::domain_error("marginal_angular_density expects m angles");
  }
  if (m == d - 1) {
    std::vector<double> thetas(angles.begin(), angles.end() - 1);
    return angular_density(AngleVector(d, std::move(thetas), angles.back()), nu);
  }
  double value = std::exp(std::lgamma(nu + 0.5 * d) - 0.5 * m * std::log(kPi) -
                          std::lgamma(nu + 0.5 * (d - m)));
  for (int j = 1; j <= m; ++j) {
    const double th = angles[static_cast<std::size_t>(j - 1)];
    require_colatitude(th);
    value *= std::pow(std::sin(th), 2.0 * nu + d - 1 - j);
  }
  return value;
}

double sample_sin_power(double p, RandomStream& rng) {
  const double shape = 0.5 * (p + 1.0);
  boost::random::beta_distribution<double> beta(shape, shape);
  const double b = beta(rng);
  return std::acos(std::clamp(1.0 - 2.0 * b, -1.0, 1.0));
}

double sin_power_cdf(double p, double theta) {
  if (theta <= 0.0) return 0.0;
  if (theta >= kPi) return 1.0;
  const double shape = 0.5 * (p + 1.0);
  // sin^2(theta/2) == (1 - cos theta) / 2 without cancellation near 0
  const double s = std::sin(0.5 * theta);
  return boost::math::ibeta(shape, shape, s * s);
}

AngleVector sample_angles(int d, double nu, RandomStream& rng) {
  require_nu(nu);
  if (d < 2) {
    throw std::domain_error("dimension must be >= 2");
  }
  std::vector<double> thetas(static_cast<std::size_t>(d - 2));
  for (int j = 1; j <= d - 2; ++j) {
    thetas[static_cast<std::size_t>(j - 1)] = sample_sin_power(2.0 * nu + d - 1 - j, rng);
  }
  double phi = sample_sin_power(2.0 * nu, rng);
  boost::random::bernoulli_distribution<double> coin(0.5);
  if (coin(rng)) {
    phi = 2.0 * kPi - phi;
  }
  return AngleVector(d, std::move(thetas), phi);
}

void angles_to_direction(const AngleVector& a, std::span<double> out) {
  const int d = a.dim();
  if (out.size() != static_cast<std::size_t>(d)) {
    throw std::domain_error("direction buffer has wrong size");
  }
  double sines = 1.0;
  for (int j = 0; j < d - 2; ++j) {
    const double th = a.thetas()[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(j)] = sines * std::cos(th);
    sines *= std::sin(th);
  }
  out[static_cast<std::size_t>(d - 2)] = sines * std::cos(a.phi());
  out[static_cast<std::size_t>(d - 1)] = sines * std::sin(a.phi());
}

Direction angles_to_direction(const AngleVector& a) {
  Direction out(static_cast<std::size_t>(a.dim()));
  angles_to_direction(a, out);
  return out;
}

void sample_direction(int d, double nu, RandomStream& rng, std::span<double> out) {
  angles_to_direction(sample_angles(d, nu, rng), out);
}

}  // namespace rflight::angular
