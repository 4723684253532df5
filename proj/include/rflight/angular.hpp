#pragma once

#include <span>
#include <vector>

#include "rflight/random.hpp"

namespace rflight::angular {

/// Hyperspherical angles (theta_1, ..., theta_{d-2}, phi) of one direction.
/// Colatitudes lie in [0, pi], the azimuth in [0, 2 pi].
class AngleVector {
public:
  /// Throws std::domain_error on a wrong count or an out-of-range angle.
  AngleVector(int d, std::vector<double> thetas, double phi);

  int dim() const noexcept { return d_; }
  const std::vector<double>& thetas() const noexcept { return thetas_; }
  double phi() const noexcept { return phi_; }

private:
  int d_;
  std::vector<double> thetas_;
  double phi_;
};

/// Unit vector in R^d.
using Direction = std::vector<double>;

/// Joint density g_{d,nu} of the angles:
///   Gamma(nu + d/2) / (2 pi^{(d-1)/2} Gamma(nu + 1/2))
///     * prod_j sin^{2nu + d - 1 - j}(theta_j) * sin^{2nu}(phi).
/// With respect to surface measure this is proportional to |u_d|^{2 nu}.
double angular_density(const AngleVector& a, double nu);

/// Marginal density of the first m angles. For m = d - 1 the last entry of
/// `angles` is the azimuth and the full density is returned.
double marginal_angular_density(std::span<const double> angles, int d, int m, double nu);

/// Exact sampler: each colatitude via cos(theta) = 1 - 2B with
/// B ~ Beta((p+1)/2, (p+1)/2), p = 2nu + d - 1 - j; the azimuth by the same
/// construction with p = 2nu on [0, pi] followed by a fair reflection
/// phi -> 2 pi - phi.
AngleVector sample_angles(int d, double nu, RandomStream& rng);

/// x_1 = cos theta_1, x_2 = sin theta_1 cos theta_2, ...,
/// x_{d-1} = sin theta_1 ... sin theta_{d-2} cos phi,
/// x_d = sin theta_1 ... sin theta_{d-2} sin phi.
Direction angles_to_direction(const AngleVector& a);

/// Writes the direction for `a` into `out` (size d) without allocating.
void angles_to_direction(const AngleVector& a, std::span<double> out);

/// Samples a direction straight into `out` (size d). Same law and same
/// random-number consumption as angles_to_direction(sample_angles(...)).
void sample_direction(int d, double nu, RandomStream& rng, std::span<double> out);

/// Draws a colatitude with density proportional to sin^p on [0, pi].
double sample_sin_power(double p, RandomStream& rng);

/// CDF of a colatitude with density proportional to sin^p on [0, pi].
double sin_power_cdf(double p, double theta);

}  // namespace rflight::angular
