#pragma once

#include <span>
#include <vector>

#include "rflight/flight.hpp"

namespace rflight::analytic {

/// Frequency vector together with the flight it is evaluated for. The
/// projected characteristic function takes alpha of length m; the full
/// nu = 1 one takes length d.
struct CfQuery {
  FlightParams params;
  std::vector<double> alpha;
};

/// Randomized number of turns: n follows the fractional Poisson law with
/// rate lambda; `base.n` is ignored.
struct MixtureParams {
  double lambda = 1.0;
  FlightParams base;
  int n_max = 50;

  void validate() const;
};

// ---- projections onto R^m, any nu >= 0 ------------------------------------

/// Characteristic function of the projection onto R^m:
///   Gamma(K + 1/2) (2 / z)^{K - 1/2} J_{K - 1/2}(z),  z = ct |alpha|.
/// Depends on alpha only through its norm; equals 1 at alpha = 0.
double cf_projection(const CfQuery& q);

/// Density of the projection onto R^m (m < d):
///   Gamma(K + 1/2) / Gamma(K - m/2 + 1/2)
///     * (c^2 t^2 - |x|^2)^{K - (m+1)/2} / (pi^{m/2} (ct)^{2K - 1}).
/// Zero for |x| >= ct.
double density_projection(const FlightParams& p, std::span<const double> x);

/// Density of |X_m| on (0, ct); zero elsewhere.
double radial_density_projection(const FlightParams& p, double r);

/// Exponent q = K - (m + 1)/2 of (c^2 t^2 - r^2) in the projected law.
double projection_exponent(const FlightParams& p);

/// Whether q is a non-negative integer to within 1e-9.
bool projection_exponent_is_integral(const FlightParams& p);

enum class CdfMethod { automatic, finite_sum, quadrature };

/// P(|X_m| < r). `automatic` uses the binomial finite sum when q is a
/// non-negative integer and adaptive quadrature of the radial density
/// otherwise. Forcing `finite_sum` for non-integral q throws.
double cdf_radial_projection(const FlightParams& p, double r, CdfMethod method = CdfMethod::automatic);

/// E |X_m|^order.
double radial_moment(const FlightParams& p, int order);

/// Density of the full flight when nu = 0 (m = d). The uniform angular law
/// makes the flight isotropic, so the projected law carries over with m = d.
double density_uniform_full(const FlightParams& p, std::span<const double> x);

// ---- full flight in R^d with nu = 1 ---------------------------------------

/// Characteristic function of the full flight for nu = 1 (alpha of length d):
/// an (n + 2)-term alternating sum in (alpha_d / |alpha|)^2 of normalized
/// Bessel functions of argument ct |alpha|.
double cf_nu1(const FlightParams& p, std::span<const double> alpha);

/// Density of the full flight for nu = 1, general n >= 1, built from the
/// a_{k, n+1-j} coefficient tables. Zero for |x| >= ct.
double density_nu1(const FlightParams& p, std::span<const double> x);

/// Explicit three-term (n = 1) and four-term (n = 2) forms of density_nu1.
double density_nu1_closed(const FlightParams& p, std::span<const double> x);

/// Density of |X_d| for nu = 1 and n in {1, 2}; zero outside (0, ct).
double radial_density_nu1(const FlightParams& p, double r);

// ---- random number of turns ------------------------------------------------

/// P(N = n) = (lambda t)^n / (n! Gamma(n alpha + beta) E(lambda t)) with
/// alpha = nu + (d - 1)/2, beta = nu + d/2 and E the k!-bearing
/// Mittag-Leffler series. `strict_as_printed` drops the n! to reproduce the
/// unnormalized variant for comparison.
double fractional_poisson_pmf(const MixtureParams& mp, int n, bool strict_as_printed = false);

/// Geometric bound on sum_{k > n_max} P(N = k).
double fractional_poisson_tail_bound(const MixtureParams& mp);

struct MixtureDensity {
  double value = 0.0;
  double tail_bound = 0.0;  // probability mass of the truncated terms n > n_max
};

/// sum_{n=1}^{n_max} P(N = n) density_projection(n, x), divided by
/// sum_{n=1}^{n_max} P(N = n): the conditional laws exist only for n >= 1.
MixtureDensity unconditional_density_projection(const MixtureParams& mp, std::span<const double> x);

/// Surface area of the unit sphere in R^m, 2 pi^{m/2} / Gamma(m/2).
double sphere_area(int m);

}  // namespace rflight::analytic
