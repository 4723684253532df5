#include "rflight/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rflight/quadrature.hpp"
#include "rflight/specfun.hpp"

namespace rflight::analytic {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double ln2 = std::numbers::ln2;

void require_analytic(const FlightParams& p) {
  p.validate();
  if (p.n < 1) {
    throw std::domain_error("closed forms need n >= 1, got n = " + std::to_string(p.n));
  }
}

void require_projection(const FlightParams& p) {
  require_analytic(p);
  if (p.m >= p.d) {
    throw std::domain_error("projected law needs m < d");
  }
}

void require_nu1(const FlightParams& p) {
  require_analytic(p);
  if (p.nu != 1.0) {
    throw std::domain_error("this formula holds for nu = 1 only");
  }
}

double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

// 1 / Gamma(x), zero at the poles.
double reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

// Log of the projected-law normalizer A in A (R^2 - r^2)^q, R = ct.
double log_projection_norm(const FlightParams& p, int m) {
  const double k = p.order_k();
  return std::lgamma(k + 0.5) - std::lgamma(k - 0.5 * m + 0.5) - 0.5 * m * std::log(pi) -
         (2.0 * k - 1.0) * std::log(p.reach());
}

double projection_density_at(const FlightParams& p, int m, double r2) {
  const double reach2 = p.reach() * p.reach();
  if (!(r2 < reach2)) return 0.0;
  const double q = p.order_k() - 0.5 * (m + 1);
  return std::exp(log_projection_norm(p, m) + q * std::log(reach2 - r2));
}

// Closed forms for the unit ball (ct = 1); callers rescale.
double closed_n1(int d, double xd2, double w) {
  const double dd = d;
  const double log_pref = std::lgamma(2.0 * (dd + 1.0)) - 0.5 * (dd - 1.0) * std::log(pi) -
                          (2.0 * dd + 1.0) * ln2 - std::log(dd + 2.0) - std::lgamma(dd + 1.0) -
                          std::lgamma(0.5 * (dd - 1.0));
  const double body = 3.0 / (dd - 1.0) * std::pow(w, 0.5 * (dd + 1.0)) -
                      2.0 * xd2 * std::pow(w, 0.5 * (dd - 1.0)) +
                      (dd + 1.0) * xd2 * xd2 * std::pow(w, 0.5 * (dd - 3.0));
  return std::exp(log_pref) * body;
}

double closed_n2(int d, double xd2, double w) {
  const double dd = d;
  const double log_pref = std::lgamma(3.0 * dd + 3.0) + std::log(dd + 1.0) -
                          0.5 * (dd - 1.0) * std::log(pi) - (3.0 * dd + 2.0) * ln2 -
                          std::lgamma(dd - 1.0) - std::lgamma(1.5 * (dd + 3.0) - 3.0) -
                          std::log(3.0 * dd + 7.0) - std::log(3.0 * dd + 5.0);
  const double den = (dd + 1.0) * dd * (dd - 1.0);
  const double body = 4.0 * (dd + 4.0) / den * std::pow(w, dd + 1.0) +
                      2.0 * xd2 * (6.0 * dd * dd + 6.0 * dd + 8.0) / den * std::pow(w, dd) -
                      8.0 * xd2 * xd2 * std::pow(w, dd - 1.0) +
                      8.0 / 3.0 * (dd + 1.0) * xd2 * xd2 * xd2 * std::pow(w, dd - 2.0);
  return std::exp(log_pref) * body;
}

double radial_n1(int d, double u) {
  const double dd = d;
  const double w = (1.0 - u) * (1.0 + u);
  const double log_pref = std::lgamma(2.0 * (dd + 1.0)) + ln2 + 0.5 * std::log(pi) -
                          (2.0 * dd + 1.0) * ln2 - std::log(dd + 2.0) - std::lgamma(dd + 1.0) -
                          std::lgamma(0.5 * (dd - 1.0)) - std::lgamma(0.5 * dd);
  const double body =
      3.0 / (dd - 1.0) * std::pow(u, dd - 1.0) * std::pow(w, 0.5 * (dd + 1.0)) -
      2.0 / dd * std::pow(u, dd + 1.0) * std::pow(w, 0.5 * (dd - 1.0)) +
      3.0 * (dd + 1.0) / (dd * (dd + 2.0)) * std::pow(u, dd + 3.0) * std::pow(w, 0.5 * (dd - 3.0));
  return std::exp(log_pref) * body;
}

double radial_n2(int d, double u) {
  const double dd = d;
  const double w = (1.0 - u) * (1.0 + u);
  const double log_pref = std::lgamma(3.0 * dd + 3.0) + std::log(dd + 1.0) + ln2 +
                          0.5 * std::log(pi) - (3.0 * dd + 2.0) * ln2 - std::lgamma(dd - 1.0) -
                          std::lgamma(1.5 * (dd + 3.0) - 3.0) - std::lgamma(0.5 * dd) -
                          std::log(3.0 * dd + 7.0) - std::log(3.0 * dd + 5.0);
  const double den = (dd + 1.0) * dd * (dd - 1.0);
  const double body =
      4.0 * (dd + 4.0) / den * std::pow(u, dd - 1.0) * std::pow(w, dd + 1.0) +
      2.0 * (6.0 * dd * dd + 6.0 * dd + 8.0) / ((dd + 1.0) * dd * dd * (dd - 1.0)) *
          std::pow(u, dd + 1.0) * std::pow(w, dd) -
      24.0 / (dd * (dd + 2.0)) * std::pow(u, dd + 3.0) * std::pow(w, dd - 1.0) +
      40.0 * (dd + 1.0) / (dd * (dd + 2.0) * (dd + 4.0)) * std::pow(u, dd + 5.0) *
          std::pow(w, dd - 2.0);
  return std::exp(log_pref) * body;
}

// log P(N = n) up to the Mittag-Leffler normalizer.
double log_pmf_unnormalized(const MixtureParams& mp, int n, bool with_factorial) {
  const FlightParams& b = mp.base;
  const double a = b.nu + 0.5 * (b.d - 1);
  const double beta = b.nu + 0.5 * b.d;
  const double x = mp.lambda * b.t;
  double v = n * std::log(x) - std::lgamma(n * a + beta);
  if (with_factorial) v -= std::lgamma(n + 1.0);
  return v;
}

}  // namespace

void MixtureParams::validate() const {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be > 0");
  if (n_max < 1) throw std::domain_error("n_max must be >= 1");
  FlightParams b = base;
  b.n = 1;
  b.validate();
}

double sphere_area(int m) {
  if (m < 1) throw std::domain_error("sphere_area needs m >= 1");
  return 2.0 * std::exp(0.5 * m * std::log(pi) - std::lgamma(0.5 * m));
}

double cf_projection(const CfQuery& q) {
  require_analytic(q.params);
  if (q.alpha.size() != static_cast<std::size_t>(q.params.m)) {
    throw std::domain_error("cf_projection: alpha must have m entries");
  }
  const double z = q.params.reach() * std::sqrt(squared_norm(q.alpha));
  return specfun::bessel_lambda(q.params.order_k() - 0.5, z);
}

double density_projection(const FlightParams& p, std::span<const double> x) {
  require_projection(p);
  if (x.size() != static_cast<std::size_t>(p.m)) {
    throw std::domain_error("density_projection: x must have m entries");
  }
  return projection_density_at(p, p.m, squared_norm(x));
}

double radial_density_projection(const FlightParams& p, double r) {
  require_projection(p);
  if (!(r > 0.0) || !(r < p.reach())) return 0.0;
  return sphere_area(p.m) * std::pow(r, p.m - 1) * projection_density_at(p, p.m, r * r);
}

double projection_exponent(const FlightParams& p) { return p.order_k() - 0.5 * (p.m + 1); }

bool projection_exponent_is_integral(const FlightParams& p) {
  const double q = projection_exponent(p);
  return q >= -1e-9 && std::abs(q - std::round(q)) < 1e-9;
}

double cdf_radial_projection(const FlightParams& p, double r, CdfMethod method) {
  require_projection(p);
  const double reach = p.reach();
  if (!(r > 0.0)) return 0.0;
  if (r >= reach) return 1.0;

  const bool integral = projection_exponent_is_integral(p);
  if (method == CdfMethod::finite_sum && !integral) {
    throw std::domain_error("finite-sum CDF needs an integral exponent");
  }
  if (method == CdfMethod::finite_sum || (method == CdfMethod::automatic && integral)) {
    const auto q = static_cast<unsigned>(std::lround(projection_exponent(p)));
    const double u = r / reach;
    const double u2 = u * u;
    double sum = 0.0;
    double upow = std::pow(u, p.m);
    for (unsigned i = 0; i <= q; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      sum += sign * specfun::binomial(q, i) * upow / (p.m + 2.0 * i);
      upow *= u2;
    }
    const double log_c = std::log(sphere_area(p.m)) + std::lgamma(p.order_k() + 0.5) -
                         std::lgamma(q + 1.0) - 0.5 * p.m * std::log(pi);
    return std::clamp(std::exp(log_c) * sum, 0.0, 1.0);
  }

  // r = ct sin(theta) flattens the (c^2 t^2 - r^2)^q edge.
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    return radial_density_projection(p, reach * s) * reach * std::cos(theta);
  };
  const auto est = quad::adaptive(integrand, 0.0, std::asin(r / reach), 1e-10, 12);
  return std::clamp(est.value, 0.0, 1.0);
}

double radial_moment(const FlightParams& p, int order) {
  require_projection(p);
  if (order < 1) throw std::domain_error("radial_moment needs order >= 1");
  const double k = p.order_k();
  const double log_v = std::lgamma(k + 0.5) + std::lgamma(0.5 * (order + p.m)) -
                       std::lgamma(k + 0.5 * (order + 1)) - std::lgamma(0.5 * p.m) +
                       order * std::log(p.reach());
  return std::exp(log_v);
}

double density_uniform_full(const FlightParams& p, std::span<const double> x) {
  require_analytic(p);
  if (p.nu != 0.0) throw std::domain_error("density_uniform_full needs nu = 0");
  if (x.size() != static_cast<std::size_t>(p.d)) {
    throw std::domain_error("density_uniform_full: x must have d entries");
  }
  return projection_density_at(p, p.d, squared_norm(x));
}

double cf_nu1(const FlightParams& p, std::span<const double> alpha) {
  require_nu1(p);
  if (alpha.size() != static_cast<std::size_t>(p.d)) {
    throw std::domain_error("cf_nu1: alpha must have d entries");
  }
  const double norm2 = squared_norm(alpha);
  if (norm2 == 0.0) return 1.0;
  const double z = p.reach() * std::sqrt(norm2);
  const double s = alpha.back() * alpha.back() / norm2;
  const int n = p.n;
  const double d = p.d;
  const double top = (n + 1) * (d + 1);  // Gamma((n+1)(d+1)) in the prefactor
  const double shift = 0.5 * (top - 1.0);

  double sum = 0.0;
  for (int j = 0; j <= n + 1; ++j) {
    const int k = n + 1 - j;
    const double mu = 0.5 * ((n + 1) * (d + 3) - 2.0 * j - 1.0);
    if (k > 0 && s == 0.0) continue;
    double log_c = std::lgamma(top) - std::lgamma(2.0 * mu + 1.0) + (mu - shift) * ln2 +
                   std::log(specfun::binomial(static_cast<unsigned>(n + 1), static_cast<unsigned>(j)));
    if (k > 0) log_c += k * std::log(0.5 * s * (d + 1)) + 2.0 * k * std::log(z);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::exp(log_c) * specfun::bessel_lambda(mu, z);
  }
  return sum;
}

double density_nu1(const FlightParams& p, std::span<const double> x) {
  require_nu1(p);
  if (x.size() != static_cast<std::size_t>(p.d)) {
    throw std::domain_error("density_nu1: x must have d entries");
  }
  const double reach = p.reach();
  const double w = reach * reach - squared_norm(x);
  if (!(w > 0.0)) return 0.0;
  const int n = p.n;
  const double d = p.d;
  const double xd2 = x.back() * x.back();
  const double top = (n + 1) * (d + 1);
  const double log_pref = std::lgamma(top) - 0.5 * (d - 1.0) * std::log(pi) -
                          (top - 1.0) * std::log(2.0 * reach);

  double sum = 0.0;
  for (int j = 0; j <= n + 1; ++j) {
    const int order = n + 1 - j;
    const auto table = specfun::falling_factorial_coeffs(static_cast<unsigned>(order));
    double inner = 0.0;
    double xpow = 1.0;
    for (int k = 0; k <= order; ++k) {
      const double e = 0.5 * n * (d + 1) - k;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      inner += sign * static_cast<double>(table[static_cast<unsigned>(k)]) * xpow *
               reciprocal_gamma(e + 1.0) * std::pow(w, e);
      xpow *= xd2;
    }
    const double log_outer =
        log_pref + std::log(specfun::binomial(static_cast<unsigned>(n + 1), static_cast<unsigned>(j))) +
        order * std::log(0.5 * (d + 1)) - std::lgamma(0.5 * (n + 1) * (d + 3) - j);
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::exp(log_outer) * inner;
  }
  return sum;
}

double density_nu1_closed(const FlightParams& p, std::span<const double> x) {
  require_nu1(p);
  if (p.n != 1 && p.n != 2) throw std::domain_error("explicit nu = 1 density exists for n = 1, 2 only");
  if (x.size() != static_cast<std::size_t>(p.d)) {
    throw std::domain_error("density_nu1_closed: x must have d entries");
  }
  const double reach = p.reach();
  const double u2 = squared_norm(x) / (reach * reach);
  if (!(u2 < 1.0)) return 0.0;
  const double ud = x.back() / reach;
  const double unit = (p.n == 1) ? closed_n1(p.d, ud * ud, 1.0 - u2) : closed_n2(p.d, ud * ud, 1.0 - u2);
  return unit / std::pow(reach, p.d);
}

double radial_density_nu1(const FlightParams& p, double r) {
  require_nu1(p);
  if (p.n != 1 && p.n != 2) throw std::domain_error("explicit nu = 1 density exists for n = 1, 2 only");
  const double reach = p.reach();
  if (!(r > 0.0) || !(r < reach)) return 0.0;
  const double u = r / reach;
  return ((p.n == 1) ? radial_n1(p.d, u) : radial_n2(p.d, u)) / reach;
}

double fractional_poisson_pmf(const MixtureParams& mp, int n, bool strict_as_printed) {
  mp.validate();
  if (n < 0) throw std::domain_error("pmf needs n >= 0");
  const FlightParams& b = mp.base;
  const double e = specfun::mittag_leffler_factorial(b.nu + 0.5 * (b.d - 1), b.nu + 0.5 * b.d,
                                                 mp.lambda * b.t);
  return std::exp(log_pmf_unnormalized(mp, n, !strict_as_printed)) / e;
}

double fractional_poisson_tail_bound(const MixtureParams& mp) {
  mp.validate();
  const int first = mp.n_max + 1;
  // Successive ratios decrease in n, so the ratio at `first` bounds the rest.
  const double ratio =
      std::exp(log_pmf_unnormalized(mp, first + 1, true) - log_pmf_unnormalized(mp, first, true));
  if (!(ratio < 1.0)) return 1.0;
  return std::min(1.0, fractional_poisson_pmf(mp, first) / (1.0 - ratio));
}

MixtureDensity unconditional_density_projection(const MixtureParams& mp, std::span<const double> x) {
  mp.validate();
  FlightParams p = mp.base;
  double weighted = 0.0;
  double mass = 0.0;
  for (int n = 1; n <= mp.n_max; ++n) {
    p.n = n;
    const double w = fractional_poisson_pmf(mp, n);
    mass += w;
    weighted += w * density_projection(p, x);
  }
  return {weighted / mass, fractional_poisson_tail_bound(mp)};
}

}  // namespace rflight::analytic
