#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rflight/analytic.hpp"
#include "rflight/flight.hpp"
#include "rflight/specfun.hpp"

using namespace rflight;
using namespace rflight::analytic;

namespace {

constexpr double pi = std::numbers::pi;

template <class F>
double gk(F f, double a, double b, double tol = 1e-12) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol);
}

// Integral of the radial density over (0, ct) using r = ct sin u.
double radial_mass(const FlightParams& p) {
  return gk([&](double u) { return radial_density_projection(p, p.reach() * std::sin(u)) * p.reach() * std::cos(u); },
            0.0, pi / 2);
}

// Uniform-direction projected law with its own Gamma bookkeeping.
double uniform_projection_reference(int n, int d, int m, double ct, double r) {
  const double k = 0.5 * (n + 1) * (d - 1);
  return std::tgamma(k + 0.5) / std::tgamma(k - 0.5 * m + 0.5) * std::pow(ct * ct - r * r, k - 0.5 * (m + 1)) /
         (std::pow(pi, 0.5 * m) * std::pow(ct, 2 * k - 1));
}

// Surface integral of a d-dimensional density over the sphere of radius r,
// parameterized by the angle to the x_d axis (d = 2, 3).
template <class F>
double shell_integral(F density, int d, double r) {
  if (d == 2) {
    return gk([&](double th) {
             const double x[2] = {r * std::cos(th), r * std::sin(th)};
             return density(std::span<const double>(x, 2)) * r;
           },
           0.0, 2.0 * pi);
  }
  return gk([&](double psi) {
           const double x[3] = {r * std::sin(psi), 0.0, r * std::cos(psi)};
           return density(std::span<const double>(x, 3)) * r * r * std::sin(psi) * 2.0 * pi;
         },
         0.0, pi);
}

}  // namespace

// ---- projected law ------------------------------------------------------------

TEST(CfProjection, OriginIsOne) {
  EXPECT_EQ(cf_projection({FlightParams{3, 2, 2, 1.0, 1, 1}, {0.0, 0.0}}), 1.0);
}

TEST(CfProjection, UniformPlaneOneTurnIsSinc) {
  for (double z : {0.3, 1.0, 4.0, 11.0}) {
    EXPECT_NEAR(cf_projection({FlightParams{2, 1, 1, 0.0, 1, 1}, {z}}), std::sin(z) / z, 1e-13);
  }
}

TEST(CfProjection, DependsOnlyOnNorm) {
  const double v = cf_projection({FlightParams{4, 1, 2, 0.5, 1, 1}, {1.7}});
  const double w = cf_projection({FlightParams{4, 3, 2, 0.5, 1, 1}, {1.0, -1.2, std::sqrt(1.7 * 1.7 - 2.44)}});
  EXPECT_NEAR(v, w, 1e-15);
}

TEST(CfProjection, MatchesEmpiricalCf) {
  const FlightParams p{3, 2, 1, 1.0, 1, 1};
  const auto batch = flight::simulate_batch(p, 1000000, 31337);
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double c = std::cos(2.0 * batch[i][0]);
    s += c;
    s2 += c * c;
  }
  const double n = static_cast<double>(batch.size());
  const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
  EXPECT_NEAR(mean, cf_projection({p, {2.0, 0.0}}), 3.0 * se);
}

TEST(CfProjection, Errors) {
  EXPECT_THROW(cf_projection({FlightParams{3, 2, 0, 1.0, 1, 1}, {1.0, 0.0}}), std::domain_error);
  EXPECT_THROW(cf_projection({FlightParams{3, 2, 1, 1.0, 1, 1}, {1.0}}), std::domain_error);
}

TEST(DensityProjection, UniformOnSegment) {
  const double x[1] = {0.0};
  EXPECT_DOUBLE_EQ(density_projection(FlightParams{2, 1, 1, 0.0, 1, 1}, x), 0.5);
  const double y[1] = {-0.73};
  EXPECT_DOUBLE_EQ(density_projection(FlightParams{2, 1, 1, 0.0, 1, 1}, y), 0.5);
}

TEST(DensityProjection, ReducesToUniformCase) {
  for (int d : {3, 4}) {
    for (int m = 1; m < d; ++m) {
      for (int n : {1, 3}) {
        const FlightParams p{d, m, n, 0.0, 1.3, 0.9};
        for (int i = 0; i < 20; ++i) {
          const double r = p.reach() * (i + 0.5) / 20.0;
          std::vector<double> x(static_cast<std::size_t>(m), 0.0);
          x[0] = r;
          const double want = uniform_projection_reference(n, d, m, p.reach(), r);
          EXPECT_NEAR(density_projection(p, x), want, 1e-12 * want);
        }
      }
    }
  }
}

TEST(DensityProjection, Isotropic) {
  const FlightParams p{4, 2, 2, 0.5, 1, 2};
  const double a[2] = {1.0, 0.0};
  const double b[2] = {std::cos(0.9), std::sin(0.9)};
  EXPECT_NEAR(density_projection(p, a), density_projection(p, b), 1e-15);
}

TEST(DensityProjection, OutsideSupportAndErrors) {
  const FlightParams p{3, 1, 1, 1.0, 1, 1};
  const double edge[1] = {1.0}, out[1] = {1.5};
  EXPECT_EQ(density_projection(p, edge), 0.0);
  EXPECT_EQ(density_projection(p, out), 0.0);
  const double x3[3] = {0.1, 0.1, 0.1};
  EXPECT_THROW(density_projection(FlightParams{3, 3, 1, 1.0, 1, 1}, x3), std::domain_error);
  const double x2[2] = {0.1, 0.1};
  EXPECT_THROW(density_projection(p, x2), std::domain_error);
  EXPECT_THROW(density_projection(FlightParams{3, 1, 0, 1.0, 1, 1}, out), std::domain_error);
}

TEST(RadialDensityProjection, FoldedUniform) {
  const FlightParams p{2, 1, 1, 0.0, 1, 1};
  for (double r : {0.01, 0.4, 0.99}) EXPECT_NEAR(radial_density_projection(p, r), 1.0, 1e-15);
  EXPECT_EQ(radial_density_projection(p, 0.0), 0.0);
  EXPECT_EQ(radial_density_projection(p, 1.0), 0.0);
  EXPECT_EQ(radial_density_projection(p, -0.5), 0.0);
}

TEST(RadialDensityProjection, PolarFactorization) {
  const FlightParams p{5, 2, 2, 1.0, 1.2, 1.1};
  for (double r : {0.1, 0.7, 1.2}) {
    const double x[2] = {r, 0.0};
    EXPECT_NEAR(radial_density_projection(p, r), density_projection(p, x) * 2.0 * pi * r, 1e-13);
  }
}

TEST(RadialDensityProjection, Normalized) {
  for (int d : {2, 3, 5}) {
    for (int m = 1; m < d && m <= 2; ++m) {
      for (double nu : {0.0, 0.5, 1.0}) {
        const FlightParams p{d, m, 2, nu, 0.7, 2.0};
        EXPECT_NEAR(radial_mass(p), 1.0, 1e-10);
      }
    }
  }
}

TEST(SphereArea, LowDimensions) {
  EXPECT_NEAR(sphere_area(1), 2.0, 1e-15);
  EXPECT_NEAR(sphere_area(2), 2.0 * pi, 1e-14);
  EXPECT_NEAR(sphere_area(3), 4.0 * pi, 1e-14);
  EXPECT_THROW(sphere_area(0), std::domain_error);
}

TEST(CdfRadialProjection, Endpoints) {
  const FlightParams p{3, 2, 2, 0.5, 1, 1};
  EXPECT_EQ(cdf_radial_projection(p, 0.0), 0.0);
  EXPECT_EQ(cdf_radial_projection(p, -1.0), 0.0);
  EXPECT_EQ(cdf_radial_projection(p, 1.0), 1.0);
  EXPECT_EQ(cdf_radial_projection(p, 7.0), 1.0);
}

TEST(CdfRadialProjection, FoldedUniform) {
  EXPECT_NEAR(cdf_radial_projection(FlightParams{2, 1, 1, 0.0, 1, 1}, 0.5), 0.5, 1e-15);
}

TEST(CdfRadialProjection, BranchesAgree) {
  int integral_cases = 0;
  for (int d = 2; d <= 5; ++d) {
    for (int m = 1; m < d && m <= 2; ++m) {
      for (int n = 1; n <= 3; ++n) {
        for (double nu : {0.0, 0.5, 1.0}) {
          const FlightParams p{d, m, n, nu, 1, 1};
          if (!projection_exponent_is_integral(p)) continue;
          ++integral_cases;
          for (double r : {0.1, 0.5, 0.9}) {
            EXPECT_NEAR(cdf_radial_projection(p, r, CdfMethod::finite_sum),
                        cdf_radial_projection(p, r, CdfMethod::quadrature), 1e-10);
          }
        }
      }
    }
  }
  EXPECT_GT(integral_cases, 5);
  EXPECT_TRUE(projection_exponent_is_integral(FlightParams{3, 1, 1, 0.0, 1, 1}));
  EXPECT_DOUBLE_EQ(projection_exponent(FlightParams{3, 1, 1, 0.0, 1, 1}), 1.0);
}

TEST(CdfRadialProjection, RegularizedBetaOracle) {
  // r^{m-1} (1 - r^2)^q integrates to I_{r^2}(m/2, q + 1).
  for (int d : {3, 4}) {
    for (double nu : {0.0, 0.5, 1.0}) {
      const FlightParams p{d, 2, 1, nu, 1, 1};
      const double q = projection_exponent(p);
      for (double r : {0.2, 0.6, 0.95}) {
        EXPECT_NEAR(cdf_radial_projection(p, r), boost::math::ibeta(1.0, q + 1.0, r * r), 1e-11);
      }
    }
  }
}

TEST(CdfRadialProjection, FiniteSumRejectsFractionalExponent) {
  const FlightParams p{3, 2, 1, 0.0, 1, 1};
  ASSERT_FALSE(projection_exponent_is_integral(p));
  EXPECT_THROW(cdf_radial_projection(p, 0.5, CdfMethod::finite_sum), std::domain_error);
}

TEST(CdfRadialProjection, Monotone) {
  const FlightParams p{4, 1, 3, 0.5, 1, 1};
  double prev = 0.0;
  for (int i = 1; i < 50; ++i) {
    const double v = cdf_radial_projection(p, i / 50.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(RadialMoment, SecondMomentExample) {
  EXPECT_NEAR(radial_moment(FlightParams{3, 2, 1, 0.0, 1, 1}, 2), 0.4, 1e-15);
}

TEST(RadialMoment, MatchesQuadrature) {
  for (int d : {3, 4}) {
    for (double nu : {0.0, 1.0}) {
      const FlightParams p{d, 2, 2, nu, 1.5, 1};
      for (int k : {1, 2, 4}) {
        const double quad = gk(
            [&](double u) {
              const double r = p.reach() * std::sin(u);
              return std::pow(r, k) * radial_density_projection(p, r) * p.reach() * std::cos(u);
            },
            0.0, pi / 2);
        EXPECT_NEAR(radial_moment(p, k), quad, 1e-10 * std::pow(p.reach(), k));
      }
    }
  }
}

TEST(RadialMoment, BelowReachAndDecaying) {
  const FlightParams p{3, 1, 1, 1.0, 2.0, 1.0};
  double prev = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double ratio = radial_moment(p, k) / std::pow(p.reach(), k);
    EXPECT_LT(ratio, prev);
    prev = ratio;
  }
  EXPECT_THROW(radial_moment(p, 0), std::domain_error);
}

TEST(DensityUniformFull, PlaneValues) {
  const double x[2] = {0.3, 0.4};
  EXPECT_NEAR(density_uniform_full(FlightParams{2, 2, 1, 0.0, 1, 1}, x), 1.0 / (2.0 * pi * std::sqrt(0.75)), 1e-15);
  EXPECT_NEAR(density_uniform_full(FlightParams{2, 2, 2, 0.0, 1, 1}, x), 1.0 / pi, 1e-15);
  EXPECT_THROW(density_uniform_full(FlightParams{2, 2, 1, 1.0, 1, 1}, x), std::domain_error);
}

// ---- full flight, nu = 1 ----------------------------------------------------

TEST(CfNu1, OriginAndSymmetry) {
  const FlightParams p{3, 3, 2, 1.0, 1, 1};
  const double zero[3] = {0, 0, 0};
  EXPECT_EQ(cf_nu1(p, zero), 1.0);
  const double a[3] = {0.4, -1.0, 1.3}, b[3] = {0.4, -1.0, -1.3};
  EXPECT_NEAR(cf_nu1(p, a), cf_nu1(p, b), 1e-15);
}

TEST(CfNu1, SingleSurvivingTermWhenLastFrequencyVanishes) {
  for (int d : {2, 3, 4}) {
    for (int n : {1, 2, 3}) {
      const FlightParams p{d, d, n, 1.0, 1, 1};
      std::vector<double> a(static_cast<std::size_t>(d), 0.0);
      a[0] = 1.1;
      if (d > 2) a[1] = -0.8;
      const double z = std::hypot(a[0], a[1]);
      const double mu = 0.5 * ((n + 1) * (d + 1) - 1);
      EXPECT_NEAR(cf_nu1(p, a), specfun::bessel_lambda(mu, z), 1e-14);
      std::vector<double> proj(a.begin(), a.end() - 1);
      EXPECT_NEAR(cf_nu1(p, a), cf_projection({FlightParams{d, d - 1, n, 1.0, 1, 1}, proj}), 1e-14);
    }
  }
}

TEST(CfNu1, MatchesEmpiricalCf) {
  const FlightParams p{2, 2, 1, 1.0, 1, 1};
  const auto batch = flight::simulate_batch(p, 1000000, 4242);
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double c = std::cos(batch[i][0] + batch[i][1]);
    s += c;
    s2 += c * c;
  }
  const double n = static_cast<double>(batch.size());
  const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
  const double a[2] = {1.0, 1.0};
  EXPECT_NEAR(mean, cf_nu1(p, a), 3.0 * se);
}

TEST(CfNu1, Errors) {
  const double a[2] = {1.0, 1.0};
  EXPECT_THROW(cf_nu1(FlightParams{2, 2, 1, 0.5, 1, 1}, a), std::domain_error);
  EXPECT_THROW(cf_nu1(FlightParams{2, 2, 0, 1.0, 1, 1}, a), std::domain_error);
  const double b[3] = {1.0, 1.0, 1.0};
  EXPECT_THROW(cf_nu1(FlightParams{2, 2, 1, 1.0, 1, 1}, b), std::domain_error);
}

TEST(DensityNu1, AgreesWithExplicitForms) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int d : {2, 3, 4}) {
    for (int n : {1, 2}) {
      const FlightParams p{d, d, n, 1.0, 1.1, 0.9};
      int checked = 0;
      while (checked < 50) {
        std::vector<double> x(static_cast<std::size_t>(d));
        for (double& v : x) v = u(rng) * p.reach();
        if (flight::radial(x) >= 0.98 * p.reach()) continue;
        const double closed = density_nu1_closed(p, x);
        EXPECT_NEAR(density_nu1(p, x), closed, 1e-10 * std::abs(closed)) << d << " " << n;
        ++checked;
      }
    }
  }
}

TEST(DensityNu1, CentreValueInThePlane) {
  const double x[2] = {0.0, 0.0};
  EXPECT_NEAR(density_nu1(FlightParams{2, 2, 1, 1.0, 1, 1}, x), 15.0 / (16.0 * pi) * 1.5, 1e-14);
}

TEST(DensityNu1, InvariantUnderRotationsAboutLastAxis) {
  const FlightParams p{3, 3, 3, 1.0, 1, 1};
  const double x[3] = {0.3, 0.2, -0.4};
  const double c = std::cos(1.1), s = std::sin(1.1);
  const double y[3] = {c * 0.3 - s * 0.2, s * 0.3 + c * 0.2, -0.4};
  const double z[3] = {0.3, 0.2, 0.4};
  EXPECT_NEAR(density_nu1(p, x), density_nu1(p, y), 1e-13);
  EXPECT_NEAR(density_nu1(p, x), density_nu1(p, z), 1e-13);
}

TEST(DensityNu1, GeneralOrderNormalized) {
  // n = 3 has no explicit form; check mass through the shell integrals.
  const FlightParams p{3, 3, 3, 1.0, 1, 1};
  const double total = gk([&](double r) { return shell_integral([&](auto x) { return density_nu1(p, x); }, 3, r); },
                          0.0, 1.0, 1e-10);
  EXPECT_NEAR(total, 1.0, 1e-8);
}

TEST(DensityNu1, OutsideAndErrors) {
  const double out[2] = {0.8, 0.7};
  EXPECT_EQ(density_nu1(FlightParams{2, 2, 1, 1.0, 1, 1}, out), 0.0);
  EXPECT_EQ(density_nu1_closed(FlightParams{2, 2, 1, 1.0, 1, 1}, out), 0.0);
  EXPECT_THROW(density_nu1(FlightParams{2, 2, 1, 0.0, 1, 1}, out), std::domain_error);
  EXPECT_THROW(density_nu1(FlightParams{2, 2, 0, 1.0, 1, 1}, out), std::domain_error);
  EXPECT_THROW(density_nu1_closed(FlightParams{2, 2, 3, 1.0, 1, 1}, out), std::domain_error);
}

TEST(DensityNu1Closed, NonNegativeOnTheBall) {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int d : {2, 3, 4}) {
    for (int n : {1, 2}) {
      const FlightParams p{d, d, n, 1.0, 1, 1};
      for (int i = 0; i < 10000; ++i) {
        std::vector<double> x(static_cast<std::size_t>(d));
        for (double& v : x) v = u(rng);
        EXPECT_GE(density_nu1_closed(p, x), 0.0);
      }
    }
  }
}

TEST(RadialDensityNu1, Normalized) {
  for (int d : {2, 3, 4}) {
    for (int n : {1, 2}) {
      const FlightParams p{d, d, n, 1.0, 2.0, 0.5};
      // r = sin u absorbs the (1 - r)^{-1/2} edge of d = 2, n = 1.
      const double mass = gk([&](double u) { return radial_density_nu1(p, std::sin(u)) * std::cos(u); }, 0.0, pi / 2);
      EXPECT_NEAR(mass, 1.0, 1e-12);
    }
  }
}

TEST(RadialDensityNu1, MatchesShellIntegralOfDensity) {
  for (int d : {2, 3}) {
    for (int n : {1, 2}) {
      const FlightParams p{d, d, n, 1.0, 1, 1};
      for (double r : {0.2, 0.5, 0.8}) {
        const double shell = shell_integral([&](auto x) { return density_nu1_closed(p, x); }, d, r);
        EXPECT_NEAR(radial_density_nu1(p, r), shell, 1e-7) << d << " " << n << " " << r;
      }
    }
  }
}

TEST(RadialDensityNu1, NonNegativeWithSingleModeInFourDimensions) {
  for (int d : {2, 3, 4}) {
    for (int n : {1, 2}) {
      const FlightParams p{d, d, n, 1.0, 1, 1};
      int turns = 0;
      double prev = radial_density_nu1(p, 1e-3), slope_sign = 1.0;
      for (int i = 2; i < 1000; ++i) {
        const double v = radial_density_nu1(p, i * 1e-3);
        EXPECT_GE(v, 0.0);
        const double s = v > prev ? 1.0 : -1.0;
        if (s != slope_sign) ++turns;
        slope_sign = s;
        prev = v;
      }
      // Lower dimensions keep mass at the rim and have extra turning points.
      if (d == 4) EXPECT_EQ(turns, 1) << "n=" << n;
    }
  }
}

TEST(RadialDensityNu1, OutsideSupport) {
  const FlightParams p{3, 3, 1, 1.0, 1, 1};
  EXPECT_EQ(radial_density_nu1(p, 0.0), 0.0);
  EXPECT_EQ(radial_density_nu1(p, 1.0), 0.0);
  EXPECT_THROW(radial_density_nu1(FlightParams{3, 3, 3, 1.0, 1, 1}, 0.5), std::domain_error);
}

// ---- random number of turns ------------------------------------------------------

TEST(FractionalPoisson, SumsToOne) {
  MixtureParams mp{1.0, FlightParams{2, 1, 1, 1.0, 1, 1}, 50};
  double total = 0.0;
  for (int n = 0; n <= 60; ++n) total += fractional_poisson_pmf(mp, n);
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(FractionalPoisson, StrictFormIsNotNormalized) {
  MixtureParams mp{1.0, FlightParams{2, 1, 1, 1.0, 1, 1}, 50};
  double total = 0.0;
  for (int n = 0; n <= 60; ++n) total += fractional_poisson_pmf(mp, n, true);
  EXPECT_GT(std::abs(total - 1.0), 1e-3);
}

TEST(FractionalPoisson, VanishingRateConcentratesAtZero) {
  MixtureParams mp{1e-9, FlightParams{3, 1, 1, 0.5, 1, 1}, 50};
  EXPECT_NEAR(fractional_poisson_pmf(mp, 0), 1.0, 1e-8);
}

TEST(FractionalPoisson, SuccessiveRatio) {
  const FlightParams b{3, 1, 1, 1.0, 1, 2.0};
  MixtureParams mp{0.7, b, 50};
  const double x = 0.7 * 2.0, a = 1.0 + 1.0, beta = 1.0 + 1.5;
  for (int n = 0; n < 6; ++n) {
    const double want = x / (n + 1) * std::tgamma(n * a + beta) / std::tgamma((n + 1) * a + beta);
    EXPECT_NEAR(fractional_poisson_pmf(mp, n + 1) / fractional_poisson_pmf(mp, n), want, 1e-13 * want);
  }
}

TEST(FractionalPoisson, TailBoundDominatesTail) {
  MixtureParams mp{2.0, FlightParams{2, 1, 1, 0.0, 1, 1}, 4};
  double tail = 0.0;
  for (int n = 5; n <= 80; ++n) tail += fractional_poisson_pmf(mp, n);
  EXPECT_GE(fractional_poisson_tail_bound(mp), tail);
  EXPECT_LT(fractional_poisson_tail_bound(mp), 10.0 * tail);
}

TEST(MixtureParams, Validation) {
  EXPECT_THROW((MixtureParams{0.0, FlightParams{}, 5}.validate()), std::domain_error);
  EXPECT_THROW((MixtureParams{1.0, FlightParams{}, 0}.validate()), std::domain_error);
  EXPECT_NO_THROW((MixtureParams{1.0, FlightParams{}, 1}.validate()));
}

TEST(UnconditionalDensity, NormalizedAndNonNegative) {
  MixtureParams mp{1.0, FlightParams{2, 1, 0, 0.5, 1, 1}, 50};
  auto f = [&](double x) {
    const double v[1] = {x};
    return unconditional_density_projection(mp, v).value;
  };
  for (double x : {-0.99, -0.3, 0.0, 0.5, 0.999}) EXPECT_GE(f(x), 0.0);
  EXPECT_NEAR(gk(f, -1.0, 1.0, 1e-10), 1.0, 1e-6);
}

TEST(UnconditionalDensity, TruncationStable) {
  for (double x : {0.0, 0.4, 0.8}) {
    const double v[1] = {x};
    MixtureParams small{1.0, FlightParams{3, 1, 1, 1.0, 1, 1}, 25};
    MixtureParams large = small;
    large.n_max = 50;
    const auto a = unconditional_density_projection(small, v);
    const auto b = unconditional_density_projection(large, v);
    EXPECT_LT(std::abs(a.value - b.value), 1e-8);
    EXPECT_LT(b.tail_bound, a.tail_bound);
  }
}
