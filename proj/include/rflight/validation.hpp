#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rflight/flight.hpp"

namespace rflight::validation {

/// Integral identities with a closed-form right side.
///   ring_*        int over [0, 2pi] of exp(iz(alpha cos + beta sin)) sin^{2n}
///                 (ring_uniform n = 0, ring_sin2 n = 1, ring_sin4 n = 2,
///                 ring_sin6 n = 3, ring_general any n)
///   ring_odd      int over [0, pi] of sin(beta cos x) sin^{nu+1} J_nu(alpha sin x) = 0
///   bessel_convolution       int_0^a x^mu (a-x)^nu J_mu(x) J_nu(a-x)
///   bessel_ratio_convolution int_0^a J_mu(x)/x J_nu(a-x)/(a-x)
///   weber_schafheitlin       int_0^inf x^{mu-nu} J_{nu+1}(ax) J_mu(bx)
///   sine_cosine_bessel       int_0^{pi/2} sin^{nu+1} cos(b cos x) J_nu(a sin x)
enum class IdentityId {
  ring_uniform,
  ring_sin2,
  ring_sin4,
  ring_sin6,
  ring_general,
  ring_odd,
  bessel_convolution,
  bessel_ratio_convolution,
  weber_schafheitlin,
  sine_cosine_bessel,
};

std::string_view to_string(IdentityId id);
std::optional<IdentityId> identity_from_string(std::string_view name);
const std::vector<IdentityId>& all_identities();

/// Union of every identity's parameters; each identity reads its own subset.
struct IdentityParams {
  double z = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  int n = 0;  // sine power 2n, ring_general only
  double mu = 0.0;
  double nu = 0.0;
  double a = 0.0;
  double b = 0.0;
};

struct IdentityReport {
  IdentityId id{};
  IdentityParams params;
  double lhs = 0.0;
  double lhs_imag = 0.0;    // imaginary part of the complex ring integrals
  double rhs = 0.0;
  double abs_err = 0.0;     // |lhs - rhs|
  double tail_bound = 0.0;  // truncated semi-infinite integrals only
};

/// Quadrature of the left side against the closed form. Throws
/// std::domain_error outside the identity's validity region.
IdentityReport check_identity(IdentityId id, const IdentityParams& params, double tolerance = 1e-12);

/// Truncation point for weber_schafheitlin so that the envelope bound of
/// the discarded tail is below `tail_tolerance`.
double weber_schafheitlin_cutoff(const IdentityParams& params, double tail_tolerance);

struct GofReport {
  FlightParams params;
  FlightParams reference;  // parameters of the analytic CDF tested against
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  double ks_distance = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// Exact Kolmogorov-Smirnov distance sup_r |F_N(r) - F(r)|.
template <class Cdf>
double ks_distance(std::vector<double> sample, Cdf&& cdf);

/// Simulates `params`, projects onto R^m and compares the radii with the
/// analytic CDF of `reference`.
GofReport gof_radial(const FlightParams& params, const FlightParams& reference, std::size_t sample_count,
                     std::uint64_t master_seed, double threshold = 0.01);

inline GofReport gof_radial(const FlightParams& params, std::size_t sample_count, std::uint64_t master_seed,
                            double threshold = 0.01) {
  return gof_radial(params, params, sample_count, master_seed, threshold);
}

struct CfPoint {
  std::vector<double> alpha;
  double analytic = 0.0;
  double empirical_real = 0.0;
  double empirical_imag = 0.0;
  double se_real = 0.0;
  double se_imag = 0.0;
  double z_real = 0.0;  // standardized deviations, 0 when the SE vanishes
  double z_imag = 0.0;
};

struct CfReport {
  FlightParams params;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  std::vector<CfPoint> points;
  double max_abs_z = 0.0;
  double threshold = 3.0;
  bool passed = false;
};

/// Empirical characteristic function of the full nu = 1 flight against the
/// closed form at each frequency vector.
CfReport gof_cf(const FlightParams& params, const std::vector<std::vector<double>>& alphas,
                std::size_t sample_count, std::uint64_t master_seed, double threshold = 3.0);

// ---- suite ------------------------------------------------------------------

struct SuiteEntry {
  std::string check_id;
  std::string params;  // JSON object text
  double metric = 0.0;
  double threshold = 0.0;
  bool passed = false;
  bool negative_control = false;
};

struct SuiteReport {
  std::vector<SuiteEntry> entries;

  /// Regular checks all pass and every negative control fails.
  bool success() const;
  std::string to_json() const;
};

struct IdentityCase {
  IdentityId id{};
  IdentityParams params;
};

struct GofCase {
  FlightParams params;
  FlightParams reference;
  bool negative_control = false;
};

struct CfCase {
  FlightParams params;
  std::vector<std::vector<double>> alphas;
};

enum class SuiteFilter { all, identities, gof };

struct SuiteConfig {
  std::uint64_t seed = 20240601;
  std::size_t radial_samples = 100000;
  std::size_t cf_samples = 1000000;
  double ks_threshold = 0.01;
  double identity_threshold = 1e-7;
  double truncated_identity_threshold = 1e-5;
  double cf_threshold = 3.0;
  SuiteFilter only = SuiteFilter::all;
  std::vector<IdentityCase> identities;
  std::vector<GofCase> radial;
  std::vector<CfCase> cf;

  /// The full grid: every identity at three or more points, the radial
  /// goodness-of-fit grid with one mismatched-nu control, and two
  /// characteristic-function checks.
  static SuiteConfig defaults();
};

SuiteReport run_suite(const SuiteConfig& config);

// ---- implementation -----------------------------------------------------------

template <class Cdf>
double ks_distance(std::vector<double> sample, Cdf&& cdf) {
  if (sample.empty()) return 0.0;
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

}  // namespace rflight::validation
