#include "rflight/validation.hpp"

#include <array>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rflight/analytic.hpp"
#include "rflight/quadrature.hpp"
#include "rflight/specfun.hpp"

namespace rflight::validation {
namespace {

using nlohmann::json;
constexpr double pi = std::numbers::pi;

// Tail target for the semi-infinite identity.
constexpr double weber_tail_tolerance = 1e-8;

constexpr std::array<std::pair<IdentityId, std::string_view>, 10> identity_names{{
    {IdentityId::ring_uniform, "ring_uniform"},
    {IdentityId::ring_sin2, "ring_sin2"},
    {IdentityId::ring_sin4, "ring_sin4"},
    {IdentityId::ring_sin6, "ring_sin6"},
    {IdentityId::ring_general, "ring_general"},
    {IdentityId::ring_odd, "ring_odd"},
    {IdentityId::bessel_convolution, "bessel_convolution"},
    {IdentityId::bessel_ratio_convolution, "bessel_ratio_convolution"},
    {IdentityId::weber_schafheitlin, "weber_schafheitlin"},
    {IdentityId::sine_cosine_bessel, "sine_cosine_bessel"},
}};

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

std::vector<double> even_cuts(double a, double b, std::size_t pieces) {
  std::vector<double> cuts(pieces + 1);
  for (std::size_t i = 0; i <= pieces; ++i) {
    cuts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(pieces);
  }
  cuts.back() = b;
  return cuts;
}

// Pieces of length at most a half-period of frequency `omega`.
std::size_t pieces_for(double length, double omega) {
  return static_cast<std::size_t>(std::ceil(length * omega / pi)) + 4;
}

int ring_power(IdentityId id, const IdentityParams& p) {
  switch (id) {
    case IdentityId::ring_uniform: return 0;
    case IdentityId::ring_sin2: return 1;
    case IdentityId::ring_sin4: return 2;
    case IdentityId::ring_sin6: return 3;
    default: return p.n;
  }
}

void ring_lhs(IdentityReport& r, int n, double tol) {
  const auto& p = r.params;
  const double omega = std::abs(p.z) * std::hypot(p.alpha, p.beta);
  const auto cuts = even_cuts(0.0, 2.0 * pi, pieces_for(2.0 * pi, omega));
  auto phase = [&](double th) { return p.z * (p.alpha * std::cos(th) + p.beta * std::sin(th)); };
  auto weight = [&](double th) { return std::pow(std::sin(th), 2 * n); };
  r.lhs = quad::piecewise([&](double th) { return std::cos(phase(th)) * weight(th); }, cuts, tol).value;
  r.lhs_imag = quad::piecewise([&](double th) { return std::sin(phase(th)) * weight(th); }, cuts, tol).value;
}

// Closed forms written out term by term for the first powers.
double ring_rhs_explicit(int n, const IdentityParams& p) {
  const double rho = std::hypot(p.alpha, p.beta);
  const double x = p.z * rho;
  const double b2 = p.beta * p.beta / (rho * rho);
  auto j = [&](int order) { return specfun::bessel_j(order, x); };
  switch (n) {
    case 0: return 2.0 * pi * j(0);
    case 1: return 2.0 * pi * (j(1) / x - b2 * j(2));
    case 2:
      return 2.0 * pi * (3.0 / (x * x) * j(2) - 6.0 * p.beta * p.beta / (p.z * rho * rho * rho) * j(3) +
                         b2 * b2 * j(4));
    case 3:
      return 2.0 * pi *
             (15.0 / (x * x * x) * j(3) -
              45.0 * p.beta * p.beta / (p.z * p.z * std::pow(rho, 4)) * j(4) +
              15.0 * std::pow(p.beta, 4) / (p.z * std::pow(rho, 5)) * j(5) - b2 * b2 * b2 * j(6));
    default: throw std::logic_error("no explicit ring form");
  }
}

// 2 pi sum_j (-1)^j a_{j,n} beta^{2j} J_{n+j}(z rho) / (2^j z^{n-j} rho^{n+j}),
// rewritten with normalized Bessel functions so that z rho = 0 is harmless.
double ring_rhs_general(int n, const IdentityParams& p) {
  const double rho = std::hypot(p.alpha, p.beta);
  const double x = std::abs(p.z) * rho;
  const auto table = specfun::falling_factorial_coeffs(static_cast<unsigned>(n));
  const double bz2 = p.beta * p.beta * p.z * p.z;
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    const double order = n + j;
    const double log_scale = -(n + 2.0 * j) * std::numbers::ln2 - std::lgamma(order + 1.0);
    const double power = (j == 0) ? 1.0 : std::pow(bz2, j);
    sum += sign * static_cast<double>(table[static_cast<unsigned>(j)]) * power * std::exp(log_scale) *
           specfun::bessel_lambda(order, x);
  }
  return 2.0 * pi * sum;
}

IdentityReport check_ring(IdentityId id, IdentityReport r, double tol) {
  const auto& p = r.params;
  const int n = ring_power(id, p);
  if (id == IdentityId::ring_general) {
    require(n >= 0, "ring_general needs n >= 0");
  } else {
    require(p.z != 0.0 && std::hypot(p.alpha, p.beta) > 0.0,
            "explicit ring forms need z != 0 and (alpha, beta) != 0");
  }
  ring_lhs(r, n, tol);
  r.rhs = (id == IdentityId::ring_general) ? ring_rhs_general(n, p) : ring_rhs_explicit(n, p);
  return r;
}

IdentityReport check_ring_odd(IdentityReport r, double tol) {
  const auto& p = r.params;
  require(p.nu >= -0.5, "ring_odd needs nu >= -1/2");
  require(p.alpha >= 0.0, "ring_odd needs alpha >= 0");
  auto f = [&](double x) {
    const double s = std::sin(x);
    return std::sin(p.beta * std::cos(x)) * std::pow(s, p.nu + 1.0) * specfun::bessel_j(p.nu, p.alpha * s);
  };
  const auto cuts = even_cuts(0.0, pi, pieces_for(pi, std::abs(p.beta) + p.alpha));
  r.lhs = quad::piecewise(f, cuts, tol).value;
  r.rhs = 0.0;
  return r;
}

IdentityReport check_convolution(IdentityReport r, double tol) {
  const auto& p = r.params;
  require(p.mu > -0.5 && p.nu > -0.5, "bessel_convolution needs mu, nu > -1/2");
  require(p.a > 0.0, "bessel_convolution needs a > 0");
  auto f = [&](double x) {
    const double y = p.a - x;
    return std::pow(x, p.mu) * std::pow(y, p.nu) * specfun::bessel_j(p.mu, x) * specfun::bessel_j(p.nu, y);
  };
  r.lhs = quad::endpoint_singular(f, 0.0, p.a, tol).value;
  const double order = p.mu + p.nu + 0.5;
  r.rhs = std::exp(std::lgamma(p.mu + 0.5) + std::lgamma(p.nu + 0.5) - std::lgamma(p.mu + p.nu + 1.0)) /
          std::sqrt(2.0 * pi) * std::pow(p.a, order) * specfun::bessel_j(order, p.a);
  return r;
}

IdentityReport check_ratio_convolution(IdentityReport r, double tol) {
  const auto& p = r.params;
  require(p.mu > 0.0 && p.nu > 0.0, "bessel_ratio_convolution needs mu, nu > 0");
  require(p.a > 0.0, "bessel_ratio_convolution needs a > 0");
  auto f = [&](double x) {
    const double y = p.a - x;
    return specfun::bessel_j(p.mu, x) / x * specfun::bessel_j(p.nu, y) / y;
  };
  r.lhs = quad::endpoint_singular(f, 0.0, p.a, tol).value;
  r.rhs = (1.0 / p.mu + 1.0 / p.nu) * specfun::bessel_j(p.mu + p.nu, p.a) / p.a;
  return r;
}

void require_weber(const IdentityParams& p) {
  require(p.a >= p.b && p.b >= 0.0 && p.a > 0.0, "weber_schafheitlin needs a >= b >= 0, a > 0");
  require(p.mu > 0.0 && p.nu + 1.0 > p.mu, "weber_schafheitlin needs nu + 1 > mu > 0");
  require(p.nu > p.mu, "weber_schafheitlin truncation needs nu > mu");
}

double weber_tail(const IdentityParams& p, double cutoff) {
  if (p.b == 0.0) return 0.0;
  return 2.0 / (pi * std::sqrt(p.a * p.b)) * std::pow(cutoff, p.mu - p.nu) / (p.nu - p.mu);
}

double weber_integral(const IdentityParams& p, double cutoff, double tol) {
  auto f = [&](double x) {
    return std::pow(x, p.mu - p.nu) * specfun::bessel_j(p.nu + 1.0, p.a * x) * specfun::bessel_j(p.mu, p.b * x);
  };
  const auto cuts = even_cuts(0.0, cutoff, pieces_for(cutoff, p.a + p.b));
  return quad::piecewise(f, cuts, tol).value;
}

IdentityReport check_weber(IdentityReport r, double tol) {
  const auto& p = r.params;
  require_weber(p);
  const double cutoff = weber_schafheitlin_cutoff(p, weber_tail_tolerance);
  r.lhs = weber_integral(p, cutoff, tol);
  r.tail_bound = weber_tail(p, cutoff);
  const double gap = p.nu - p.mu;
  r.rhs = (p.a == p.b) ? 0.0
                       : std::pow(p.a * p.a - p.b * p.b, gap) * std::pow(p.b, p.mu) /
                             (std::pow(2.0, gap) * std::pow(p.a, p.nu + 1.0) * std::tgamma(gap + 1.0));
  return r;
}

IdentityReport check_sine_cosine(IdentityReport r, double tol) {
  const auto& p = r.params;
  require(p.nu >= -0.5, "sine_cosine_bessel needs nu >= -1/2");
  require(p.a > 0.0, "sine_cosine_bessel needs a > 0");
  auto f = [&](double x) {
    const double s = std::sin(x);
    return std::pow(s, p.nu + 1.0) * std::cos(p.b * std::cos(x)) * specfun::bessel_j(p.nu, p.a * s);
  };
  const auto cuts = even_cuts(0.0, 0.5 * pi, pieces_for(0.5 * pi, p.a + std::abs(p.b)));
  r.lhs = quad::piecewise(f, cuts, tol).value;
  const double rho = std::hypot(p.a, p.b);
  r.rhs = std::sqrt(0.5 * pi) * std::pow(p.a, p.nu) * specfun::bessel_j(p.nu + 0.5, rho) /
          std::pow(rho, p.nu + 0.5);
  return r;
}

json flight_json(const FlightParams& p) {
  return {{"d", p.d}, {"m", p.m}, {"n", p.n}, {"nu", p.nu}, {"c", p.c}, {"t", p.t}};
}

json identity_json(IdentityId id, const IdentityParams& p) {
  switch (id) {
    case IdentityId::ring_uniform:
    case IdentityId::ring_sin2:
    case IdentityId::ring_sin4:
    case IdentityId::ring_sin6: return {{"z", p.z}, {"alpha", p.alpha}, {"beta", p.beta}};
    case IdentityId::ring_general: return {{"z", p.z}, {"alpha", p.alpha}, {"beta", p.beta}, {"n", p.n}};
    case IdentityId::ring_odd: return {{"alpha", p.alpha}, {"beta", p.beta}, {"nu", p.nu}};
    case IdentityId::bessel_convolution:
    case IdentityId::bessel_ratio_convolution: return {{"mu", p.mu}, {"nu", p.nu}, {"a", p.a}};
    case IdentityId::weber_schafheitlin: return {{"mu", p.mu}, {"nu", p.nu}, {"a", p.a}, {"b", p.b}};
    case IdentityId::sine_cosine_bessel: return {{"nu", p.nu}, {"a", p.a}, {"b", p.b}};
  }
  return json::object();
}

bool is_ring(IdentityId id) {
  return id == IdentityId::ring_uniform || id == IdentityId::ring_sin2 || id == IdentityId::ring_sin4 ||
         id == IdentityId::ring_sin6 || id == IdentityId::ring_general;
}

}  // namespace

std::string_view to_string(IdentityId id) {
  for (const auto& [key, name] : identity_names) {
    if (key == id) return name;
  }
  return "unknown";
}

std::optional<IdentityId> identity_from_string(std::string_view name) {
  for (const auto& [key, label] : identity_names) {
    if (label == name) return key;
  }
  return std::nullopt;
}

const std::vector<IdentityId>& all_identities() {
  static const std::vector<IdentityId> ids = [] {
    std::vector<IdentityId> v;
    for (const auto& entry : identity_names) v.push_back(entry.first);
    return v;
  }();
  return ids;
}

double weber_schafheitlin_cutoff(const IdentityParams& p, double tail_tolerance) {
  require_weber(p);
  if (p.b == 0.0) return 1.0;
  const double gap = p.nu - p.mu;
  // Solve 2 / (pi sqrt(ab)) T^{-gap} / gap = tail_tolerance for T.
  const double cutoff = std::pow(tail_tolerance * pi * std::sqrt(p.a * p.b) * gap / 2.0, -1.0 / gap);
  return std::max(cutoff, 10.0 / p.b);
}

IdentityReport check_identity(IdentityId id, const IdentityParams& params, double tolerance) {
  IdentityReport r;
  r.id = id;
  r.params = params;
  switch (id) {
    case IdentityId::ring_uniform:
    case IdentityId::ring_sin2:
    case IdentityId::ring_sin4:
    case IdentityId::ring_sin6:
    case IdentityId::ring_general: r = check_ring(id, r, tolerance); break;
    case IdentityId::ring_odd: r = check_ring_odd(r, tolerance); break;
    case IdentityId::bessel_convolution: r = check_convolution(r, tolerance); break;
    case IdentityId::bessel_ratio_convolution: r = check_ratio_convolution(r, tolerance); break;
    case IdentityId::weber_schafheitlin: r = check_weber(r, tolerance); break;
    case IdentityId::sine_cosine_bessel: r = check_sine_cosine(r, tolerance); break;
  }
  r.abs_err = std::abs(r.lhs - r.rhs);
  return r;
}

GofReport gof_radial(const FlightParams& params, const FlightParams& reference, std::size_t sample_count,
                     std::uint64_t master_seed, double threshold) {
  params.validate();
  reference.validate();
  if (reference.m >= reference.d || reference.n < 1) {
    throw std::domain_error("gof_radial needs m < d and n >= 1");
  }
  const auto batch = flight::simulate_batch(params, sample_count, master_seed);
  std::vector<double> radii(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    radii[i] = flight::radial(batch[i].first(static_cast<std::size_t>(params.m)));
  }

  GofReport rep;
  rep.params = params;
  rep.reference = reference;
  rep.sample_count = sample_count;
  rep.seed = master_seed;
  rep.threshold = threshold;
  rep.ks_distance =
      ks_distance(std::move(radii), [&](double r) { return analytic::cdf_radial_projection(reference, r); });
  rep.passed = rep.ks_distance < threshold;
  return rep;
}

CfReport gof_cf(const FlightParams& params, const std::vector<std::vector<double>>& alphas,
                std::size_t sample_count, std::uint64_t master_seed, double threshold) {
  params.validate();
  if (params.nu != 1.0 || params.n < 1) {
    throw std::domain_error("gof_cf needs nu = 1 and n >= 1");
  }
  const auto batch = flight::simulate_batch(params, sample_count, master_seed);
  const double count = static_cast<double>(batch.size());

  CfReport rep;
  rep.params = params;
  rep.sample_count = sample_count;
  rep.seed = master_seed;
  rep.threshold = threshold;
  for (const auto& alpha : alphas) {
    if (alpha.size() != static_cast<std::size_t>(params.d)) {
      throw std::domain_error("gof_cf: every alpha must have d entries");
    }
    double sc = 0.0, sc2 = 0.0, ss = 0.0, ss2 = 0.0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto x = batch[i];
      double phase = 0.0;
      for (std::size_t k = 0; k < alpha.size(); ++k) phase += alpha[k] * x[k];
      const double c = std::cos(phase), s = std::sin(phase);
      sc += c;
      sc2 += c * c;
      ss += s;
      ss2 += s * s;
    }
    CfPoint pt;
    pt.alpha = alpha;
    pt.analytic = analytic::cf_nu1(params, alpha);
    pt.empirical_real = sc / count;
    pt.empirical_imag = ss / count;
    const double var_c = std::max(0.0, sc2 / count - pt.empirical_real * pt.empirical_real);
    const double var_s = std::max(0.0, ss2 / count - pt.empirical_imag * pt.empirical_imag);
    pt.se_real = std::sqrt(var_c / count);
    pt.se_imag = std::sqrt(var_s / count);
    pt.z_real = pt.se_real > 0.0 ? (pt.empirical_real - pt.analytic) / pt.se_real : 0.0;
    pt.z_imag = pt.se_imag > 0.0 ? pt.empirical_imag / pt.se_imag : 0.0;
    rep.max_abs_z = std::max({rep.max_abs_z, std::abs(pt.z_real), std::abs(pt.z_imag)});
    rep.points.push_back(std::move(pt));
  }
  rep.passed = rep.max_abs_z <= threshold;
  return rep;
}

bool SuiteReport::success() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const SuiteEntry& e) { return e.passed != e.negative_control; });
}

std::string SuiteReport::to_json() const {
  json out = json::array();
  for (const auto& e : entries) {
    out.push_back({{"check_id", e.check_id},
                   {"params", json::parse(e.params)},
                   {"metric", e.metric},
                   {"threshold", e.threshold},
                   {"passed", e.passed},
                   {"negative_control", e.negative_control}});
  }
  return out.dump(2);
}

SuiteConfig SuiteConfig::defaults() {
  SuiteConfig cfg;
  auto ring = [&](IdentityId id, double z, double alpha, double beta, int n = 0) {
    IdentityParams p;
    p.z = z;
    p.alpha = alpha;
    p.beta = beta;
    p.n = n;
    cfg.identities.push_back({id, p});
  };
  for (auto id : {IdentityId::ring_uniform, IdentityId::ring_sin2, IdentityId::ring_sin4, IdentityId::ring_sin6}) {
    ring(id, 1.0, 1.0, 0.0);
    ring(id, 2.0, 0.5, 1.0);
    ring(id, 3.5, -1.0, 2.0);
  }
  for (int n = 0; n <= 4; ++n) {
    ring(IdentityId::ring_general, 1.5, 0.8, -0.6, n);
    ring(IdentityId::ring_general, 4.0, 1.0, 1.0, n);
  }
  ring(IdentityId::ring_general, 0.0, 1.0, 1.0, 3);

  auto bessel = [&](IdentityId id, double mu, double nu, double a, double b) {
    IdentityParams p;
    p.mu = mu;
    p.nu = nu;
    p.a = a;
    p.b = b;
    cfg.identities.push_back({id, p});
  };
  auto odd = [&](double alpha, double beta, double nu) {
    IdentityParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.nu = nu;
    cfg.identities.push_back({IdentityId::ring_odd, p});
  };
  odd(1.0, 1.0, 0.0);
  odd(2.0, 0.5, 1.0);
  odd(1.5, 3.0, 2.5);
  bessel(IdentityId::bessel_convolution, 0.5, 0.5, 3.0, 0.0);
  bessel(IdentityId::bessel_convolution, 1.0, 2.0, 5.0, 0.0);
  bessel(IdentityId::bessel_convolution, -0.25, 0.75, 2.0, 0.0);
  bessel(IdentityId::bessel_ratio_convolution, 1.0, 1.0, 2.0, 0.0);
  bessel(IdentityId::bessel_ratio_convolution, 0.5, 1.5, 4.0, 0.0);
  bessel(IdentityId::bessel_ratio_convolution, 2.0, 3.0, 7.0, 0.0);
  bessel(IdentityId::weber_schafheitlin, 1.0, 3.0, 2.0, 1.0);
  bessel(IdentityId::weber_schafheitlin, 0.5, 2.5, 3.0, 1.0);
  bessel(IdentityId::weber_schafheitlin, 1.5, 4.0, 2.0, 0.5);
  bessel(IdentityId::weber_schafheitlin, 1.0, 3.0, 1.5, 1.5);
  bessel(IdentityId::sine_cosine_bessel, 0.0, 1.0, 2.0, 0.0);
  bessel(IdentityId::sine_cosine_bessel, 0.0, 0.0, 1.0, 1.0);
  bessel(IdentityId::sine_cosine_bessel, 0.0, 2.5, 3.0, -2.0);
  bessel(IdentityId::sine_cosine_bessel, 0.0, -0.5, 1.5, 4.0);

  for (int d = 2; d <= 4; ++d) {
    for (int m = 1; m <= 2 && m < d; ++m) {
      for (int n = 1; n <= 3; ++n) {
        for (double nu : {0.0, 1.0}) {
          FlightParams p{d, m, n, nu, 1.0, 1.0};
          cfg.radial.push_back({p, p, false});
        }
      }
    }
  }
  FlightParams sim{3, 2, 2, 1.0, 1.0, 1.0};
  FlightParams wrong = sim;
  wrong.nu = 0.0;
  cfg.radial.push_back({sim, wrong, true});

  cfg.cf.push_back({FlightParams{2, 2, 1, 1.0, 1.0, 1.0},
                    {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, -1}, {0.5, 2}, {3, 0}, {-1.5, 1.5}, {0, 4}}});
  cfg.cf.push_back({FlightParams{3, 3, 2, 1.0, 1.0, 1.0},
                    {{0, 0, 0},
                     {1, 0, 0},
                     {0, 0, 1},
                     {1, 1, 1},
                     {2, 0, -1},
                     {0.5, 1, 2},
                     {3, 0, 0},
                     {0, -1.5, 1.5},
                     {1, 2, 3}}});
  return cfg;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  SuiteReport report;
  const bool identities = cfg.only != SuiteFilter::gof;
  const bool gof = cfg.only != SuiteFilter::identities;

  if (identities) {
    for (const auto& c : cfg.identities) {
      SuiteEntry e;
      e.check_id = "identity/" + std::string(to_string(c.id));
      e.params = identity_json(c.id, c.params).dump();
      e.threshold = c.id == IdentityId::weber_schafheitlin ? cfg.truncated_identity_threshold
                                                            : cfg.identity_threshold;
      try {
        const auto r = check_identity(c.id, c.params);
        e.metric = is_ring(c.id) ? std::max(r.abs_err, std::abs(r.lhs_imag)) : r.abs_err;
        e.passed = e.metric < e.threshold;
      } catch (const std::exception& ex) {
        e.metric = std::numeric_limits<double>::infinity();
        e.params = json{{"input", json::parse(e.params)}, {"error", ex.what()}}.dump();
      }
      report.entries.push_back(std::move(e));
    }
  }
  if (gof) {
    for (std::size_t i = 0; i < cfg.radial.size(); ++i) {
      const auto& c = cfg.radial[i];
      const std::uint64_t seed = mix_seed(cfg.seed + i);
      SuiteEntry e;
      e.check_id = "gof/radial";
      e.negative_control = c.negative_control;
      e.threshold = cfg.ks_threshold;
      json params{{"simulated", flight_json(c.params)},
                  {"reference", flight_json(c.reference)},
                  {"samples", cfg.radial_samples},
                  {"seed", seed}};
      try {
        const auto r = gof_radial(c.params, c.reference, cfg.radial_samples, seed, cfg.ks_threshold);
        e.metric = r.ks_distance;
        e.passed = r.passed;
      } catch (const std::exception& ex) {
        e.metric = std::numeric_limits<double>::infinity();
        params["error"] = ex.what();
      }
      e.params = params.dump();
      report.entries.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < cfg.cf.size(); ++i) {
      const auto& c = cfg.cf[i];
      const std::uint64_t seed = mix_seed(cfg.seed + 1000 + i);
      SuiteEntry e;
      e.check_id = "gof/cf";
      e.threshold = cfg.cf_threshold;
      json params{{"flight", flight_json(c.params)},
                  {"alphas", c.alphas},
                  {"samples", cfg.cf_samples},
                  {"seed", seed}};
      try {
        const auto r = gof_cf(c.params, c.alphas, cfg.cf_samples, seed, cfg.cf_threshold);
        e.metric = r.max_abs_z;
        e.passed = r.passed;
      } catch (const std::exception& ex) {
        e.metric = std::numeric_limits<double>::infinity();
        params["error"] = ex.what();
      }
      e.params = params.dump();
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

}  // namespace rflight::validation
