#include "rflight/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rflight::specfun {
namespace {

constexpr double kSeriesSwitch = 12.0;
constexpr double kHankelFloor = 30.0;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in exact coefficient arithmetic");
  }
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in exact coefficient arithmetic");
  }
  return r;
}

bool use_series(double mu, double x) { return x <= kSeriesSwitch || x <= 0.5 * mu; }

bool use_hankel(double mu, double x) { return x >= std::max(kHankelFloor, mu * mu); }

// sum_k (-1)^k (x/2)^{2k} / (k! (mu+1)_k)
double scaled_series(double mu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= -q / (k * (k + mu));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && k > q / (k + mu + 1.0)) {
      break;
    }
  }
  return sum;
}

double bessel_series(double mu, double x) {
  const double lead = std::exp(mu * std::log(0.5 * x) - std::lgamma(mu + 1.0));
  return lead * scaled_series(mu, x);
}

double bessel_hankel(double mu, double x) {
  const double four_mu2 = 4.0 * mu * mu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (four_mu2 - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > prev) {
      break;  // asymptotic series has started to diverge
    }
    // a_k / x^k contributes to P for even k and Q for odd k, with sign (-1)^{floor(k/2)}
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * term;
    } else {
      q += sign * term;
    }
    if (mag < 1e-17) {
      break;
    }
    prev = mag;
  }
  const double phase = (0.5 * mu + 0.25) * std::numbers::pi;
  const double cx = std::cos(x);
  const double sx = std::sin(x);
  const double cp = std::cos(phase);
  const double sp = std::sin(phase);
  const double cos_chi = cx * cp + sx * sp;
  const double sin_chi = sx * cp - cx * sp;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

double bessel_miller(double mu, double x) {
  // mu = frac + top with frac in [-1/2, 1)
  const double top_d = mu >= 0.0 ? std::floor(mu) : 0.0;
  const int top = static_cast<int>(top_d);
  const double frac = mu - top_d;

  const double span = std::max(top_d, x);
  int start = static_cast<int>(span + 30.0 + 10.0 * std::sqrt(span));
  start += start % 2;  // even, so the Neumann sum sees every even index

  // Neumann coefficients for even indices 2i: i = 0 -> Gamma(frac+1),
  // i >= 1 -> (frac + 2i) Gamma(frac + i) / i!.
  const int half = start / 2;
  std::vector<double> weight(static_cast<std::size_t>(half) + 1);
  weight[0] = std::tgamma(frac + 1.0);
  double g = weight[0];  // Gamma(frac + i) / i! at i = 1
  for (int i = 1; i <= half; ++i) {
    if (i > 1) {
      g *= (frac + i - 1.0) / i;
    }
    weight[static_cast<std::size_t>(i)] = (frac + 2.0 * i) * g;
  }

  constexpr double kBig = 1e250;
  double above = 0.0;
  double cur = 1e-30;
  double norm = (start % 2 == 0) ? weight[static_cast<std::size_t>(start / 2)] * cur : 0.0;
  double kept = (start == top) ? cur : 0.0;
  for (int k = start; k >= 1; --k) {
    const double below = 2.0 * (frac + k) / x * cur - above;
    above = cur;
    cur = below;
    const int idx = k - 1;
    if (idx % 2 == 0) {
      norm += weight[static_cast<std::size_t>(idx / 2)] * cur;
    }
    if (idx == top) {
      kept = cur;
    }
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      above /= kBig;
      norm /= kBig;
      kept /= kBig;
    }
  }
  return kept * std::pow(0.5 * x, frac) / norm;
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("gamma: argument must be positive, got " + std::to_string(x));
  }
  return std::tgamma(x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive, got " + std::to_string(x));
  }
  return std::lgamma(x);
}

double bessel_j(double mu, double x) {
  if (!(mu >= -0.5)) {
    throw std::domain_error("bessel_j: order must be >= -1/2");
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("bessel_j: argument must be >= 0");
  }
  if (x == 0.0) {
    if (mu == 0.0) return 1.0;
    if (mu > 0.0) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  if (use_series(mu, x)) {
    return bessel_series(mu, x);
  }
  if (use_hankel(mu, x)) {
    return bessel_hankel(mu, x);
  }
  return bessel_miller(mu, x);
}

double bessel_lambda(double mu, double x) {
  if (!(mu >= -0.5)) {
    throw std::domain_error("bessel_lambda: order must be >= -1/2");
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("bessel_lambda: argument must be >= 0");
  }
  if (x == 0.0) {
    return 1.0;
  }
  if (use_series(mu, x)) {
    return scaled_series(mu, x);
  }
  return std::exp(std::lgamma(mu + 1.0) + mu * std::log(2.0 / x)) * bessel_j(mu, x);
}

double mittag_leffler_factorial(double alpha, double beta, double x) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("mittag_leffler_factorial: alpha and beta must be positive");
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("mittag_leffler_factorial: argument must be >= 0");
  }
  if (x == 0.0) {
    return 1.0 / std::tgamma(beta);
  }
  const double log_x = std::log(x);
  auto log_term = [&](int k) {
    return k * log_x - std::lgamma(k + 1.0) - std::lgamma(alpha * k + beta);
  };
  double sum = std::exp(log_term(0));
  for (int k = 0; k < 100000; ++k) {
    const double next = std::exp(log_term(k + 1));
    sum += next;
    // successive-term ratios decrease in k, so once below one the tail
    // after `next` is bounded by a geometric series
    const double ratio = std::exp(log_term(k + 1) - log_term(k));
    if (ratio < 1.0 && next / (1.0 - ratio) <= 1e-16 * sum) {
      break;
    }
  }
  return sum;
}

std::uint64_t double_factorial_odd(unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= n; ++i) {
    r = checked_mul(r, 2ULL * i - 1ULL);
  }
  return r;
}

std::uint64_t odd_product(unsigned n, std::uint64_t m) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= n; ++i) {
    r = checked_mul(r, checked_add(2ULL * m, 2ULL * i - 1ULL));
  }
  return r;
}

CoeffTable::CoeffTable(unsigned n) : n_(n), coeffs_(n + 1, 0) {
  // Newton forward differences at 0: a_j = Delta^j P(0) / j!. Every
  // difference Delta^j P(m) is a non-negative combination of the a_i, so
  // unsigned arithmetic never underflows.
  std::vector<std::uint64_t> diff(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    diff[m] = odd_product(n, m);
  }
  std::uint64_t fact = 1;
  for (unsigned j = 0; j <= n; ++j) {
    if (j > 0) {
      fact = checked_mul(fact, j);
    }
    if (diff[0] % fact != 0) {
      throw std::logic_error("falling_factorial_coeffs: non-integral coefficient");
    }
    coeffs_[j] = diff[0] / fact;
    for (unsigned m = 0; m + j < n; ++m) {
      if (diff[m + 1] < diff[m]) {
        throw std::logic_error("falling_factorial_coeffs: negative difference");
      }
      diff[m] = diff[m + 1] - diff[m];
    }
  }
}

std::uint64_t CoeffTable::expand(std::uint64_t m) const {
  std::uint64_t total = 0;
  std::uint64_t falling = 1;  // m (m-1) ... (m-j+1)
  for (unsigned j = 0; j <= n_; ++j) {
    if (j > 0) {
      if (m < j) break;
      falling = checked_mul(falling, m - j + 1);
    }
    total = checked_add(total, checked_mul(coeffs_[j], falling));
  }
  return total;
}

CoeffTable falling_factorial_coeffs(unsigned n) { return CoeffTable(n); }

double binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return std::round(r);
}

}  // namespace rflight::specfun
