#pragma once

#include <cstdint>
#include <vector>

namespace rflight::specfun {

/// Gamma function for x > 0. Throws std::domain_error otherwise.
double gamma(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Bessel function of the first kind J_mu(x) for real order mu >= -1/2 and
/// x >= 0.
///
/// Evaluation strategy:
///   * x <= 12, or x <= mu / 2: ascending power series. The largest
///     cancelling term is bounded by I_mu(x), so the absolute error stays
///     below ~1e-12 on this region.
///   * x >= max(30, mu^2): Hankel asymptotic expansion, summed until the
///     terms stop decreasing.
///   * otherwise: Miller's downward recurrence started well above
///     max(mu, x), normalized with the Neumann sum
///     (x/2)^f = sum_k (f + 2k) Gamma(f + k) / k! J_{f+2k}(x), f = frac(mu).
double bessel_j(double mu, double x);

/// Gamma(mu + 1) (2 / x)^mu J_mu(x), continuous at x = 0 where it equals 1.
/// This is the form in which every characteristic function of the toolkit
/// is written; it never overflows for the orders used there.
double bessel_lambda(double mu, double x);

/// Series sum_k x^k / (k! Gamma(alpha k + beta)).
///
/// This is the k!-bearing variant used by the fractional Poisson law of the
/// number of turns, not the textbook two-parameter Mittag-Leffler function.
/// Terms are summed until the geometric tail bound drops below 1e-16 of the
/// partial sum.
double mittag_leffler_factorial(double alpha, double beta, double x);

/// (2n - 1)!! with the empty-product convention (-1)!! = 1.
/// Throws std::overflow_error if the result does not fit in 64 bits.
std::uint64_t double_factorial_odd(unsigned n);

/// Integer coefficients a_{0,n}..a_{n,n} expanding
///   P(m) = (2m + 2n - 1)(2m + 2n - 3)...(2m + 1)
/// in the falling-factorial basis m (m - 1) ... (m - j + 1).
class CoeffTable {
public:
  explicit CoeffTable(unsigned n);

  unsigned n() const noexcept { return n_; }
  std::uint64_t operator[](unsigned j) const { return coeffs_.at(j); }
  const std::vector<std::uint64_t>& coeffs() const noexcept { return coeffs_; }

  /// Right-hand side sum_j a_{j,n} m!/(m-j)! evaluated exactly.
  std::uint64_t expand(std::uint64_t m) const;

private:
  unsigned n_;
  std::vector<std::uint64_t> coeffs_;
};

/// Builds the a_{j,n} table by forward differences of P at m = 0..n.
CoeffTable falling_factorial_coeffs(unsigned n);

/// The odd product P(m) = prod_{i=1}^{n} (2m + 2i - 1), exact.
std::uint64_t odd_product(unsigned n, std::uint64_t m);

/// Binomial coefficient as a double (exact for the small arguments used).
double binomial(unsigned n, unsigned k);

}  // namespace rflight::specfun
