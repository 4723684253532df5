#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rflight/random.hpp"

namespace rflight {

/// Parameter bundle shared by the simulator and every closed-form result.
///   d  - ambient dimension (>= 2)
///   m  - projection dimension (1 <= m <= d)
///   n  - number of direction changes (>= 0; analytic formulas need >= 1)
///   nu - drift exponent of the angular law (>= 0)
///   c  - speed (> 0), t - time horizon (> 0)
struct FlightParams {
  int d = 2;
  int m = 1;
  int n = 1;
  double nu = 0.0;
  double c = 1.0;
  double t = 1.0;

  /// Throws std::domain_error if any invariant is violated.
  void validate() const;

  double reach() const noexcept { return c * t; }

  /// K = (n + 1)(2nu + d - 1) / 2, the index shared by the projected laws.
  double order_k() const noexcept { return 0.5 * (n + 1) * (2.0 * nu + d - 1.0); }
};

namespace flight {

/// Piecewise-linear path of one flight.
struct Trajectory {
  std::vector<std::vector<double>> breakpoints;  // n + 2 points, first is the origin
  std::vector<double> times;                     // 0 = t_0 < ... < t_{n+1} = t
  std::vector<double> final;

  std::size_t segments() const noexcept { return breakpoints.empty() ? 0 : breakpoints.size() - 1; }
};

/// Intertimes from the rescaled Dirichlet law (tau_1 = t when n = 0), one
/// independent direction per segment, position accumulated segment by
/// segment.
Trajectory simulate_flight(const FlightParams& p, RandomStream& rng);

/// Final position only; consumes the stream exactly like simulate_flight.
void simulate_endpoint(const FlightParams& p, RandomStream& rng, std::span<double> out);

/// First m coordinates of the final position.
std::vector<double> project(const Trajectory& tr, int m);

/// Euclidean norm.
double radial(std::span<const double> x);

/// Row-major block of final positions, one row per replicate.
class PositionBatch {
public:
  PositionBatch(std::size_t count, std::size_t dim) : dim_(dim), coords_(count * dim) {}

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<double> row(std::size_t i) { return {coords_.data() + i * dim_, dim_}; }

  const std::vector<double>& raw() const noexcept { return coords_; }

  friend bool operator==(const PositionBatch&, const PositionBatch&) = default;

private:
  std::size_t dim_;
  std::vector<double> coords_;
};

/// Replicate i uses derive_stream(master_seed, i), so the result is the same
/// for every worker count. workers == 0 picks the hardware concurrency.
PositionBatch simulate_batch(const FlightParams& p, std::size_t count, std::uint64_t master_seed,
                             unsigned workers = 0);

/// Full trajectory of replicate `index`; its final position equals row
/// `index` of simulate_batch with the same seed.
Trajectory simulate_replicate(const FlightParams& p, std::uint64_t master_seed, std::uint64_t index);

}  // namespace flight
}  // namespace rflight
