#include "rflight/flight.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "rflight/angular.hpp"
#include "rflight/temporal.hpp"

namespace rflight {

void FlightParams::validate() const {
  if (d < 2) throw std::domain_error("d must be >= 2, got " + std::to_string(d));
  if (m < 1 || m > d) throw std::domain_error("m must satisfy 1 <= m <= d");
  if (n < 0) throw std::domain_error("n must be >= 0");
  if (!(nu >= 0.0)) throw std::domain_error("nu must be >= 0");
  if (!(c > 0.0)) throw std::domain_error("c must be > 0");
  if (!(t > 0.0)) throw std::domain_error("t must be > 0");
}

namespace flight {
namespace {

std::vector<double> draw_taus(const FlightParams& p, RandomStream& rng) {
  if (p.n == 0) {
    return {p.t};
  }
  return temporal::sample_intertimes(p.n, p.d, p.nu, p.t, rng).taus;
}

}  // namespace

Trajectory simulate_flight(const FlightParams& p, RandomStream& rng) {
  p.validate();
  const auto d = static_cast<std::size_t>(p.d);
  const auto taus = draw_taus(p, rng);

  Trajectory tr;
  tr.breakpoints.reserve(taus.size() + 1);
  tr.times.reserve(taus.size() + 1);
  tr.breakpoints.emplace_back(d, 0.0);
  tr.times.push_back(0.0);

  std::vector<double> pos(d, 0.0);
  std::vector<double> dir(d);
  double clock = 0.0;
  for (std::size_t k = 0; k < taus.size(); ++k) {
    angular::sample_direction(p.d, p.nu, rng, dir);
    const double step = p.c * taus[k];
    for (std::size_t i = 0; i < d; ++i) {
      pos[i] += step * dir[i];
    }
    clock = (k + 1 == taus.size()) ? p.t : clock + taus[k];
    tr.breakpoints.push_back(pos);
    tr.times.push_back(clock);
  }
  tr.final = pos;
  return tr;
}

void simulate_endpoint(const FlightParams& p, RandomStream& rng, std::span<double> out) {
  const auto d = static_cast<std::size_t>(p.d);
  if (out.size() != d) {
    throw std::domain_error("endpoint buffer has wrong size");
  }
  const auto taus = draw_taus(p, rng);
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> dir(d);
  for (double tau : taus) {
    angular::sample_direction(p.d, p.nu, rng, dir);
    const double step = p.c * tau;
    for (std::size_t i = 0; i < d; ++i) {
      out[i] += step * dir[i];
    }
  }
}

std::vector<double> project(const Trajectory& tr, int m) {
  if (m < 1 || static_cast<std::size_t>(m) > tr.final.size()) {
    throw std::domain_error("project: m must satisfy 1 <= m <= d");
  }
  return {tr.final.begin(), tr.final.begin() + m};
}

double radial(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) {
    s += v * v;
  }
  return std::sqrt(s);
}

PositionBatch simulate_batch(const FlightParams& p, std::size_t count, std::uint64_t master_seed,
                             unsigned workers) {
  p.validate();
  if (count == 0) {
    throw std::domain_error("simulate_batch: count must be >= 1");
  }
  PositionBatch batch(count, static_cast<std::size_t>(p.d));
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream rng = derive_stream(master_seed, i);
      simulate_endpoint(p, rng, batch.row(i));
    }
  };
  if (workers == 1) {
    run(0, count);
    return batch;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(run, begin, end);
  }
  pool.clear();  // joins
  return batch;
}

Trajectory simulate_replicate(const FlightParams& p, std::uint64_t master_seed, std::uint64_t index) {
  RandomStream rng = derive_stream(master_seed, index);
  return simulate_flight(p, rng);
}

}  // namespace flight
}  // namespace rflight
