#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "rflight/flight.hpp"

using namespace rflight;
using namespace rflight::flight;

TEST(FlightParams, Validation) {
  EXPECT_NO_THROW((FlightParams{3, 2, 0, 0.5, 1.0, 1.0}.validate()));
  EXPECT_THROW((FlightParams{1, 1, 1, 0.0, 1.0, 1.0}.validate()), std::domain_error);
  EXPECT_THROW((FlightParams{3, 4, 1, 0.0, 1.0, 1.0}.validate()), std::domain_error);
  EXPECT_THROW((FlightParams{3, 0, 1, 0.0, 1.0, 1.0}.validate()), std::domain_error);
  EXPECT_THROW((FlightParams{3, 1, -1, 0.0, 1.0, 1.0}.validate()), std::domain_error);
  EXPECT_THROW((FlightParams{3, 1, 1, -0.1, 1.0, 1.0}.validate()), std::domain_error);
  EXPECT_THROW((FlightParams{3, 1, 1, 0.0, 0.0, 1.0}.validate()), std::domain_error);
  EXPECT_THROW((FlightParams{3, 1, 1, 0.0, 1.0, -1.0}.validate()), std::domain_error);
}

TEST(FlightParams, OrderK) {
  EXPECT_DOUBLE_EQ((FlightParams{2, 1, 1, 0.0, 1, 1}.order_k()), 1.0);
  EXPECT_DOUBLE_EQ((FlightParams{3, 1, 2, 1.0, 1, 1}.order_k()), 6.0);
}

TEST(SimulateFlight, StraightLineWithoutTurns) {
  RandomStream rng(3);
  const FlightParams p{3, 3, 0, 1.0, 2.0, 1.5};
  const auto tr = simulate_flight(p, rng);
  EXPECT_EQ(tr.segments(), 1u);
  EXPECT_NEAR(radial(tr.final), 3.0, 1e-14);
}

TEST(SimulateFlight, PathStaysInsideReachAndTimesIncrease) {
  RandomStream rng(4);
  const FlightParams p{4, 2, 5, 0.5, 1.3, 0.8};
  for (int i = 0; i < 300; ++i) {
    const auto tr = simulate_flight(p, rng);
    ASSERT_EQ(tr.segments(), 6u);
    EXPECT_EQ(tr.times.front(), 0.0);
    EXPECT_EQ(tr.times.back(), p.t);
    double travelled = 0.0;
    for (std::size_t k = 1; k < tr.breakpoints.size(); ++k) {
      EXPECT_LT(tr.times[k - 1], tr.times[k]);
      double step2 = 0.0;
      for (std::size_t j = 0; j < 4; ++j) {
        const double dx = tr.breakpoints[k][j] - tr.breakpoints[k - 1][j];
        step2 += dx * dx;
      }
      travelled += std::sqrt(step2);
      EXPECT_NEAR(std::sqrt(step2), p.c * (tr.times[k] - tr.times[k - 1]), 1e-12);
    }
    EXPECT_NEAR(travelled, p.reach(), 1e-12);
    EXPECT_LE(radial(tr.final), p.reach());
  }
}

TEST(SimulateEndpoint, MatchesFullTrajectory) {
  const FlightParams p{3, 1, 3, 1.0, 1.0, 1.0};
  RandomStream a(42), b(42);
  std::vector<double> out(3);
  for (int i = 0; i < 100; ++i) {
    const auto tr = simulate_flight(p, a);
    simulate_endpoint(p, b, out);
    for (int k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(tr.final[k], out[k]);
  }
  std::vector<double> wrong(2);
  EXPECT_THROW(simulate_endpoint(p, b, wrong), std::domain_error);
}

TEST(Project, TakesLeadingCoordinates) {
  Trajectory tr;
  tr.final = {1.0, 2.0, 3.0};
  EXPECT_EQ(project(tr, 2), (std::vector<double>{1.0, 2.0}));
  EXPECT_THROW(project(tr, 4), std::domain_error);
  EXPECT_THROW(project(tr, 0), std::domain_error);
}

TEST(SimulateBatch, IndependentOfWorkerCount) {
  const FlightParams p{3, 2, 2, 1.0, 1.0, 1.0};
  const auto one = simulate_batch(p, 1001, 123, 1);
  EXPECT_EQ(one, simulate_batch(p, 1001, 123, 3));
  EXPECT_EQ(one, simulate_batch(p, 1001, 123, 8));
  EXPECT_FALSE(one == simulate_batch(p, 1001, 124, 1));
}

TEST(SimulateBatch, RowsMatchReplicates) {
  const FlightParams p{2, 1, 1, 0.0, 1.0, 1.0};
  const auto batch = simulate_batch(p, 50, 9, 2);
  for (std::size_t i : {0u, 17u, 49u}) {
    const auto tr = simulate_replicate(p, 9, i);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_DOUBLE_EQ(batch[i][k], tr.final[k]);
  }
}

TEST(SimulateBatch, RejectsEmptyBatch) {
  EXPECT_THROW(simulate_batch(FlightParams{}, 0, 1), std::domain_error);
}

TEST(DeriveStream, DistinctIndicesGiveDistinctStreams) {
  EXPECT_NE(derive_stream(1, 0)(), derive_stream(1, 1)());
  EXPECT_EQ(derive_stream(5, 3)(), derive_stream(5, 3)());
}
