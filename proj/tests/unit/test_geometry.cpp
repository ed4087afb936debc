#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nrgg/errors.hpp"
#include "nrgg/geometry.hpp"

using namespace nrgg;

TEST_CASE("distance on hand-checked pairs") {
  CHECK(distance(std::vector<double>{0, 0}, std::vector<double>{0, 0}, Norm::L2) == 0.0);
  CHECK(distance(std::vector<double>{0, 0}, std::vector<double>{3, 4}, Norm::L2) == doctest::Approx(5.0));
  CHECK(distance(std::vector<double>{1, 1}, std::vector<double>{-2, 3}, Norm::L1) == doctest::Approx(5.0));
  CHECK(distance(std::vector<double>{1, 1}, std::vector<double>{-2, 3}, Norm::LInf) == doctest::Approx(3.0));
}

TEST_CASE("distance rejects mismatched or empty points") {
  CHECK_THROWS_AS(distance(std::vector<double>{0, 0}, std::vector<double>{0}, Norm::L2), ArgumentError);
  CHECK_THROWS_AS(distance(std::vector<double>{}, std::vector<double>{}, Norm::L2), ArgumentError);
}

TEST_CASE("metric axioms and norm ordering on random triples") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int d = 1; d <= 4; ++d) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> x(d), y(d), z(d);
      for (int k = 0; k < d; ++k) {
        x[k] = u(gen);
        y[k] = u(gen);
        z[k] = u(gen);
      }
      for (Norm norm : {Norm::L1, Norm::L2, Norm::LInf}) {
        CHECK(distance(x, x, norm) == 0.0);
        CHECK(distance(x, y, norm) == distance(y, x, norm));
        CHECK(distance(x, z, norm) <= distance(x, y, norm) + distance(y, z, norm) + 1e-12);
      }
      const double li = distance(x, y, Norm::LInf), l2 = distance(x, y, Norm::L2), l1 = distance(x, y, Norm::L1);
      CHECK(li <= l2 + 1e-12);
      CHECK(l2 <= l1 + 1e-12);
    }
  }
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(2, Norm::L2) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK(unit_ball_volume(3, Norm::LInf) == doctest::Approx(8.0));
  CHECK(unit_ball_volume(3, Norm::L1) == doctest::Approx(4.0 / 3.0));
  CHECK(unit_ball_volume(1, Norm::L2) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(3, Norm::L2) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
  const auto bv = ball_volume(2, Norm::L1);
  CHECK(bv.theta == doctest::Approx(2.0));
  CHECK(bv.d == 2);
  CHECK_THROWS_AS(unit_ball_volume(0, Norm::L2), ArgumentError);
}

TEST_CASE("Monte-Carlo ball volume within 1%") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int d = 1; d <= 3; ++d) {
    for (Norm norm : {Norm::L1, Norm::L2, Norm::LInf}) {
      const int samples = 1'000'000;
      std::vector<double> x(d);
      const std::vector<double> o(d, 0.0);
      int hits = 0;
      for (int s = 0; s < samples; ++s) {
        for (double& c : x) c = u(gen);
        if (distance(x, o, norm) <= 1.0) ++hits;
      }
      const double estimate = std::pow(2.0, d) * hits / samples;
      CHECK(std::fabs(estimate - unit_ball_volume(d, norm)) / unit_ball_volume(d, norm) < 0.01);
    }
  }
}

TEST_CASE("min_set_distance") {
  CHECK(min_set_distance(PointSet(1, {0}), PointSet(1, {0}), Norm::L2) == 0.0);
  CHECK(min_set_distance(PointSet(1, {0, 1}), PointSet(1, {5, 9}), Norm::L2) == doctest::Approx(4.0));
  CHECK(min_set_distance(PointSet(2, {0, 0, 2, 0}), PointSet(2, {5, 0}), Norm::L2) == doctest::Approx(3.0));
  CHECK_THROWS_AS(min_set_distance(PointSet(), PointSet(1, {0}), Norm::L2), ArgumentError);
  CHECK_THROWS_AS(min_set_distance(PointSet(1, {0}), PointSet(2, {0, 0}), Norm::L2), ArgumentError);
}

TEST_CASE("norm names round-trip") {
  for (Norm norm : {Norm::L1, Norm::L2, Norm::LInf}) CHECK(parse_norm(to_string(norm)) == norm);
  CHECK(parse_norm("linf") == Norm::LInf);
  CHECK_THROWS_AS(parse_norm("L3"), ArgumentError);
}
