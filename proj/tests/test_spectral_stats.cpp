#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "floq/spectral_stats.hpp"
#include "floq/rng.hpp"

using namespace floq;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd uniform_phases(int n, SplitMix64& stream) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = kPi * (2.0 * stream.next_unit() - 1.0) + 1e-9;
  std::sort(v.begin(), v.end());
  return Eigen::Map<Eigen::VectorXd>(v.data(), n);
}

}  // namespace

TEST_SUITE("spectral_stats") {
  TEST_CASE("equally spaced phases give all ratios 1") {
    Eigen::VectorXd phases(4);
    phases << -kPi / 2, 0.0, kPi / 2, kPi;
    const GapRatioSet set = gap_ratios(phases);
    REQUIRE(set.r_values.size() == 4);
    for (const double r : set.r_values) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(set.mean_r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(set.excluded == 0);
  }

  TEST_CASE("hand-computed four-phase example") {
    Eigen::VectorXd phases(4);
    phases << 0.0, 0.1, 0.3, 0.7;
    const GapRatioSet set = gap_ratios(phases);
    REQUIRE(set.r_values.size() == 4);
    const double wrap = 2.0 * kPi - 0.7;
    CHECK(set.r_values[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(set.r_values[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(set.r_values[2] == doctest::Approx(0.4 / wrap).epsilon(1e-12));
    CHECK(set.r_values[3] == doctest::Approx(0.1 / wrap).epsilon(1e-12));
    CHECK(set.dim == 4);
  }

  TEST_CASE("ratios stay in [0, 1]") {
    SplitMix64 stream(2);
    for (int rep = 0; rep < 20; ++rep) {
      const GapRatioSet set = gap_ratios(uniform_phases(200, stream));
      for (const double r : set.r_values) {
        CHECK(r >= 0.0);
        CHECK(r <= 1.0);
      }
    }
  }

  TEST_CASE("iid uniform phases reproduce the Poisson mean 2 ln 2 - 1") {
    SplitMix64 stream(99);
    RunningStats grand;
    for (int rep = 0; rep < 50; ++rep) {
      const GapRatioSet set = gap_ratios(uniform_phases(2000, stream));
      for (const double r : set.r_values) grand.add(r);
    }
    CHECK(std::abs(grand.mean - (2.0 * std::log(2.0) - 1.0)) < 0.01);
  }

  TEST_CASE("ratio set is invariant under a global phase shift") {
    SplitMix64 stream(7);
    const Eigen::VectorXd phases = uniform_phases(300, stream);
    const double shift = 1.2345;
    std::vector<double> shifted(300);
    for (int k = 0; k < 300; ++k) {
      double p = phases(k) + shift;
      if (p > kPi) p -= 2.0 * kPi;
      shifted[static_cast<std::size_t>(k)] = p;
    }
    std::sort(shifted.begin(), shifted.end());
    const GapRatioSet a = gap_ratios(phases);
    GapRatioSet b = gap_ratios(Eigen::Map<Eigen::VectorXd>(shifted.data(), 300));
    std::vector<double> ra = a.r_values, rb = b.r_values;
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    REQUIRE(ra.size() == rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i)
      CHECK(ra[i] == doctest::Approx(rb[i]).epsilon(1e-11));
  }

  TEST_CASE("degenerate gaps are excluded, not counted as r = 0") {
    Eigen::VectorXd phases(4);
    phases << 0.0, 1e-13, 1.0, 2.0;
    const GapRatioSet set = gap_ratios(phases);
    CHECK(set.excluded == 2);
    CHECK(set.r_values.size() == 2);
    for (const double r : set.r_values) CHECK(r > 0.0);
  }

  TEST_CASE("input validation") {
    Eigen::VectorXd two(2);
    two << 0.0, 1.0;
    CHECK_THROWS_AS(gap_ratios(two), std::invalid_argument);
    Eigen::VectorXd unsorted(3);
    unsorted << 0.0, -0.5, 1.0;
    CHECK_THROWS_AS(gap_ratios(unsorted), std::invalid_argument);
    Eigen::VectorXd out_of_range(3);
    out_of_range << -4.0, 0.0, 1.0;
    CHECK_THROWS_AS(gap_ratios(out_of_range), std::invalid_argument);
  }

  TEST_CASE("running stats merge equals a sequential pass") {
    SplitMix64 stream(21);
    std::vector<double> xs(1000);
    for (auto& x : xs) x = stream.next_unit();
    RunningStats seq;
    for (const double x : xs) seq.add(x);
    RunningStats left, right;
    for (std::size_t i = 0; i < 400; ++i) left.add(xs[i]);
    for (std::size_t i = 400; i < xs.size(); ++i) right.add(xs[i]);
    left.merge(right);
    CHECK(left.count == seq.count);
    CHECK(left.mean == doctest::Approx(seq.mean).epsilon(1e-14));
    CHECK(left.std_error() == doctest::Approx(seq.std_error()).epsilon(1e-12));
  }

  TEST_CASE("zero kick strength leaves no sample-to-sample variance") {
    ChainConfig config;
    config.L = 6;
    config.a = 1.5;
    config.b = 1.5;
    config.theta = 0.0;
    config.tau = 0.4;
    const EnsembleMeanR result = mean_r_over_ensemble(config, 5, 123, 2);
    CHECK(result.std_error == 0.0);
    CHECK(result.samples == 5);
    CHECK(result.excluded == 0);
    CHECK(result.mean > 0.0);
  }

  TEST_CASE("ensemble needs at least two samples") {
    ChainConfig config;
    config.L = 6;
    CHECK_THROWS_AS(mean_r_over_ensemble(config, 1, 1), std::invalid_argument);
  }
}
