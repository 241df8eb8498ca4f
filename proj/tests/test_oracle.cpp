#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diracbag/bagmodel.hpp"
#include "diracbag/errors.hpp"
#include "diracbag/oracle.hpp"
#include "diracbag/shooting.hpp"
#include "reference_values.hpp"
#include <cmath>
#include <numbers>

using namespace diracbag;
using std::numbers::pi;

namespace {

double level_energy(const oracle::DiscreteOperator &op, int index, double lo, double hi) {
  for (const auto &m : oracle::eigen(op, lo, hi))
    if (m.index == index)
      return m.energy;
  FAIL("level " << index << " missing from the window");
  return 0.0;
}

} // namespace

TEST_CASE("discretize: structure") {
  CHECK_THROWS_AS(oracle::discretize(BagConfig{1.0, 0.0, 0.0}, 15), DomainError);
  CHECK_THROWS_AS(oracle::discretize(BagConfig{1.0, 0.0, 0.0}, -4), DomainError);

  for (int n : {16, 17, 100}) {
    const auto op = oracle::discretize(BagConfig{1.0, 0.5, 2.0}, n);
    CHECK(op.dimension() == std::size_t(2 * n + 1));
    CHECK(op.offdiag.size() == op.dimension() - 1);
    CHECK(op.nodes.size() == std::size_t(n + 1));
    CHECK(op.h == doctest::Approx(2.0 / n));
    CHECK(op.nodes.front() == -1.0);
    CHECK(op.nodes.back() == doctest::Approx(1.0));
  }
}

TEST_CASE("discretize: the stored matrix is exactly symmetric") {
  const auto op = oracle::discretize(BagConfig{1.3, 0.7, -2.5}, 40);
  const auto s = op.dense();
  const std::size_t d = op.dimension();
  REQUIRE(s.size() == d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      CHECK(s[i * d + j] == s[j * d + i]);
      if (i > j + 1)
        CHECK(s[i * d + j] == 0.0);
    }
}

TEST_CASE("sturm count agrees with the eigenvalue list") {
  const auto op = oracle::discretize(BagConfig{1.0, 1.0, 1.0}, 200);
  const auto modes = oracle::eigen(op, -30.0, 30.0);
  CHECK(oracle::count_below(op, 30.0) - oracle::count_below(op, -30.0) == modes.size());
  for (std::size_t i = 1; i < modes.size(); ++i)
    CHECK(modes[i].index == modes[i - 1].index + 1);
}

TEST_CASE("massless ground state at N = 2000") {
  const auto op = oracle::discretize(BagConfig{1.0, 0.0, 0.0}, 2000);
  CHECK(std::abs(level_energy(op, 0, 0.0, 1.0) - pi / 4) < 1e-5);
}

TEST_CASE("no spurious doublers") {
  const BagConfig cfg{1.0, 0.0, 0.0};
  for (int n : {500, 1000, 2000}) {
    const auto op = oracle::discretize(cfg, n);
    const auto modes = oracle::eigen(op, 0.0, 10 * pi / 4);
    CHECK(modes.size() == 5);
    for (std::size_t i = 0; i < modes.size(); ++i)
      CHECK(modes[i].index == int(i));
    CHECK(oracle::count_below(op, 10 * pi / 4) - oracle::count_below(op, -10 * pi / 4) == 10);
  }
}

TEST_CASE("second-order convergence, monotone in N") {
  const BagConfig cfg{1.0, 0.0, 0.0};
  double previous = 1.0;
  std::vector<double> errors;
  for (int n : {250, 500, 1000, 2000}) {
    const double e = std::abs(level_energy(oracle::discretize(cfg, n), 2, 0.0, 5.0) - 5 * pi / 4);
    CHECK(e < previous);
    previous = e;
    errors.push_back(e);
  }
  for (std::size_t i = 1; i < errors.size(); ++i)
    CHECK(std::log2(errors[i - 1] / errors[i]) >= 1.8);
}

TEST_CASE("discrete massless levels barely move with lambda") {
  const auto flat = oracle::eigen(oracle::discretize(BagConfig{1.0, 0.0, 0.0}, 2000), -6.0, 6.0);
  const auto tilted = oracle::eigen(oracle::discretize(BagConfig{1.0, 0.0, 5.0}, 2000), -6.0, 6.0);
  REQUIRE(flat.size() == tilted.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    CHECK(flat[i].index == tilted[i].index);
    CHECK(std::abs(flat[i].energy - tilted[i].energy) < 1e-4);
  }
}

TEST_CASE("eigenvectors are orthonormal in the trapezoidal product") {
  const auto op = oracle::discretize(BagConfig{1.0, 1.0, 2.0}, 500);
  const auto modes = oracle::eigen(op, -8.0, 8.0);
  REQUIRE(modes.size() >= 6);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    CHECK(modes[i].u.front() > 0.0);
    CHECK(std::abs(oracle::discrete_overlap(op, modes[i], modes[i]) - 1.0) < 1e-10);
    for (std::size_t j = 0; j < i; ++j)
      CHECK(std::abs(oracle::discrete_overlap(op, modes[i], modes[j])) < 1e-10);
  }
}

TEST_CASE("massive levels: Richardson extrapolation hits the reference") {
  const BagConfig cfg{1.0, 1.0, 0.0};
  const auto coarse = oracle::eigen(oracle::discretize(cfg, 2000), -8.0, 8.0);
  const auto fine = oracle::eigen(oracle::discretize(cfg, 4000), -8.0, 8.0);
  REQUIRE(fine.size() == 10);
  REQUIRE(coarse.size() == fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const int n = fine[i].index;
    const double want = n >= 0 ? ref::massive_levels[n] : -ref::massive_levels[-1 - n];
    const double extrapolated = (4.0 * fine[i].energy - coarse[i].energy) / 3.0;
    const double estimate = std::abs(fine[i].energy - coarse[i].energy) / 3.0;
    CAPTURE(n);
    CHECK(std::abs(extrapolated - want) < 1e-8);
    // a second-order scheme's error stays within a small multiple of its
    // own Richardson estimate
    CHECK(std::abs(fine[i].energy - want) <= std::max(1e-6, 10.0 * estimate));
  }
}

TEST_CASE("oracle and shooting modes overlap to near one") {
  const BagConfig cfg{1.0, 1.0, 1.5};
  const auto op = oracle::discretize(cfg, 4000);
  const auto spectrum = find_levels(cfg, -5.0, 5.0);
  for (const auto &dm : oracle::eigen(op, -5.0, 5.0)) {
    const Mode *shot = spectrum.find(dm.index);
    REQUIRE(shot != nullptr);
    const Mode interpolated = oracle::to_mode(op, dm);
    CHECK(std::abs(std::abs(overlap(interpolated, *shot)) - 1.0) < 1e-5);
    CHECK(std::abs(interpolated(-1.0).u.real() - interpolated(-1.0).v.real()) < 1e-12);
  }
}
