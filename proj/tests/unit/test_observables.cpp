#include <cmath>
#include <numbers>

#include <doctest.h>

#include "dtc/error.hpp"
#include "dtc/floquet.hpp"
#include "dtc/observables.hpp"

using namespace dtc;

namespace {

std::vector<double> alternating(std::size_t n_f) {
  std::vector<double> p;
  for (std::size_t n = 0; n <= n_f; ++n) p.push_back(n % 2 == 0 ? -1.0 : 1.0);
  return p;
}

}  // namespace

TEST_SUITE("observables") {
  TEST_CASE("population imbalance") {
    const Basis b = Basis::full(2);
    const Eigen::VectorXd diag = population_difference_diagonal(b);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi[3] = 1.0;
    CHECK(population_imbalance(psi, diag) == 1.0);
    psi.setZero();
    psi[0] = psi[3] = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(population_imbalance(psi, diag)) < 1e-15);
  }

  TEST_CASE("order parameter and critical cycle") {
    // (-1)^n P(n) for n = 1..5: -, -, -, +, +
    const std::vector<double> p = {-1.0, 0.9, -0.8, 0.1, 0.2, -0.3};
    const auto q = order_parameter(p);
    CHECK(q == std::vector<int>{-1, -1, -1, 1, 1});
    const auto c = critical_cycle_number(q);
    CHECK(c.n_c == 3);
    CHECK_FALSE(c.censored);
    CHECK(order_flips(q) == std::vector<long long>{4});
  }

  TEST_CASE("dead band carries the previous sign") {
    const std::vector<double> p = {-1.0, 0.5, 1e-14, -1e-13, 0.5};
    CHECK(order_parameter(p) == std::vector<int>{-1, -1, -1, 1});
  }

  TEST_CASE("censored critical cycle") {
    const auto q = order_parameter(alternating(40));
    const auto c = critical_cycle_number(q);
    CHECK(c.censored);
    CHECK(c.n_c == 40);
  }

  TEST_CASE("trajectory bookkeeping") {
    ModelParams params;
    const Trajectory t = make_trajectory(params, alternating(10));
    CHECK(t.n_f == 10);
    CHECK(t.q.size() == 10);
    CHECK(t.order(1) == -1);
  }

  TEST_CASE("alternating record has a single peak at one half") {
    const auto p = alternating(64);
    const Spectrum s = fourier_spectrum(std::span<const double>(p).subspan(1));
    REQUIRE(s.nu.size() == 64);
    for (std::size_t k = 0; k < 64; ++k) {
      if (k == 32) {
        CHECK(s.magnitude[k] == doctest::Approx(1.0).epsilon(1e-12));
      } else {
        CHECK(s.magnitude[k] < 1e-12);
      }
    }
    const auto peaks = top_peaks(s, 3);
    REQUIRE(!peaks.empty());
    CHECK(s.nu[peaks.front()] == 0.5);
  }

  TEST_CASE("Parseval and conjugate symmetry") {
    std::vector<double> samples;
    for (int n = 1; n <= 100; ++n) samples.push_back(std::sin(0.37 * n) * std::exp(-0.01 * n) + 0.1 * std::cos(2.1 * n));
    const Spectrum s = fourier_spectrum(samples);
    double energy = 0.0;
    for (double x : samples) energy += x * x;
    double spectral = 0.0;
    for (double m : s.magnitude) spectral += m * m;
    CHECK(spectral == doctest::Approx(energy / 100.0).epsilon(1e-12));
    for (std::size_t k = 1; k < 100; ++k) CHECK(std::abs(s.magnitude[k] - s.magnitude[100 - k]) < 1e-12);
    for (std::size_t k = 0; k < 100; ++k) CHECK(s.magnitude[k] == std::abs(s.values[k]));
  }

  TEST_CASE("beating run shows side peaks around one half") {
    ModelParams params;
    params.atoms = 1;
    params.epsilon = 0.1;
    const auto prop = compile_cycle(params);
    const Trajectory t = evolve(prop, StateVector::ground(prop.basis), 1000);
    const Spectrum s = fourier_spectrum(t);
    const auto peaks = top_peaks(s, 2);
    REQUIRE(peaks.size() == 2);
    const double lo = std::min(s.nu[peaks[0]], s.nu[peaks[1]]);
    const double hi = std::max(s.nu[peaks[0]], s.nu[peaks[1]]);
    CHECK(lo == doctest::Approx(0.5 - 0.1 / std::numbers::pi).epsilon(2e-3));
    CHECK(hi == doctest::Approx(0.5 + 0.1 / std::numbers::pi).epsilon(2e-3));
  }

  TEST_CASE("custom grid") {
    const auto p = alternating(10);
    const Spectrum s = fourier_spectrum(std::span<const double>(p).subspan(1), 40);
    CHECK(s.nu.size() == 40);
    CHECK(s.nu[20] == 0.5);
    CHECK(s.magnitude[20] == doctest::Approx(1.0));
  }

  TEST_CASE("beating-period predictors") {
    CHECK(beating_period_epsilon(0.1) == doctest::Approx(15.708).epsilon(1e-4));
    ModelParams p;
    p.delta = 0.6;
    CHECK(beating_period_detuning(p) == doctest::Approx(56.76).epsilon(1e-3));
    CHECK_THROWS_AS(beating_period_epsilon(0.0), Error);
  }

  TEST_CASE("empty inputs") {
    CHECK_THROWS_AS(fourier_spectrum(std::span<const double>{}), Error);
  }
}
