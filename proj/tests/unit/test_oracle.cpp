#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "dtc/error.hpp"
#include "dtc/floquet.hpp"
#include "dtc/oracle.hpp"

using namespace dtc;
using cplx = std::complex<double>;

namespace {

ModelParams simplified(double eps, double delta, double inter, double t2, int atoms = 2) {
  ModelParams p;
  p.variant = Variant::Simplified;
  p.atoms = atoms;
  p.epsilon = eps;
  p.delta = delta;
  p.interaction = inter;
  p.t2 = t2;
  return p;
}

struct Draws {
  std::mt19937_64 rng{2024};
  std::uniform_real_distribution<double> unit{-1.0, 1.0};
  std::uniform_real_distribution<double> coupling{-0.3, 0.3};
  std::uniform_real_distribution<double> second{1.0, 20.0};

  ModelParams next() { return simplified(unit(rng), unit(rng), coupling(rng), second(rng)); }
};

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("factors at the perfect flip") {
    const auto f = oracle::factors(simplified(0, 0, 0.1, 10));
    CHECK(std::abs(f.x_plus) < 1e-15);
    CHECK(std::abs(f.x_minus) < 1e-15);
    CHECK(f.y == doctest::Approx(1.0));
    CHECK(f.x < 1e-15);
  }

  TEST_CASE("factors without detuning are real") {
    const auto f = oracle::factors(simplified(0.3, 0, 0.1, 10));
    CHECK(f.x_plus.real() == doctest::Approx(std::cos(std::numbers::pi / 2 + 0.3)));
    CHECK(f.x_plus.imag() == 0.0);
    CHECK(f.y == doctest::Approx(std::sin(std::numbers::pi / 2 + 0.3)));
  }

  TEST_CASE("factor identities") {
    Draws draws;
    for (int k = 0; k < 100; ++k) {
      const auto p = draws.next();
      const auto f = oracle::factors(p);
      CHECK(std::abs((f.x_plus * f.x_minus).real() + f.y * f.y - 1.0) < 1e-12);
      CHECK(std::abs(f.x * f.x - (f.x_plus * f.x_minus).real()) < 1e-12);
      CHECK(f.theta1 == doctest::Approx(p.delta * p.t1 / 2));
      CHECK(f.theta2 == doctest::Approx(p.delta * p.t2));
      CHECK(f.theta3 == doctest::Approx(p.interaction * p.t2));
      CHECK(f.phi1 == doctest::Approx(2 * f.theta1 + f.theta2));
    }
  }

  TEST_CASE("printed two-atom matrices") {
    const auto f0 = oracle::factors(simplified(0, 0, 0.0, 10));
    const Eigen::Matrix4cd u = oracle::two_atom_u1(f0);
    CHECK(std::abs(u(3, 0) - cplx(-1.0, 0.0)) < 1e-15);  // |gg> -> -|rr>
    const Eigen::Vector4cd u2 = oracle::two_atom_u2(f0);
    CHECK(u2 == Eigen::Vector4cd(1, 1, 1, 1));

    const auto f = oracle::factors(simplified(0.2, -0.4, 0.0, 7));
    const Eigen::Vector4cd d = oracle::two_atom_u2(f);
    CHECK(std::abs(d[1] - std::polar(1.0, -f.theta2)) < 1e-15);
    CHECK(std::abs(d[3] - std::polar(1.0, -2 * f.theta2)) < 1e-15);

    Draws draws;
    for (int k = 0; k < 50; ++k) {
      const Eigen::Matrix4cd m = oracle::two_atom_u1(oracle::factors(draws.next()));
      CHECK((m.adjoint() * m - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("two-atom P(2) is the printed matrices evolved twice") {
    Draws draws;
    for (int k = 0; k < 100; ++k) {
      const auto f = oracle::factors(draws.next());
      CHECK(std::abs(oracle::two_atom_p2(f) - oracle::two_atom_matrix_p(f, 2)) < 1e-12);
    }
  }

  TEST_CASE("P(2) returns to the ground state at the perfect flip") {
    for (double v : {0.0, 0.1, -0.25}) {
      const auto f = oracle::factors(simplified(0, 0, v, 12));
      CHECK(oracle::two_atom_p2(f) == doctest::Approx(-1.0).epsilon(1e-14));
      CHECK(oracle::three_atom_p2(f) == doctest::Approx(-1.0).epsilon(1e-14));
    }
  }

  TEST_CASE("two-atom P(2) agrees with exact diagonalization without detuning") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 30; ++k) {
      const auto d = oracle::evaluate_draw(u(rng), 0.0, 0.3 * u(rng), 1 + 19 * (u(rng) + 1) / 2);
      CHECK(d.error_l2_n2() < 1e-8);
    }
  }

  TEST_CASE("simultaneous sign flip of detuning and interaction") {
    Draws draws;
    for (int k = 0; k < 100; ++k) {
      auto p = draws.next();
      auto q = p;
      q.delta = -p.delta;
      q.interaction = -p.interaction;
      const auto a = oracle::factors(p);
      const auto b = oracle::factors(q);
      CHECK(std::abs(oracle::two_atom_p2(a) - oracle::two_atom_p2(b)) < 1e-12);
      CHECK(std::abs(oracle::two_atom_p3(a) - oracle::two_atom_p3(b)) < 1e-12);
      CHECK(std::abs(oracle::three_atom_p2(a) - oracle::three_atom_p2(b)) < 1e-12);
    }
  }

  TEST_CASE("phase combination count") {
    CHECK(oracle::phase_combination_count(2, 2) == 2);
    CHECK(oracle::phase_combination_count(3, 2) == 4);
    CHECK(oracle::phase_combination_count(2, 3) == 8);
    CHECK_THROWS_AS(oracle::phase_combination_count(1, 2), Error);
    CHECK_THROWS_AS(oracle::phase_combination_count(2, 1), Error);
    CHECK_THROWS_AS(oracle::phase_combination_count(40, 20), Error);
  }

  TEST_CASE("check report bookkeeping") {
    const auto report = oracle::run_check({5, 7, 1e-8});
    CHECK(report.draws.size() == 5);
    CHECK(report.matched <= 5);
    CHECK(report.matched_l2_n2 <= 5);
    CHECK(report.summary().find("/5 matched") != std::string::npos);
    const auto again = oracle::run_check({5, 7, 1e-8});
    CHECK(again.draws.front().epsilon == report.draws.front().epsilon);
    CHECK_THROWS_AS(oracle::run_check({0, 7, 1e-8}), Error);
  }
}
