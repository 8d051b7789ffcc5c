#include <cmath>
#include <numbers>

#include <doctest.h>

#include "dtc/dissipative.hpp"
#include "dtc/error.hpp"
#include "reference.hpp"

using namespace dtc;
using cplx = std::complex<double>;

namespace {

ModelParams make(Variant v, int atoms, double eps, double delta, double inter, double t2, double gamma) {
  ModelParams p;
  p.variant = v;
  p.atoms = atoms;
  p.epsilon = eps;
  p.delta = delta;
  p.interaction = inter;
  p.t2 = t2;
  p.gamma = gamma;
  return p;
}

Eigen::VectorXcd vec(const Eigen::MatrixXcd& rho) {
  const auto d = rho.rows();
  Eigen::VectorXcd v(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) v[i * d + j] = rho(i, j);
  }
  return v;
}

// RK4 on the unvectorized master equation.
Eigen::MatrixXcd integrate(const Eigen::MatrixXcd& h, double gamma, int atoms, Eigen::MatrixXcd rho, double t) {
  const int steps = static_cast<int>(std::ceil(t / 1e-3));
  const double dt = t / steps;
  for (int s = 0; s < steps; ++s) {
    const auto k1 = ref::lindblad_rhs(h, gamma, atoms, rho);
    const auto k2 = ref::lindblad_rhs(h, gamma, atoms, rho + 0.5 * dt * k1);
    const auto k3 = ref::lindblad_rhs(h, gamma, atoms, rho + 0.5 * dt * k2);
    const auto k4 = ref::lindblad_rhs(h, gamma, atoms, rho + dt * k3);
    rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

}  // namespace

TEST_SUITE("dissipative") {
  TEST_CASE("stage propagators agree with direct integration of the master equation") {
    const auto p = make(Variant::Original, 2, 0.2, 0.3, 0.15, 3.0, 0.05);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    rho(0, 0) = 0.5;
    rho(3, 3) = 0.3;
    rho(1, 1) = 0.2;
    rho(0, 3) = rho(3, 0) = 0.1;
    for (auto stage : {Stage::One, Stage::Two}) {
      const double t = stage == Stage::One ? p.t1 : p.t2;
      const auto expected = integrate(ref::hamiltonian(p, stage), *p.gamma, 2, rho, t);
      for (auto method : {SuperMethod::Auto, SuperMethod::Pade}) {
        const auto sp = compile_stage(p, stage, method);
        CHECK((sp.propagator * vec(rho) - vec(expected)).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }

  TEST_CASE("eigen and Pade routes agree") {
    const auto p = make(Variant::Improved, 3, -0.1, 0.2, 0.1, 15.0, 0.01);
    const auto a = compile_stage(p, Stage::One, SuperMethod::Eigen);
    const auto b = compile_stage(p, Stage::One, SuperMethod::Pade);
    CHECK(a.method == SuperMethod::Eigen);
    CHECK(a.residual < kSuperResidualLimit);
    CHECK((a.propagator - b.propagator).cwiseAbs().maxCoeff() < 1e-8);
  }

  TEST_CASE("trace functional annihilates the Liouvillian") {
    const auto p = make(Variant::Original, 3, 0.1, 0.4, 0.2, 10.0, 0.3);
    for (auto stage : {Stage::One, Stage::Two}) {
      const Eigen::MatrixXcd lv = build_liouvillian(p, stage);
      const Eigen::Index d = 8;
      Eigen::RowVectorXcd left = Eigen::RowVectorXcd::Zero(d * d);
      for (Eigen::Index i = 0; i < d; ++i) left[i * d + i] = 1.0;
      CHECK((left * lv).cwiseAbs().maxCoeff() < 1e-13);
    }
  }

  TEST_CASE("spectrum in the closed left half-plane") {
    for (double gamma : {0.0, 0.02, 0.5}) {
      const auto p = make(Variant::Original, 3, 0.1, 0.4, 0.2, 10.0, gamma);
      for (auto stage : {Stage::One, Stage::Two}) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(build_liouvillian(p, stage), false);
        CHECK(es.eigenvalues().real().maxCoeff() <= 1e-9);
      }
    }
  }

  TEST_CASE("amplitude damping of a single atom") {
    // Omega = 0, no detuning: only decay acts, rho_rr(t) = exp(-Gamma t).
    const double gamma = 0.05;
    auto p = make(Variant::Original, 1, -std::numbers::pi / 2, 0.0, 0.0, 2.0, gamma);
    const DensityState r = DensityState::from_pure(StateVector::from_bitstring(Basis::full(1), "r"), 1);
    const auto result = evolve_density(p, r, 30);
    for (long long n = 0; n <= 30; ++n) {
      const double expected = 2.0 * std::exp(-gamma * static_cast<double>(n) * p.period()) - 1.0;
      CHECK(std::abs(result.trajectory.p[static_cast<std::size_t>(n)] - expected) < 1e-10);
    }
  }

  TEST_CASE("no decay reproduces unitary evolution") {
    for (int atoms = 1; atoms <= 4; ++atoms) {
      const auto p = make(Variant::Original, atoms, 0.1, 0.3, 0.1, 10.0, 0.0);
      const auto lindblad = evolve_density(p, DensityState::ground(atoms), 200).trajectory.p;
      const auto prop = compile_cycle(p);
      const auto unitary = evolve(prop, StateVector::ground(prop.basis), 200).p;
      double worst = 0.0;
      for (std::size_t n = 0; n < unitary.size(); ++n) worst = std::max(worst, std::abs(lindblad[n] - unitary[n]));
      CHECK(worst < 1e-6);
    }
  }

  TEST_CASE("trace, hermiticity and positivity bookkeeping") {
    const auto p = make(Variant::Original, 3, -0.1, 0.0, 0.1, 15.0, 0.01);
    const auto result = evolve_density(p, DensityState::ground(3), 100);
    CHECK(result.max_cycle_trace_change < 1e-8);
    CHECK(result.max_trace_drift < 1e-8);
    CHECK(result.max_hermiticity_error < 1e-8);
    CHECK(result.min_eigenvalue > -1e-8);
  }

  TEST_CASE("continuity as the decay rate vanishes") {
    auto deviation = [](double gamma) {
      const auto a = make(Variant::Original, 3, 0.1, 0.2, 0.1, 10.0, gamma);
      const auto b = make(Variant::Original, 3, 0.1, 0.2, 0.1, 10.0, 0.0);
      const auto pa = evolve_density(a, DensityState::ground(3), 50).trajectory.p;
      const auto pb = evolve_density(b, DensityState::ground(3), 50).trajectory.p;
      double worst = 0.0;
      for (std::size_t n = 0; n < pa.size(); ++n) worst = std::max(worst, std::abs(pa[n] - pb[n]));
      return worst;
    };
    const double big = deviation(1e-4);
    const double small = deviation(1e-5);
    CHECK(small < big);
    CHECK(big / small == doctest::Approx(10.0).epsilon(0.1));
  }

  TEST_CASE("density state helpers") {
    const DensityState g = DensityState::ground(2);
    CHECK(g.trace() == cplx(1.0, 0.0));
    CHECK(g.hermiticity_error() == 0.0);
    CHECK(g.min_eigenvalue() == doctest::Approx(0.0));
    CHECK(g.matrix()(0, 0) == cplx(1.0, 0.0));
    CHECK_THROWS_AS(DensityState::from_pure(StateVector::ground(Basis::full(3)), 2), Error);
  }

  TEST_CASE("size cap") {
    const auto p = make(Variant::Original, 8, 0, 0, 0, 10.0, 0.01);
    try {
      build_liouvillian(p, Stage::One);
      FAIL("expected capacity error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CapacityExceeded);
    }
  }

  TEST_CASE("fit of an exact exponential") {
    std::vector<double> p;
    for (int n = 0; n <= 200; ++n) p.push_back((n % 2 == 0 ? -1.0 : 1.0) * std::exp(-0.01 * n));
    const FitReport fit = fit_decay(p);
    CHECK(std::abs(fit.alpha - 0.01) < 1e-6);
    CHECK(fit.start == 10);
    CHECK(fit.end == 200);
    CHECK(fit.residual < 1e-10);
  }

  TEST_CASE("fit errors") {
    std::vector<double> zeros(50, 0.0);
    try {
      fit_decay(zeros);
      FAIL("expected no-signal");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoSignal);
    }
    std::vector<double> p(50, 0.5);
    CHECK_THROWS_AS(fit_decay(p, {40, 60}), Error);
    CHECK_THROWS_AS(fit_decay(p, {20, 20}), Error);
    CHECK_THROWS_AS(fit_decay(p, {-1, 10}), Error);
    CHECK_THROWS_AS(fit_decay(p, {0, 6}), Error);  // four envelope points
  }
}
