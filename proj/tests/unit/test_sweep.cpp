#include <sstream>

#include <doctest.h>

#include "dtc/error.hpp"
#include "dtc/io/csv.hpp"
#include "dtc/sweep.hpp"

using namespace dtc;

namespace {

SweepSpec delta_scan(Variant v, std::vector<double> grid) {
  SweepSpec s;
  s.base.variant = v;
  s.base.atoms = 4;
  s.base.epsilon = 0.2;
  s.base.interaction = 0.1;
  s.base.t2 = 15;
  s.axis1 = {"delta", std::move(grid)};
  s.budget = 500;
  s.record_wall_time = false;
  return s;
}

std::string csv(const std::vector<PointResult>& points) {
  std::ostringstream os;
  io::write_points(os, points);
  return os.str();
}

}  // namespace

TEST_SUITE("sweep") {
  TEST_CASE("named parameters") {
    ModelParams p;
    set_parameter(p, "delta", 0.3);
    set_parameter(p, "L", 5);
    set_parameter(p, "v", -0.1);
    CHECK(p.delta == 0.3);
    CHECK(p.atoms == 5);
    CHECK(get_parameter(p, "v") == -0.1);
    CHECK_THROWS_AS(set_parameter(p, "L", 2.5), Error);
    CHECK_THROWS_AS(set_parameter(p, "omega", 1.0), Error);
  }

  TEST_CASE("results do not depend on the worker count") {
    SweepSpec s = delta_scan(Variant::Original, {-0.4, -0.2, 0.0, 0.13, 0.3, 0.5});
    s.threads = 1;
    const std::string one = csv(scan_detuning(s).points);
    s.threads = 4;
    const std::string four = csv(scan_detuning(s).points);
    CHECK(one == four);
  }

  TEST_CASE("mirrored scan is symmetric") {
    SweepSpec s = delta_scan(Variant::Original, {-0.3, 0.0, 0.2, 0.45});
    s.symmetry_audit = true;
    const auto scan = scan_detuning(s);
    CHECK(scan.mirrored.size() == 4);
    CHECK(scan.violations.empty());
  }

  TEST_CASE("uncoupled atoms show no growth with L") {
    SweepSpec s;
    s.base.epsilon = 0.1;
    s.base.interaction = 0.0;
    s.axis1 = {"L", {2, 3, 4, 5, 6}};
    s.budget = 1000;
    const auto r = scaling_nc_vs_L(s);
    for (const auto& p : r.points) CHECK(p.n_c == r.points.front().n_c);
    REQUIRE(r.fit.has_value());
    CHECK(std::abs(r.fit->slope) < 1e-12);
  }

  TEST_CASE("censored points never enter the fit") {
    SweepSpec s;
    s.base.epsilon = 0.0;  // perfect flips: every point censored
    s.axis1 = {"L", {2, 3, 4, 5}};
    s.budget = 50;
    const auto r = scaling_nc_vs_L(s);
    for (const auto& p : r.points) CHECK(p.censored);
    CHECK_FALSE(r.fit.has_value());
  }

  TEST_CASE("phase cells equal independent recomputation") {
    SweepSpec s;
    s.base.variant = Variant::Simplified;
    s.base.interaction = 0.1;
    s.axis1 = {"L", {2, 3, 4, 5}};
    s.axis2 = Axis{"epsilon", {-0.3, -0.1, 0.05, 0.2}};
    s.budget = 400;
    const PhaseDiagram d = phase_diagram(s);
    CHECK(d.cells.size() == 12);
    RunOptions o;
    o.budget = 400;
    for (const auto& c : d.cells) {
      ModelParams now = s.base;
      now.atoms = c.atoms;
      now.epsilon = c.epsilon;
      ModelParams before = now;
      before.atoms = c.atoms - 1;
      const auto r = run_points({now, before}, o);
      CHECK(c.delta_n_c == r[0].n_c - r[1].n_c);
      CHECK(c.phase == classify(c.delta_n_c));
    }
    CHECK(d.critical_size.size() == 4);
  }

  TEST_CASE("classification rule") {
    CHECK(classify(3) == PhaseClass::Growing);
    CHECK(classify(0) == PhaseClass::Flat);
    CHECK(classify(-1) == PhaseClass::Shrinking);
    CHECK(symbol(PhaseClass::Flat) == '0');
  }

  TEST_CASE("symmetry audit") {
    std::vector<ModelParams> points;
    for (int atoms : {2, 3, 5}) {
      ModelParams p;
      p.atoms = atoms;
      p.epsilon = 0.15;
      p.delta = 0.37;
      p.interaction = 0.12;
      p.t2 = 13;
      points.push_back(p);
    }
    points.push_back(ModelParams{});
    const auto report = symmetry_audit(points, 300, 2);
    CHECK(report.violations == 0);
    for (const auto& e : report.entries) CHECK(e.max_p_difference < kSymmetryTolerance);
  }

  TEST_CASE("per-point failures are recorded and the sweep continues") {
    std::vector<ModelParams> points(2);
    points[0].atoms = 3;
    points[1].atoms = 3;
    points[1].boundary = Boundary::Open;
    RunOptions o;
    o.basis = BasisKind::Translation;
    o.budget = 20;
    const auto r = run_points(points, o);
    CHECK(r[0].ok());
    CHECK_FALSE(r[1].ok());
  }

  TEST_CASE("spec JSON round trip and validation") {
    SweepSpec s = delta_scan(Variant::Improved, {-0.1, 0.1});
    s.axis2 = Axis{"epsilon", {0.1}};
    const SweepSpec back = sweep_spec_from_json(to_json(s));
    CHECK(to_json(back) == to_json(s));

    nlohmann::json j = {{"axis1", {{"name", "delta"}, {"grid", "-1:1:0.5"}}}, {"budget", 10}};
    CHECK(sweep_spec_from_json(j).axis1.grid.size() == 5);
    j["budget"] = 0;
    CHECK_THROWS_AS(sweep_spec_from_json(j), Error);
    j["budget"] = 10;
    j["surprise"] = 1;
    CHECK_THROWS_AS(sweep_spec_from_json(j), Error);
    CHECK_THROWS_AS(sweep_spec_from_json({{"axis1", {{"name", "delta"}, {"grid", nlohmann::json::array()}}}}),
                    Error);
  }

  TEST_CASE("line fit") {
    const auto f = fit_line({1, 2, 3}, {1, 3, 5});
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(-1.0));
    CHECK_THROWS_AS(fit_line({1}, {1}), Error);
  }

  TEST_CASE("parallel_for propagates exceptions") {
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                      if (i == 7) fail(ErrorKind::Numeric, "boom");
                    }),
                    Error);
  }
}
