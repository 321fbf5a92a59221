#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "dynamics.hpp"
#include "model_io.hpp"
#include "parser.hpp"

using namespace dw;

namespace {

const char* kModelDir = DW_SOURCE_DIR "/models";

DiracStructure circle() {
  return analyze(load_model_file(std::string(kModelDir) + "/circle.json"));
}

// max component error of a trajectory row against the unit-speed rotation
double rotation_error(const std::vector<double>& row) {
  double t = row[0];
  double e = std::abs(row[1] - std::cos(t));
  e = std::max(e, std::abs(row[2] - std::sin(t)));
  e = std::max(e, std::abs(row[3] + std::sin(t)));
  return std::max(e, std::abs(row[4] - std::cos(t)));
}

size_t column(const SimulationResult& r, const std::string& name) {
  for (size_t i = 0; i < r.columns.size(); ++i)
    if (r.columns[i] == name) return i;
  REQUIRE_MESSAGE(false, "missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("equations of motion follow the Dirac bracket") {
  DiracStructure ds = circle();
  auto P = [&](const std::string& s) { return parse_expr(s, ds.symtab); };

  // dx/dt = [x,H]* reduces to px on the surface; dpx/dt picks up the
  // centripetal force -x(px^2+py^2)/r0^2
  CHECK(dirac_bracket(P("x"), ds.h_reduced, ds).equals(P("px")));
  CHECK(ds.rules.reduce(dirac_bracket(P("px"), ds.h_reduced, ds) +
                        P("x*(px^2 + py^2)/r0^2")).is_zero());

  EOMSystem sys = generate_eom(ds);
  CHECK(sys.state_names == std::vector<std::string>{"x", "y", "px", "py"});
  REQUIRE(sys.rhs.size() == 4);
  // evaluate the compiled right-hand side at the resting-start sample point
  double y[4] = {1.0, 0.0, 0.0, 1.0};
  CHECK(sys.rhs[0].eval(y) == 0.0);   // xdot = px
  CHECK(sys.rhs[1].eval(y) == 1.0);   // ydot = py
  CHECK(sys.rhs[2].eval(y) == -1.0);  // pxdot = -x
  CHECK(sys.rhs[3].eval(y) == 0.0);

  SphereInfo sphere;
  REQUIRE(detect_sphere(ds, sys, sphere));
  CHECK(sphere.radius == 1.0);
  CHECK(sphere.coord_slots == std::vector<int>{0, 1});
  CHECK(sphere.mom_slots == std::vector<int>{2, 3});
}

TEST_CASE("rk4 conserves constraints, energy and angular momentum") {
  DiracStructure ds = circle();
  SimulationResult r = simulate(ds, "dirac-rk4", 1e-3, 10000, {1, 0, 0, 1});

  CHECK(r.columns == std::vector<std::string>{"t", "x", "y", "px", "py", "phi2", "phi3", "H", "Lz"});
  REQUIRE(r.rows.size() == 10001);
  CHECK(r.rows.back()[0] == doctest::Approx(10.0).epsilon(1e-12));

  size_t c2 = column(r, "phi2"), c3 = column(r, "phi3");
  size_t cH = column(r, "H"), cL = column(r, "Lz");
  double h0 = r.rows.front()[cH], l0 = r.rows.front()[cL];
  CHECK(h0 == 0.5);
  CHECK(l0 == 1.0);
  double mphi2 = 0, mphi3 = 0, mde = 0, mdl = 0, mex = 0;
  for (const auto& row : r.rows) {
    mphi2 = std::max(mphi2, std::abs(row[c2]));
    mphi3 = std::max(mphi3, std::abs(row[c3]));
    mde = std::max(mde, std::abs(row[cH] - h0) / h0);
    mdl = std::max(mdl, std::abs(row[cL] - l0) / l0);
    mex = std::max(mex, rotation_error(row));
  }
  CHECK(mphi2 <= 1e-8);
  CHECK(mphi3 <= 1e-8);
  CHECK(mde <= 1e-8);
  CHECK(mdl <= 1e-8);
  CHECK(mex <= 1e-7);
}

TEST_CASE("rk4 converges at fourth order") {
  DiracStructure ds = circle();
  double errs[4];
  double h = 0.05;
  int steps = 20;
  for (int k = 0; k < 4; ++k, h /= 2, steps *= 2) {
    SimulationResult r = simulate(ds, "dirac-rk4", h, steps, {1, 0, 0, 1});
    errs[k] = rotation_error(r.rows.back());
  }
  for (int k = 0; k < 3; ++k) {
    double order = std::log2(errs[k] / errs[k + 1]);
    CHECK(order >= 3.5);
    CHECK(order <= 4.5);
  }
}

TEST_CASE("projection scheme stays on the sphere and converges at first order") {
  DiracStructure ds = circle();
  double errs[3];
  double h = 0.02;
  int steps = 50;
  for (int k = 0; k < 3; ++k, h /= 2, steps *= 2) {
    SimulationResult r = simulate(ds, "project", h, steps, {1, 0, 0, 1});
    errs[k] = rotation_error(r.rows.back());
    size_t c2 = column(r, "phi2"), c3 = column(r, "phi3");
    for (const auto& row : r.rows) {
      CHECK(std::abs(row[c2]) <= 1e-14);
      CHECK(std::abs(row[c3]) <= 1e-14);
    }
  }
  for (int k = 0; k < 2; ++k) {
    double order = std::log2(errs[k] / errs[k + 1]);
    CHECK(order >= 0.7);
    CHECK(order <= 1.3);
  }
}

TEST_CASE("closed-form rotation matches the analytic quarter turn") {
  DiracStructure ds = circle();
  double h = M_PI / 200.0;
  SimulationResult r = simulate(ds, "exact", h, 100, {1, 0, 0, 1});
  const std::vector<double>& last = r.rows.back();
  CHECK(std::abs(last[1] - 0.0) <= 1e-12);
  CHECK(std::abs(last[2] - 1.0) <= 1e-12);
  CHECK(std::abs(last[3] + 1.0) <= 1e-12);
  CHECK(std::abs(last[4] - 0.0) <= 1e-12);

  // rk4 with the same grid lands on the closed form to integrator accuracy
  SimulationResult rk = simulate(ds, "dirac-rk4", h, 100, {1, 0, 0, 1});
  for (int j = 1; j <= 4; ++j) CHECK(std::abs(rk.rows.back()[j] - last[j]) <= 1e-7);
}

TEST_CASE("free particle: derived columns without constraints") {
  Model m = load_model_file(std::string(kModelDir) + "/free.json");
  DiracStructure ds = analyze(m);
  SimulationResult r = simulate(ds, "dirac-rk4", 0.01, 100, {0, 0, 1, 0});
  CHECK(r.columns == std::vector<std::string>{"t", "x", "y", "px", "py", "H", "Lz"});
  REQUIRE(r.rows.size() == 101);
  // linear motion is integrated exactly by rk4
  CHECK(r.rows.back()[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r.rows.back()[3] == 1.0);
  CHECK(r.rows.back()[column(r, "H")] == 0.5);
  CHECK(r.rows.back()[column(r, "Lz")] == 0.0);

  // no sphere to project onto
  try {
    simulate(ds, "project", 0.01, 10, {0, 0, 1, 0});
    FAIL("project should require a spherical constraint");
  } catch (const Error& e) {
    CHECK(e.code() == errc::invalid_argument);
  }
}

TEST_CASE("trajectory csv round-trips the state") {
  DiracStructure ds = circle();
  SimulationResult r = simulate(ds, "dirac-rk4", 0.25, 4, {1, 0, 0, 1});
  std::string csv = to_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 6);  // header + steps + 1
  CHECK(lines[0] == "t,x,y,px,py,phi2,phi3,H,Lz");
  // first data row reproduces the initial state exactly
  std::istringstream row(lines[1]);
  std::string cell;
  std::vector<double> vals;
  while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
  REQUIRE(vals.size() == 9);
  CHECK(vals[0] == 0.0);
  CHECK(vals[1] == 1.0);
  CHECK(vals[2] == 0.0);
  CHECK(vals[3] == 0.0);
  CHECK(vals[4] == 1.0);
  CHECK(vals[5] == 0.0);
  CHECK(vals[6] == 0.0);
}

TEST_CASE("simulation input validation") {
  DiracStructure ds = circle();
  auto expect = [&](errc code, auto&& fn) {
    try {
      fn();
      FAIL_CHECK("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == code);
    }
  };
  expect(errc::invalid_argument, [&] { simulate(ds, "dirac-rk4", 0.0, 10, {1, 0, 0, 1}); });
  expect(errc::invalid_argument, [&] { simulate(ds, "dirac-rk4", -1.0, 10, {1, 0, 0, 1}); });
  expect(errc::invalid_argument, [&] { simulate(ds, "dirac-rk4", 0.1, 0, {1, 0, 0, 1}); });
  expect(errc::invalid_argument, [&] { simulate(ds, "dirac-rk4", 0.1, 10, {1, 0, 0}); });
  expect(errc::invalid_argument, [&] { simulate(ds, "warp", 0.1, 10, {1, 0, 0, 1}); });
  // initial state violating the constraints
  expect(errc::invalid_argument, [&] { simulate(ds, "dirac-rk4", 0.1, 10, {1, 1, 0, 1}); });
  // blow-up to non-finite values is reported as an integration failure
  expect(errc::integrator, [&] { simulate(ds, "dirac-rk4", 1000.0, 50, {1, 0, 0, 1}); });
}
