#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "oracle.hpp"
#include "pfq/error.hpp"
#include "pfq/experiments.hpp"
#include "pfq/program.hpp"

using namespace pfq;

namespace {

const PhysicalConstants kIdeal = PhysicalConstants::ideal();

}  // namespace

TEST_CASE("sweep points exclude the endpoint") {
  const auto x = SweepSpec{0.0, 1.0, 4}.points();
  REQUIRE(x.size() == 4);
  CHECK(x[0] == 0.0);
  CHECK(x[3] == 0.75);
  CHECK_THROWS_AS(SweepSpec({0.0, 1.0, 1}).points(), Error);
  CHECK_THROWS_AS(SweepSpec({0.0, INFINITY, 4}).points(), Error);
}

TEST_CASE("cosine fit recovers synthetic coefficients") {
  std::vector<double> x, y;
  for (int i = 0; i < 40; ++i) {
    x.push_back(0.1 * i);
    y.push_back(0.3 * std::cos(x.back()) - 0.2 * std::sin(x.back()) + 0.05);
  }
  const auto f = fit_cosine(x, y);
  CHECK(f.a == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(f.b == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(f.c == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(f.max_residual < 1e-12);
  CHECK(f.amplitude() == doctest::Approx(std::hypot(0.3, 0.2)));
  CHECK(f.phase() == doctest::Approx(std::atan2(-0.2, 0.3)));
  CHECK_THROWS_AS(fit_cosine(std::vector<double>{1.0}, std::vector<double>{}), Error);
}

TEST_CASE("theta sweep follows cos theta") {
  const auto r = sweep_theta(kIdeal);
  REQUIRE(r.rows.size() == 32);
  CHECK(r.variable == SweepVariable::kTheta);
  // Beat term of I = (1 + sin(delta t) cos(theta)) / 2.
  CHECK(std::abs(r.fit.a - 0.5) < 1e-9);
  CHECK(std::abs(r.fit.b) < 1e-9);
  CHECK(std::abs(r.fit.c) < 1e-9);
  CHECK(r.fit.max_residual < 1e-9);
  for (const auto& row : r.rows) {
    CHECK(std::abs(row.beat_amplitude - 0.5 * std::cos(row.setting)) < 1e-9);
    CHECK(std::abs(row.dc - 0.5) < 1e-9);
  }
  CHECK(std::abs(r.rows[8].beat_amplitude) < 1e-9);  // theta = pi/2
  CHECK(r.max_amplitude == doctest::Approx(0.5));
  CHECK(r.min_amplitude == doctest::Approx(-0.5));
}

TEST_CASE("theta sweep matches the closed-form trace") {
  const auto grid = TimeGrid::beat_periods(kIdeal, 4, 32);
  const double theta = 0.9;
  const auto rec =
      time_trace(run_circuit(build_experimental_fhg(theta), emulation_input()), 1, kIdeal, grid);
  for (const auto& s : rec.samples)
    CHECK(std::abs(s.intensity - oracle::fhg_emulation_intensity(s.x, theta, kIdeal.delta)) <
          1e-12);
}

TEST_CASE("phi sweep shifts the beat phase only") {
  const auto r = sweep_phi(kIdeal);
  REQUIRE(r.rows.size() == 32);
  CHECK(r.max_phase_error < 1e-9);
  CHECK(std::abs(r.rows[0].beat_phase) < 1e-12);
  for (const auto& row : r.rows) CHECK(std::abs(row.beat_amplitude - 0.5) < 1e-9);
  CHECK(r.max_amplitude - r.min_amplitude < 1e-9);
}

TEST_CASE("lossy sweeps scale by eta") {
  PhysicalConstants c = kIdeal;
  c.eta_fs = 0.85;
  const auto r = sweep_theta(c, {0.0, 2 * kPi, 8});
  // Each arm passes one shifter.
  CHECK(std::abs(r.fit.a - 0.5 * 0.85) < 1e-9);
  c.eta_fs = 0.0;
  CHECK_THROWS_AS(sweep_theta(c), Error);
}

TEST_CASE("sweep export") {
  const auto r = sweep_phi(kIdeal, {0.0, 2 * kPi, 4});
  const auto csv = sweep_to_csv(r);
  CHECK(csv.rfind("phi,beat_amplitude,beat_phase,dc\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  const auto j = nlohmann::json::parse(sweep_to_json(r));
  CHECK(j["variable"] == "phi");
  CHECK(j["rows"].size() == 4);
  CHECK(j["fit"].contains("max_residual"));
  CHECK(sweep_to_csv(sweep_phi(kIdeal, {0.0, 2 * kPi, 4})) == csv);
}

TEST_CASE("Deutsch-Jozsa verdicts") {
  for (int b1 = 0; b1 < 2; ++b1) {
    for (int b2 = 0; b2 < 2; ++b2) {
      const auto r = run_dj(b1, b2, kIdeal);
      REQUIRE(r.classification.has_value());
      if (b1 == b2) {
        CHECK(*r.classification == FringeClass::kFringe);
        CHECK(std::string(r.verdict()) == "CONSTANT");
      } else {
        CHECK(*r.classification == FringeClass::kAntiFringe);
        CHECK(std::string(r.verdict()) == "BALANCED");
      }
      CHECK(r.pattern.kind == RecordKind::kFringe);
    }
  }
  CHECK(std::string(DjResult{}.verdict()) == "UNDETERMINED");
  CHECK_THROWS_AS(run_dj(2, 0, kIdeal), Error);
}

TEST_CASE("verify passes compiled programs and catches a perturbed phase") {
  const auto p = program_from_json(R"({"n":2,"ops":[["H",1],["CNOT",1,2]]})");
  const auto ok = verify_program(p);
  CHECK(ok.pass);
  CHECK(ok.max_deviation < 1e-12);
  CHECK(ok.tolerance == 1e-10);

  // Nudge the FQPG phase of the CNOT repair stage.
  Circuit bad({kMainPath, kSidePath});
  bad.set_qubits(2);
  const auto good = compile_program(p);
  bool nudged = false;
  for (auto stage : good.stages()) {
    if (auto* ps = std::get_if<PhaseShifter>(&stage); ps && !nudged) {
      ps->theta += 1e-3;
      nudged = true;
    }
    bad.add(stage);
  }
  REQUIRE(nudged);
  const auto r = verify_program(p, &bad);
  CHECK_FALSE(r.pass);
  CHECK(r.max_deviation > 1e-4);
  CHECK(r.max_deviation < 1e-2);
  CHECK_THROWS_AS(verify_program(p, nullptr, 0.0), Error);
}
