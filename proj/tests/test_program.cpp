#include <cmath>

#include "doctest.h"
#include "pfq/error.hpp"
#include "pfq/program.hpp"
#include "support.hpp"

using namespace pfq;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    program_from_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parsed without error: " << text);
  return ErrorCode::kIo;
}

Mode main_mode(std::int64_t k) { return Mode{{k, 0}, kMainPath, Polarization::kH}; }

}  // namespace

TEST_CASE("program JSON round trip") {
  const auto p = program_from_json(
      R"({"n": 3, "ops": [["H", 1], ["z", 2], ["CZ", 1, 3], ["cnot", 3, 2], ["BBPHASE", 2, 1]]})");
  CHECK(p.n == 3);
  REQUIRE(p.ops.size() == 5);
  CHECK(p.ops[0] == GateOp{GateOp::Kind::kH, 1, 0});
  CHECK(p.ops[3] == GateOp{GateOp::Kind::kCNOT, 3, 2});
  CHECK(p.ops[4] == GateOp{GateOp::Kind::kBBPhase, 2, 1});
  const auto text = program_to_json(p);
  CHECK(text == R"({"n":3,"ops":[["H",1],["Z",2],["CZ",1,3],["CNOT",3,2],["BBPHASE",2,1]]})");
  CHECK(program_from_json(text) == p);
  CHECK(program_from_json(R"({"n":1,"ops":[]})").ops.empty());
}

TEST_CASE("program JSON errors") {
  CHECK(code_of("") == ErrorCode::kSyntax);
  CHECK(code_of("[1,2]") == ErrorCode::kSyntax);
  CHECK(code_of(R"({"n":1})") == ErrorCode::kSyntax);
  CHECK(code_of(R"({"n":1,"ops":{}})") == ErrorCode::kSyntax);
  CHECK(code_of(R"({"n":1,"ops":[["X",1]]})") == ErrorCode::kSyntax);
  CHECK(code_of(R"({"n":1,"ops":[[1]]})") == ErrorCode::kSyntax);
  CHECK(code_of(R"({"n":1,"ops":[["H",1.5]]})") == ErrorCode::kSyntax);
  CHECK(code_of(R"({"n":"2","ops":[]})") == ErrorCode::kSyntax);
  CHECK(code_of(R"({"n":1,"ops":[["H"]]})") == ErrorCode::kArity);
  CHECK(code_of(R"({"n":2,"ops":[["CZ",1]]})") == ErrorCode::kArity);
  CHECK(code_of(R"({"n":1,"ops":[["H",1,1]]})") == ErrorCode::kArity);
  CHECK(code_of(R"({"n":0,"ops":[]})") == ErrorCode::kRange);
  CHECK(code_of(R"({"n":11,"ops":[]})") == ErrorCode::kRange);
  CHECK(code_of(R"({"n":2,"ops":[["H",3]]})") == ErrorCode::kRange);
  CHECK(code_of(R"({"n":2,"ops":[["CNOT",1,1]]})") == ErrorCode::kInvalidArgument);
  CHECK(code_of(R"({"n":2,"ops":[["BBPHASE",1,2]]})") == ErrorCode::kInvalidArgument);
  CHECK(code_of(R"({"n":99999999999,"ops":[]})") == ErrorCode::kRange);
}

TEST_CASE("single H realizes U_FHG") {
  const auto c = compile_program(program_from_json(R"({"n":1,"ops":[["H",1]]})"));
  const auto out = run_circuit(c, PhotonState::basis(main_mode(0)));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(out.amplitude(main_mode(0)) - r) < 1e-12);
  CHECK(std::abs(out.amplitude(main_mode(1)) + r) < 1e-12);
  CHECK(c.description().find("U_FHG") != std::string::npos);
  CHECK(c.qubits() == 1);
}

TEST_CASE("H twice is the identity") {
  const auto c = compile_program(program_from_json(R"({"n":1,"ops":[["H",1],["H",1]]})"));
  for (std::int64_t k = 0; k < 2; ++k) {
    const auto out = run_circuit(c, PhotonState::basis(main_mode(k)));
    CHECK(std::abs(out.amplitude(main_mode(k)) - 1.0) < 1e-12);
    CHECK(std::abs(out.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("H on every qubit spreads evenly") {
  const auto c =
      compile_program(program_from_json(R"({"n":3,"ops":[["H",1],["H",2],["H",3]]})"));
  const auto out = run_circuit(c, PhotonState::basis(main_mode(0)));
  REQUIRE(out.amplitudes().size() == 8);
  for (const auto& [m, a] : out.amplitudes()) {
    CHECK(m.path == kMainPath);
    CHECK(std::abs(std::abs(a) - std::pow(2.0, -1.5)) < 1e-12);
  }
}

TEST_CASE("description without H") {
  const auto c = compile_program(program_from_json(R"({"n":2,"ops":[["CZ",1,2]]})"));
  CHECK(c.description() == "1 gate(s) on 2 qubit(s)");
}

TEST_CASE("random programs match the independent oracle") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    const auto p = support::random_program(rng);
    CAPTURE(program_to_json(p));
    double stray = 0.0;
    const auto optical = support::to_oracle(optical_matrix(compile_program(p), p.n, &stray));
    const double dev = oracle::deviation_up_to_phase(optical, support::program_matrix(p));
    CHECK(dev < 1e-10);
    CHECK(stray < 1e-10);
    CHECK(oracle::deviation_up_to_phase(support::to_oracle(dense_oracle(p)),
                                        support::program_matrix(p)) < 1e-12);
  }
}

TEST_CASE("lossy compile scales the output") {
  const auto p = program_from_json(R"({"n":2,"ops":[["H",1],["H",2]]})");
  const auto c = compile_program(p, {0.85, 0.0});
  const auto out = run_circuit(c, PhotonState::basis(main_mode(0)));
  // Two shifter passes per FHG.
  CHECK(std::abs(out.norm_squared() - std::pow(0.85, 4)) < 1e-12);
  CHECK(std::abs(out.norm_squared() + out.loss() - 1.0) < 1e-12);
}
