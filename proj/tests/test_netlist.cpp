#include <random>
#include <string>

#include "doctest.h"
#include "pfq/error.hpp"
#include "pfq/gates.hpp"
#include "pfq/netlist.hpp"

using namespace pfq;

namespace {

struct Diagnostic {
  ErrorCode code;
  int line;
  int column;
};

Diagnostic diagnose(const std::string& text) {
  try {
    parse_netlist(text);
  } catch (const Error& e) {
    REQUIRE(e.location().has_value());
    return {e.code(), e.location()->line, e.location()->column};
  }
  FAIL("parsed without error: " << text);
  return {};
}

PhotonState run_basis(const Circuit& c, std::int64_t k) {
  return run_circuit(c, PhotonState::basis(Mode{{k, 0}, kMainPath, Polarization::kH}));
}

}  // namespace

TEST_CASE("grammar example") {
  const auto c = parse_netlist("paths 1 2\nnpbs 1 2\nps 1 3.14159");
  REQUIRE(c.stages().size() == 2);
  CHECK(std::holds_alternative<Npbs>(c.stages()[0]));
  const auto& ps = std::get<PhaseShifter>(c.stages()[1]);
  CHECK(ps.path == 1);
  CHECK(ps.theta == 3.14159);
  CHECK(c.paths() == std::set<PathId>{1, 2});
}

TEST_CASE("identical ports are located") {
  const auto d = diagnose("paths 1 2\nnpbs 1 1");
  CHECK(d.code == ErrorCode::kIdenticalPorts);
  CHECK(d.line == 2);
  CHECK(d.column == 8);
}

TEST_CASE("diagnostics carry code, line and column") {
  struct Case {
    const char* text;
    ErrorCode code;
    int line;
    int column;
  };
  const Case cases[] = {
      {"paths 1 2\nfoo 1 2", ErrorCode::kUnknownKeyword, 2, 1},
      {"paths 1 2\n  npbs 1 3", ErrorCode::kUndeclaredPath, 2, 10},
      {"npbs 1 2", ErrorCode::kUndeclaredPath, 1, 6},
      {"paths 1 2\nnpbs 1", ErrorCode::kArity, 2, 6},
      {"paths 1 2\nnpbs 1 2 2", ErrorCode::kArity, 2, 10},
      {"paths 1 2\nps 1 abc", ErrorCode::kBadParameter, 2, 6},
      {"paths 1 2\nps 1 inf", ErrorCode::kBadParameter, 2, 6},
      {"paths 1 2\nps 1 nan", ErrorCode::kBadParameter, 2, 6},
      {"paths 1 1", ErrorCode::kDuplicatePath, 1, 9},
      {"paths 1\npaths 2 1", ErrorCode::kDuplicatePath, 2, 9},
      {"paths 1 2\nfs 1 1 0 1.5", ErrorCode::kBadParameter, 2, 10},
      {"paths 1 2\nfs 1 1 0 0", ErrorCode::kBadParameter, 2, 10},
      {"paths 1 2\nfs 1 x 0 1", ErrorCode::kBadParameter, 2, 6},
      {"paths 1 2\nfs 1 1 0 1 leak", ErrorCode::kArity, 2, 12},
      {"paths 1 2\nfs 1 1 0 1 lake 2", ErrorCode::kBadParameter, 2, 12},
      {"paths 1 2\nfs 1 1 0 1 leak 1", ErrorCode::kIdenticalPorts, 2, 17},
      {"paths 1 2\nbb 1 2", ErrorCode::kBadParameter, 2, 6},
      {"paths 1 2\ncf 1 2 3 4 cf1 0", ErrorCode::kBadParameter, 2, 10},
      {"paths 1 2\ncf 1 2 3 1 cf3 0", ErrorCode::kBadParameter, 2, 12},
      {"paths 1 2\ncf 1 2 3 1 cf1 1", ErrorCode::kBadParameter, 2, 16},
      {"paths 1 2\ncf 1 2 3 1&1 cf1 0", ErrorCode::kBadParameter, 2, 10},
      {"paths 1 2\ncf 1 2 3 1& cf1 0", ErrorCode::kBadParameter, 2, 12},
      {"paths 1 2\ncf 1 1 3 1 cf1 0", ErrorCode::kIdenticalPorts, 2, 6},
      {"qubits 0", ErrorCode::kBadParameter, 1, 8},
      {"qubits", ErrorCode::kArity, 1, 1},
      {"const bogus 1", ErrorCode::kBadParameter, 1, 7},
      {"const eta 2", ErrorCode::kBadParameter, 1, 7},
      {"paths -1", ErrorCode::kBadParameter, 1, 7},
      {"\n\n# only\npaths 1 2 # trailing\nhwp 1 2", ErrorCode::kArity, 5, 7},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    const auto d = diagnose(c.text);
    CHECK(d.code == c.code);
    CHECK(d.line == c.line);
    CHECK(d.column == c.column);
  }
}

TEST_CASE("error description includes the location") {
  try {
    parse_netlist("paths 1 2\nnpbs 1 1");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.describe().rfind("2:8: ", 0) == 0);
  }
}

TEST_CASE("comments, header lines and options") {
  const std::string text =
      "# demo\n"
      "name  two word name  # comment\n"
      "description split, shift and recombine\n"
      "qubits 2\n"
      "const eta 0.9\n"
      "paths 1 2 3\n"
      "fs 1 +1 -2 0.5 leak 3\n"
      "cf 1 2 2 1&2 CF2 0.01\n"
      "bb 2 1\n"
      "mirror 1 2\n"
      "pbs 1 2\n"
      "hwp 2\n";
  const auto c = parse_netlist(text);
  CHECK(c.name() == "two word name");
  CHECK(c.description() == "split, shift and recombine");
  CHECK(c.qubits() == 2);
  CHECK(c.constants().at("eta") == 0.9);
  REQUIRE(c.stages().size() == 6);
  const auto& fs = std::get<FrequencyShifter>(c.stages()[0]);
  CHECK(fs.dk == 1);
  CHECK(fs.dm == -2);
  CHECK(fs.eta == 0.5);
  REQUIRE(fs.leak_path.has_value());
  CHECK(*fs.leak_path == 3);
  const auto& cf = std::get<CombFilter>(c.stages()[1]);
  CHECK(cf.bands == BandMap::conjunction(2, {1, 2}, CfRole::kCf2));
  CHECK(cf.epsilon == 0.01);
  CHECK(c.resolve_constants(PhysicalConstants::ideal()).eta_fs == 0.9);
}

TEST_CASE("parse of serialize is the identity") {
  std::vector<Circuit> circuits = {
      build_fhg(1, 1),
      build_fhg(3, 2, {0.85, 0.01}),
      build_fqpg(2, 1),
      build_cz(3, 1, 3),
      build_cnot(2, 1, 2, {0.9, 0.02}),
      build_bb_phase(2, 2, 1),
      build_experimental_fhg(0.7, 0.85),
      build_experimental_fqpg(-2.5),
      build_dj_circuit(1, 0),
      Circuit{},
  };
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 20; ++i) {
    Circuit c({1, 2, 5});
    c.set_name("random " + std::to_string(i));
    c.set_constant("delta_num", std::abs(u(rng)) + 0.1);
    c.add(PhaseShifter{5, u(rng)});
    c.add(FrequencyShifter{2, i - 10, 3 - i, 0.5 + std::abs(u(rng)) / 21.0, 5});
    c.add(CombFilter{1, 5, BandMap::make(3, 1 + i % 3, CfRole::kCf1), std::abs(u(rng)) / 11.0});
    circuits.push_back(c);
  }
  for (const auto& c : circuits) {
    const std::string text = serialize_netlist(c);
    CAPTURE(text);
    const auto back = parse_netlist(text);
    CHECK(back == c);
    CHECK(serialize_netlist(back) == text);
  }
}

TEST_CASE("serialized FHG runs identically") {
  const auto c = build_fhg(1, 1);
  const auto back = parse_netlist(serialize_netlist(c));
  for (std::int64_t k = 0; k < 2; ++k) CHECK(run_basis(back, k) == run_basis(c, k));
}

TEST_CASE("empty circuit serializes to nothing") {
  CHECK(serialize_netlist(Circuit{}).empty());
  const auto c = parse_netlist("");
  CHECK(c.stages().empty());
  CHECK(c.paths().empty());
  CHECK(parse_netlist("# nothing\n\n   \n").stages().empty());

  Circuit header({1, 2});
  header.set_name("x#y");
  header.set_qubits(1);
  const auto text = serialize_netlist(header);
  CHECK(text == "name x y\nqubits 1\npaths 1 2\n");
}

TEST_CASE("carriage returns are whitespace") {
  const auto c = parse_netlist("paths 1 2\r\nnpbs 1 2\r\n");
  CHECK(c.stages().size() == 1);
}
