#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct Result {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr discarded unless merge is set.
Result pfq(const std::string& args, bool merge = false) {
  const std::string cmd =
      std::string("\"") + PFQ_CLI_PATH + "\" " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const char* name) { return std::string("\"") + PFQ_TEST_DATA + "/" + name + "\""; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const char* name) {
  return std::filesystem::temp_directory_path() / (std::string("pfq_cli_test_") + name);
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(pfq("--help").status == 0);
  CHECK(pfq("").status == 2);
  CHECK(pfq("bogus").status == 2);
  CHECK(pfq("dj 2 0").status == 2);
  CHECK(pfq("run").status == 2);
}

TEST_CASE("run writes a time trace CSV") {
  const auto r = pfq("run " + data("mzi.pfq"));
  CHECK(r.status == 0);
  CHECK(r.out.rfind("t,intensity\n", 0) == 0);
  CHECK(pfq("run " + data("mzi.pfq")).out == r.out);
}

TEST_CASE("run summary and counts") {
  const auto path = scratch("trace.csv");
  const auto r = pfq("run " + data("empty.pfq") + " --counts 50 --seed 3 --out \"" +
                     path.string() + "\"");
  CHECK(r.status == 0);
  CHECK(r.out.find("classification FLAT") != std::string::npos);
  CHECK(r.out.find("loss 0") != std::string::npos);
  const auto first = slurp(path);
  CHECK(first.rfind("t,intensity,counts\n", 0) == 0);
  pfq("run " + data("empty.pfq") + " --counts 50 --seed 3 --out \"" + path.string() + "\"");
  CHECK(slurp(path) == first);
  std::filesystem::remove(path);
}

TEST_CASE("run reports located parse errors") {
  const auto r = pfq("run " + data("bad.pfq"), true);
  CHECK(r.status == 2);
  CHECK(r.out.find(":3:6: bad-parameter") != std::string::npos);
  CHECK(pfq("run /nonexistent/file.pfq").status == 2);
}

TEST_CASE("sweeps pass and emit headers") {
  const auto t = pfq("sweep-theta");
  CHECK(t.status == 0);
  CHECK(t.out.rfind("theta,beat_amplitude,beat_phase,dc\n", 0) == 0);
  const auto p = pfq("sweep-phi --steps 8", true);
  CHECK(p.status == 0);
  CHECK(p.out.find("PASS") != std::string::npos);
  const auto j = pfq("sweep-phi --steps 8 --format json");
  CHECK(j.status == 0);
  CHECK(j.out.rfind("{", 0) == 0);
  CHECK(pfq("sweep-phi --steps 1").status == 2);
}

TEST_CASE("dj verdicts") {
  CHECK(pfq("dj 0 0").out == "CONSTANT (FRINGE)\n");
  CHECK(pfq("dj 1 1").out == "CONSTANT (FRINGE)\n");
  CHECK(pfq("dj 0 1").out == "BALANCED (ANTIFRINGE)\n");
  CHECK(pfq("dj 1 0").out == "BALANCED (ANTIFRINGE)\n");
}

TEST_CASE("spectrum CSV is deterministic") {
  const auto a = pfq("spectrum --n 3 --qubit 2 --epsilon 0.02");
  CHECK(a.status == 0);
  CHECK(a.out.rfind("omega_over_dw,R\n", 0) == 0);
  CHECK(pfq("spectrum --n 3 --qubit 2 --epsilon 0.02").out == a.out);
  CHECK(pfq("spectrum --n 2 --qubit '1&2' --role cf2").status == 0);
  CHECK(pfq("spectrum --n 3 --qubit 4").status == 2);
}

TEST_CASE("compile and verify") {
  const auto c = pfq("compile " + data("bell.json"));
  CHECK(c.status == 0);
  CHECK(c.out.find("U_FHG") != std::string::npos);
  CHECK(c.out.find("paths 1 2\n") != std::string::npos);

  const auto v = pfq("verify " + data("bell.json"));
  CHECK(v.status == 0);
  CHECK(v.out.find("PASS") != std::string::npos);

  const auto netlist = scratch("bad_bell.pfq");
  {
    std::ofstream f(netlist);
    f << "paths 1 2\nqubits 2\n";
  }
  const auto bad = pfq("verify " + data("bell.json") + " --netlist \"" + netlist.string() + "\"");
  CHECK(bad.status == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  std::filesystem::remove(netlist);

  const auto b = pfq("compile --builtin cnot --n 2 --control 1 --target 2");
  CHECK(b.status == 0);
  CHECK(b.out.find("cf 1 2 2") != std::string::npos);
  CHECK(pfq("compile --builtin nope").status == 2);
}

TEST_CASE("compiled netlist runs back through the parser") {
  const auto path = scratch("fhg.pfq");
  CHECK(pfq("compile --builtin experimental-fhg --theta 0 --out \"" + path.string() + "\"").status ==
        0);
  const auto r = pfq("run \"" + path.string() + "\" --format json");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"samples\"") != std::string::npos);
  std::filesystem::remove(path);
}
