#include "pfq/program.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"
#include "pfq/error.hpp"

namespace pfq {
namespace {

using nlohmann::json;

GateOp::Kind parse_kind(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (name == "H") return GateOp::Kind::kH;
  if (name == "Z") return GateOp::Kind::kZ;
  if (name == "CZ") return GateOp::Kind::kCZ;
  if (name == "CNOT") return GateOp::Kind::kCNOT;
  if (name == "BBPHASE") return GateOp::Kind::kBBPhase;
  throw Error(ErrorCode::kSyntax, "unknown gate '" + name + "'");
}

std::size_t arity(GateOp::Kind k) { return k == GateOp::Kind::kH || k == GateOp::Kind::kZ ? 1 : 2; }

int as_int(const json& v, std::size_t op_index) {
  if (!v.is_number_integer())
    throw Error(ErrorCode::kSyntax,
                "op " + std::to_string(op_index) + ": gate arguments must be integers");
  const auto x = v.get<std::int64_t>();
  if (x < -1000000 || x > 1000000)
    throw Error(ErrorCode::kRange, "op " + std::to_string(op_index) + ": argument out of range");
  return static_cast<int>(x);
}

}  // namespace

GateProgram program_from_json(std::string_view text) {
  const json j = json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kSyntax, "program is not valid JSON");
  if (!j.is_object() || !j.contains("n") || !j.contains("ops"))
    throw Error(ErrorCode::kSyntax, "program must be an object with \"n\" and \"ops\"");
  if (!j["ops"].is_array()) throw Error(ErrorCode::kSyntax, "\"ops\" must be an array");

  GateProgram p;
  p.n = as_int(j["n"], 0);
  std::size_t index = 0;
  for (const auto& op : j["ops"]) {
    ++index;
    if (!op.is_array() || op.empty() || !op[0].is_string())
      throw Error(ErrorCode::kSyntax,
                  "op " + std::to_string(index) + ": expected [\"GATE\", args...]");
    GateOp g;
    g.kind = parse_kind(op[0].get<std::string>());
    if (op.size() - 1 != arity(g.kind))
      throw Error(ErrorCode::kArity, "op " + std::to_string(index) + ": " + to_string(g.kind) +
                                         " takes " + std::to_string(arity(g.kind)) +
                                         " argument(s)");
    g.a = as_int(op[1], index);
    g.b = op.size() > 2 ? as_int(op[2], index) : 0;
    p.ops.push_back(g);
  }
  p.validate();
  return p;
}

std::string program_to_json(const GateProgram& program) {
  json ops = json::array();
  for (const auto& op : program.ops) {
    json o = json::array({to_string(op.kind), op.a});
    if (arity(op.kind) == 2) o.push_back(op.b);
    ops.push_back(o);
  }
  return json{{"n", program.n}, {"ops", ops}}.dump();
}

Circuit compile_program(const GateProgram& program, const BuildOptions& opts) {
  program.validate();
  Circuit c({kMainPath, kSidePath});
  c.set_name("program");
  c.set_qubits(program.n);
  bool has_h = false;
  for (const auto& op : program.ops) {
    switch (op.kind) {
      case GateOp::Kind::kH:
        has_h = true;
        c.append(build_fhg(program.n, op.a, opts));
        break;
      case GateOp::Kind::kZ:
        c.append(build_fqpg(program.n, op.a, opts));
        break;
      case GateOp::Kind::kCZ:
        c.append(build_cz(program.n, op.a, op.b, opts));
        break;
      case GateOp::Kind::kCNOT:
        c.append(build_cnot(program.n, op.a, op.b, opts));
        break;
      case GateOp::Kind::kBBPhase:
        c.append(build_bb_phase(program.n, op.a, op.b, opts));
        break;
    }
  }
  std::string desc = std::to_string(program.ops.size()) + " gate(s) on " +
                     std::to_string(program.n) + " qubit(s)";
  if (has_h) desc += "; H realized as U_FHG = (1,-1;-1,-1)/sqrt2, not the textbook Hadamard";
  c.set_description(desc);
  return c;
}

}  // namespace pfq
