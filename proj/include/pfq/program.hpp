#pragma once

// Abstract gate programs and their compilation to optical circuits.

#include <string>
#include <string_view>

#include "pfq/gates.hpp"

namespace pfq {

// {"n": 2, "ops": [["H", 1], ["CNOT", 1, 2], ["BBPHASE", 1, 0]]}
GateProgram program_from_json(std::string_view text);
std::string program_to_json(const GateProgram& program);

// Concatenates the gate builders in program order. H realizes U_FHG, the
// signed Hadamard variant; the circuit description says so.
Circuit compile_program(const GateProgram& program, const BuildOptions& opts = {});

}  // namespace pfq
