#pragma once

// Line-oriented text form of a Circuit (.pfq files).
//
//   # comment to end of line
//   name <text>            description <text>
//   qubits <n>             const <key> <real>
//   paths <id> <id> ...
//   npbs <pA> <pB>         pbs <pA> <pB>
//   fs <path> <dk> <dm> <eta> [leak <path>]
//   ps <path> <radians>    hwp <path>
//   cf <pA> <pB> <n> <q>[&<q>...] <cf1|cf2> <epsilon>
//   bb <path> <0|1>        mirror <pA> <pB>
//
// Header lines may appear anywhere; paths must be declared before use.

#include <string>
#include <string_view>

#include "pfq/components.hpp"

namespace pfq {

// Throws pfq::Error with a line/column location on any malformed input.
Circuit parse_netlist(std::string_view text);

// Canonical form: one statement per line, fixed parameter order, reals with
// 17 significant digits. Equal circuits give byte-identical text.
std::string serialize_netlist(const Circuit& circuit);

}  // namespace pfq
