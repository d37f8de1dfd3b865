#pragma once

// Gate-level circuits built from optical components, the emulation circuits
// used in the laboratory demonstrations, and a dense-matrix oracle.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "pfq/components.hpp"

namespace pfq {

using GateMatrix = Eigen::MatrixXcd;

// In-line gates take their input on kMainPath and return it there.
inline constexpr PathId kMainPath = 1;
inline constexpr PathId kSidePath = 2;
// Detector port of the two emulation circuits.
inline constexpr PathId kDetectorPath = 1;

struct GateOp {
  enum class Kind { kH, kZ, kCZ, kCNOT, kBBPhase };
  Kind kind = Kind::kH;
  int a = 1;  // qubit (control for CZ / CNOT)
  int b = 0;  // second qubit (target for CNOT), or the bit for BBPHASE

  bool operator==(const GateOp&) const = default;
};

const char* to_string(GateOp::Kind kind);

struct GateProgram {
  int n = 1;
  std::vector<GateOp> ops;

  // Throws kRange / kInvalidArgument.
  void validate() const;
  bool operator==(const GateProgram&) const = default;
};

struct BuildOptions {
  double eta = 1.0;      // shifter conversion efficiency
  double epsilon = 0.0;  // comb-filter crosstalk
};

// U_FHG = (1, -1; -1, -1) / sqrt 2 on the target qubit, identity elsewhere.
Circuit build_fhg(int n, int target_qubit, const BuildOptions& opts = {});
// Z on one qubit: CF1 sends bit 1 to the side path, PS(pi), CF2 recombines.
Circuit build_fqpg(int n, int flip_qubit, const BuildOptions& opts = {});
// Sign flip on the control=1 AND target=1 subspace.
Circuit build_cz(int n, int control, int target, const BuildOptions& opts = {});
// FHG(t), CZ(c, t), FHG(t), then FQPG(c) to undo the -1 the control=1
// block picks up (U_FHG Z U_FHG = -X).
Circuit build_cnot(int n, int control, int target, const BuildOptions& opts = {});
// (-1)^bit on the subspace where the qubit is 0: a black box on arm 1.
Circuit build_bb_phase(int n, int qubit, int bit, const BuildOptions& opts = {});

// CF-free Hadamard emulation: NPBS, PS(theta) on path 1 plus the fixed
// arm-balance phase, NPBS, FS1/FS2 one detuning step apart, exit NPBS.
Circuit build_experimental_fhg(double theta, double eta = 1.0);
// Polarization-tagged phase gate emulation.
Circuit build_experimental_fqpg(double phi, double eta = 1.0);
// One-qubit Deutsch-Jozsa: two MZI stages with black boxes, shifters at null
// detuning; the output is read as a fringe between paths 1 and 2.
Circuit build_dj_circuit(int bb1, int bb2, double eta = 1.0);

// Standard input of the emulation circuits: k = 0, m = 0 on path 1, H.
PhotonState emulation_input();

GateMatrix fhg_matrix();
// Product of explicit 2^n matrices in program order. Throws kRange for
// n > 10.
GateMatrix dense_oracle(const GateProgram& program);

// Frequency-basis matrix realized by an optical circuit: column j is the
// output on the main path for input |k = j> (m = 0, H). `stray` receives
// the largest amplitude modulus found anywhere else.
GateMatrix optical_matrix(const Circuit& circuit, int n, double* stray = nullptr);

// max |a - g b| over entries, where the unit phase g is that of the
// Frobenius overlap tr(b^H a). Shapes must match.
double max_deviation_up_to_phase(const GateMatrix& a, const GateMatrix& b);

}  // namespace pfq
