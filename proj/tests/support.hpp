#pragma once

// Helpers shared by the program tests and the acceptance runner.

#include <random>

#include "oracle.hpp"
#include "pfq/gates.hpp"

namespace support {

inline oracle::Mat to_oracle(const pfq::GateMatrix& m) {
  oracle::Mat o(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) o(r, c) = m(r, c);
  return o;
}

// Matrix of a program from the independent oracle, applied in program order.
inline oracle::Mat program_matrix(const pfq::GateProgram& p) {
  using K = pfq::GateOp::Kind;
  oracle::Mat u = oracle::identity(std::int64_t{1} << p.n);
  for (const auto& op : p.ops) {
    oracle::Mat g(1);
    switch (op.kind) {
      case K::kH: g = oracle::u_fhg(p.n, op.a); break;
      case K::kZ: g = oracle::pauli_z(p.n, op.a); break;
      case K::kCZ: g = oracle::cz(p.n, op.a, op.b); break;
      case K::kCNOT: g = oracle::cnot(p.n, op.a, op.b); break;
      case K::kBBPhase: g = oracle::bb_phase(p.n, op.a, op.b); break;
    }
    u = oracle::mul(g, u);
  }
  return u;
}

inline pfq::GateProgram random_program(std::mt19937_64& rng, int max_n = 3, int max_ops = 6) {
  using K = pfq::GateOp::Kind;
  pfq::GateProgram p;
  p.n = std::uniform_int_distribution<int>(1, max_n)(rng);
  const int count = std::uniform_int_distribution<int>(1, max_ops)(rng);
  std::uniform_int_distribution<int> qubit(1, p.n);
  for (int i = 0; i < count; ++i) {
    const int pick = std::uniform_int_distribution<int>(0, p.n > 1 ? 4 : 2)(rng);
    pfq::GateOp op;
    op.a = qubit(rng);
    switch (pick) {
      case 0: op.kind = K::kH; break;
      case 1: op.kind = K::kZ; break;
      case 2:
        op.kind = K::kBBPhase;
        op.b = std::uniform_int_distribution<int>(0, 1)(rng);
        break;
      default:
        op.kind = pick == 3 ? K::kCZ : K::kCNOT;
        do op.b = qubit(rng);
        while (op.b == op.a);
        break;
    }
    p.ops.push_back(op);
  }
  return p;
}

}  // namespace support
