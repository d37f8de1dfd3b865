#include "pfq/gates.hpp"

#include <cmath>
#include <complex>
#include <unsupported/Eigen/KroneckerProduct>

#include "pfq/error.hpp"

namespace pfq {
namespace {

void check_qubit(int n, int q, const char* what) {
  if (n < 1) throw Error(ErrorCode::kRange, "qubit count must be >= 1");
  if (q < 1 || q > n)
    throw Error(ErrorCode::kRange, std::string(what) + " qubit " + std::to_string(q) +
                                       " outside [1, " + std::to_string(n) + "]");
}

Circuit two_path_circuit(std::string name, int n) {
  Circuit c({kMainPath, kSidePath});
  c.set_name(std::move(name));
  c.set_qubits(n);
  return c;
}

// Split with `split`, run the side-path stages, recombine with the
// complementary filter onto the side path, then swap back to the main path.
Circuit conditional_phase(std::string name, int n, const BandMap& split,
                          const std::vector<Component>& side_stages, const BuildOptions& opts) {
  Circuit c = two_path_circuit(std::move(name), n);
  c.add(CombFilter{kMainPath, kSidePath, split, opts.epsilon});
  for (const auto& s : side_stages) c.add(s);
  c.add(CombFilter{kMainPath, kSidePath, split.with_role(CfRole::kCf2), opts.epsilon});
  c.add(Mirror{kMainPath, kSidePath});
  return c;
}

}  // namespace

const char* to_string(GateOp::Kind kind) {
  switch (kind) {
    case GateOp::Kind::kH: return "H";
    case GateOp::Kind::kZ: return "Z";
    case GateOp::Kind::kCZ: return "CZ";
    case GateOp::Kind::kCNOT: return "CNOT";
    case GateOp::Kind::kBBPhase: return "BBPHASE";
  }
  return "?";
}

void GateProgram::validate() const {
  if (n < 1 || n > 10) throw Error(ErrorCode::kRange, "program qubit count must be in [1, 10]");
  for (const auto& op : ops) {
    check_qubit(n, op.a, to_string(op.kind));
    switch (op.kind) {
      case GateOp::Kind::kCZ:
      case GateOp::Kind::kCNOT:
        check_qubit(n, op.b, to_string(op.kind));
        if (op.a == op.b)
          throw Error(ErrorCode::kInvalidArgument,
                      std::string(to_string(op.kind)) + " needs two distinct qubits");
        break;
      case GateOp::Kind::kBBPhase:
        if (op.b != 0 && op.b != 1)
          throw Error(ErrorCode::kInvalidArgument, "BBPHASE bit must be 0 or 1");
        break;
      default:
        break;
    }
  }
}

Circuit build_fhg(int n, int target, const BuildOptions& opts) {
  check_qubit(n, target, "FHG");
  const std::int64_t w = qubit_weight(n, target);
  const BandMap split = make_bandmap(n, target, CfRole::kCf1);

  Circuit c = two_path_circuit("fhg", n);
  c.set_description("U_FHG = (1,-1;-1,-1)/sqrt2 on qubit " + std::to_string(target) +
                    "; signed Hadamard variant");
  // Bit-1 frequencies to the side path, then down onto the bit-0 grid point.
  c.add(CombFilter{kMainPath, kSidePath, split, opts.epsilon});
  c.add(FrequencyShifter{kMainPath, 0, 0, opts.eta, std::nullopt});
  c.add(FrequencyShifter{kSidePath, -w, 0, opts.eta, std::nullopt});
  c.add(PhaseShifter{kSidePath, -kPi / 2});
  c.add(Npbs{kMainPath, kSidePath});
  c.add(PhaseShifter{kMainPath, kPi});
  c.add(PhaseShifter{kSidePath, -kPi / 2});
  // The main-path output becomes the bit-1 branch; CF2 folds bit 0 back in.
  c.add(FrequencyShifter{kMainPath, w, 0, opts.eta, std::nullopt});
  c.add(FrequencyShifter{kSidePath, 0, 0, opts.eta, std::nullopt});
  c.add(CombFilter{kMainPath, kSidePath, split.with_role(CfRole::kCf2), opts.epsilon});
  return c;
}

Circuit build_fqpg(int n, int flip_qubit, const BuildOptions& opts) {
  check_qubit(n, flip_qubit, "FQPG");
  Circuit c = conditional_phase("fqpg", n, make_bandmap(n, flip_qubit, CfRole::kCf1),
                                {PhaseShifter{kSidePath, kPi}}, opts);
  c.set_description("Z on qubit " + std::to_string(flip_qubit));
  return c;
}

Circuit build_cz(int n, int control, int target, const BuildOptions& opts) {
  check_qubit(n, control, "CZ control");
  check_qubit(n, target, "CZ target");
  if (control == target) throw Error(ErrorCode::kInvalidArgument, "CZ needs two distinct qubits");
  Circuit c = conditional_phase("cz", n, BandMap::conjunction(n, {control, target}, CfRole::kCf1),
                                {PhaseShifter{kSidePath, kPi}}, opts);
  c.set_description("CZ on qubits " + std::to_string(control) + "," + std::to_string(target));
  return c;
}

Circuit build_cnot(int n, int control, int target, const BuildOptions& opts) {
  check_qubit(n, control, "CNOT control");
  check_qubit(n, target, "CNOT target");
  if (control == target)
    throw Error(ErrorCode::kInvalidArgument, "CNOT needs two distinct qubits");
  Circuit c = two_path_circuit("cnot", n);
  c.set_description("CNOT control " + std::to_string(control) + " target " +
                    std::to_string(target) + " with control-block phase repair");
  c.append(build_fhg(n, target, opts));
  c.append(build_cz(n, control, target, opts));
  c.append(build_fhg(n, target, opts));
  c.append(build_fqpg(n, control, opts));
  return c;
}

Circuit build_bb_phase(int n, int qubit, int bit, const BuildOptions& opts) {
  check_qubit(n, qubit, "BBPHASE");
  if (bit != 0 && bit != 1) throw Error(ErrorCode::kInvalidArgument, "BBPHASE bit must be 0 or 1");
  // After CF1 the bit-0 frequencies are the ones left on the main path.
  Circuit c = conditional_phase("bbphase", n, make_bandmap(n, qubit, CfRole::kCf1),
                                {BlackBox{kMainPath, bit}}, opts);
  c.set_description("black box on arm 1 of qubit " + std::to_string(qubit));
  return c;
}

Circuit build_experimental_fhg(double theta, double eta) {
  Circuit c = two_path_circuit("experimental-fhg", 1);
  c.set_description("CF-free Hadamard emulation; detector on path 1");
  c.add(Npbs{1, 2});
  c.add(PhaseShifter{1, theta});
  c.add(PhaseShifter{2, kPi / 2});  // arm balance
  c.add(Npbs{1, 2});
  c.add(FrequencyShifter{1, 1, 1, eta, std::nullopt});
  c.add(FrequencyShifter{2, 1, 0, eta, std::nullopt});
  c.add(Npbs{1, 2});
  return c;
}

Circuit build_experimental_fqpg(double phi, double eta) {
  Circuit c = two_path_circuit("experimental-fqpg", 1);
  c.set_description("polarization-tagged phase gate emulation; detector on path 1");
  c.add(Npbs{1, 2});
  c.add(FrequencyShifter{1, 1, 1, eta, std::nullopt});
  c.add(HalfWavePlate{1});
  c.add(FrequencyShifter{2, 1, 0, eta, std::nullopt});
  c.add(Pbs{1, 2});  // combine: both frequencies on path 2, tagged H / V
  c.add(Pbs{1, 2});  // separate again by polarization
  c.add(PhaseShifter{2, phi});
  c.add(HalfWavePlate{2});
  c.add(Npbs{1, 2});
  return c;
}

Circuit build_dj_circuit(int bb1, int bb2, double eta) {
  if ((bb1 != 0 && bb1 != 1) || (bb2 != 0 && bb2 != 1))
    throw Error(ErrorCode::kInvalidArgument, "black-box settings must be 0 or 1");
  Circuit c = two_path_circuit("deutsch-jozsa", 1);
  c.set_description("black boxes {" + std::to_string(bb1) + "," + std::to_string(bb2) +
                    "}; fringe read-out between paths 1 and 2");
  c.add(Npbs{1, 2});
  c.add(BlackBox{1, bb1});
  c.add(Npbs{1, 2});
  c.add(FrequencyShifter{1, 1, 0, eta, std::nullopt});
  c.add(FrequencyShifter{2, 1, 0, eta, std::nullopt});
  c.add(Npbs{1, 2});
  c.add(BlackBox{1, bb2});
  c.add(PhaseShifter{2, kPi / 2});  // arm balance
  return c;
}

PhotonState emulation_input() { return PhotonState::basis(Mode{{0, 0}, 1, Polarization::kH}); }

GateMatrix fhg_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  GateMatrix u(2, 2);
  u << r, -r, -r, -r;
  return u;
}

namespace {

GateMatrix single(std::complex<double> a, std::complex<double> b, std::complex<double> c,
                  std::complex<double> d) {
  GateMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// factors[q - 1] acts on qubit q; qubit 1 is the leftmost Kronecker factor.
GateMatrix kron_all(const std::vector<GateMatrix>& factors) {
  GateMatrix out = GateMatrix::Identity(1, 1);
  for (const auto& f : factors) {
    GateMatrix next = Eigen::kroneckerProduct(out, f).eval();
    out = std::move(next);
  }
  return out;
}

GateMatrix embed(int n, const std::vector<std::pair<int, GateMatrix>>& placed) {
  std::vector<GateMatrix> factors(static_cast<std::size_t>(n), GateMatrix::Identity(2, 2));
  for (const auto& [q, m] : placed) factors[static_cast<std::size_t>(q - 1)] = m;
  return kron_all(factors);
}

}  // namespace

GateMatrix dense_oracle(const GateProgram& program) {
  if (program.n > 10) throw Error(ErrorCode::kRange, "dense oracle limited to 10 qubits");
  program.validate();
  const int n = program.n;
  const GateMatrix p0 = single(1, 0, 0, 0);
  const GateMatrix p1 = single(0, 0, 0, 1);
  const GateMatrix x = single(0, 1, 1, 0);
  const GateMatrix z = single(1, 0, 0, -1);

  const Eigen::Index dim = Eigen::Index{1} << n;
  GateMatrix total = GateMatrix::Identity(dim, dim);
  for (const auto& op : program.ops) {
    GateMatrix g;
    switch (op.kind) {
      case GateOp::Kind::kH:
        g = embed(n, {{op.a, fhg_matrix()}});
        break;
      case GateOp::Kind::kZ:
        g = embed(n, {{op.a, z}});
        break;
      case GateOp::Kind::kCZ:
        g = embed(n, {{op.a, p0}}) + embed(n, {{op.a, p1}, {op.b, z}});
        break;
      case GateOp::Kind::kCNOT:
        g = embed(n, {{op.a, p0}}) + embed(n, {{op.a, p1}, {op.b, x}});
        break;
      case GateOp::Kind::kBBPhase: {
        const double s = op.b == 1 ? -1.0 : 1.0;
        g = embed(n, {{op.a, single(s, 0, 0, 1)}});
        break;
      }
    }
    total = (g * total).eval();
  }
  return total;
}

GateMatrix optical_matrix(const Circuit& circuit, int n, double* stray) {
  if (n < 1 || n > 10) throw Error(ErrorCode::kRange, "optical matrix limited to 1..10 qubits");
  const std::int64_t dim = std::int64_t{1} << n;
  GateMatrix m = GateMatrix::Zero(dim, dim);
  double worst = 0.0;
  for (std::int64_t j = 0; j < dim; ++j) {
    const PhotonState out =
        run_circuit(circuit, PhotonState::basis(Mode{{j, 0}, kMainPath, Polarization::kH}));
    for (const auto& [mode, a] : out.amplitudes()) {
      const bool in_basis = mode.path == kMainPath && mode.pol == Polarization::kH &&
                            mode.freq.m == 0 && mode.freq.k >= 0 && mode.freq.k < dim;
      if (in_basis) {
        m(mode.freq.k, j) = a;
      } else {
        worst = std::max(worst, std::abs(a));
      }
    }
  }
  if (stray) *stray = worst;
  return m;
}

double max_deviation_up_to_phase(const GateMatrix& a, const GateMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::kInvalidArgument, "matrix shapes differ");
  // Phase of the Frobenius overlap <b, a> aligns b onto a.
  const std::complex<double> overlap = (b.adjoint() * a).trace();
  const std::complex<double> g =
      std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : std::complex<double>{1.0, 0.0};
  return (a - g * b).cwiseAbs().maxCoeff();
}

}  // namespace pfq
