// pfq: command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pfq/pfq.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr double kTwoPi = 6.283185307179586;

struct Failure {
  int exit_code;
  std::string message;
};

struct StringDeleter {
  void operator()(char* s) const { pfq_free_string(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

template <class T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using State = std::unique_ptr<pfq_state, HandleDeleter<pfq_state, pfq_state_free>>;
using Circuit = std::unique_ptr<pfq_circuit, HandleDeleter<pfq_circuit, pfq_circuit_free>>;
using Program = std::unique_ptr<pfq_program, HandleDeleter<pfq_program, pfq_program_free>>;
using Record = std::unique_ptr<pfq_record, HandleDeleter<pfq_record, pfq_record_free>>;
using Sweep = std::unique_ptr<pfq_sweep, HandleDeleter<pfq_sweep, pfq_sweep_free>>;

void check(pfq_status st, const std::string& context = {}) {
  if (st == PFQ_OK) return;
  std::string msg = context.empty() ? "" : context + ":";
  if (pfq_last_error_line() > 0)
    msg += std::to_string(pfq_last_error_line()) + ":" + std::to_string(pfq_last_error_column()) +
           ":";
  if (!msg.empty()) msg += " ";
  msg += std::string(pfq_status_name(st)) + ": " + pfq_last_error();
  throw Failure{kExitUsage, msg};
}

std::string take(char* s) {
  OwnedString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string real(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Common {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::vector<std::string> consts;
};

// Ideal components unless overridden.
pfq_constants base_constants() { return pfq_constants_ideal(); }

void apply_overrides(pfq_constants& k, const std::vector<std::string>& overrides) {
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Failure{kExitUsage, "--const expects key=value, got '" + kv + "'"};
    const std::string key = kv.substr(0, eq);
    const std::string text = kv.substr(eq + 1);
    double value = 0.0;
    std::size_t used = 0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size())
      throw Failure{kExitUsage, "--const " + key + ": '" + text + "' is not a number"};
    check(pfq_constants_set(&k, key.c_str(), value), "--const");
  }
  check(pfq_constants_validate(&k), "constants");
}

// Data to --out when given, else stdout. Summary lines go to whichever
// stream the data did not take.
struct Output {
  const Common& opts;

  void data(const std::string& text) const {
    if (opts.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(opts.out, std::ios::binary);
    if (!f) throw Failure{kExitUsage, "cannot write '" + opts.out + "'"};
    f << text;
    if (!f) throw Failure{kExitUsage, "write to '" + opts.out + "' failed"};
  }

  std::ostream& summary() const { return opts.out.empty() ? std::cerr : std::cout; }
};

void check_format(const Common& c) {
  if (c.format != "csv" && c.format != "json")
    throw Failure{kExitUsage, "--format must be csv or json"};
}

const char* class_name(int c) {
  switch (c) {
    case PFQ_CLASS_FRINGE: return "FRINGE";
    case PFQ_CLASS_ANTIFRINGE: return "ANTIFRINGE";
    case PFQ_CLASS_FLAT: return "FLAT";
    default: return "NONE";
  }
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out,-o", c.out, "output file (default: stdout)");
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--seed", c.seed, "RNG seed for photon counting");
  app->add_option("--const", c.consts, "override a physical constant, key=value")
      ->allow_extra_args(false);
}

struct RunArgs {
  std::string netlist;
  std::string state_file;
  std::string state_out;
  std::int64_t k = 0;
  std::int64_t m = 0;
  int path = 1;
  std::string pol = "H";
  int detector = 1;
  std::vector<int> fringe;
  double counts = 0.0;
  int periods = 10;
  int per_period = 64;
};

int cmd_run(const RunArgs& a, const Common& c) {
  check_format(c);
  const std::string text = read_file(a.netlist);
  pfq_circuit* raw = nullptr;
  check(pfq_circuit_parse(text.data(), text.size(), &raw), a.netlist);
  Circuit circuit(raw);

  pfq_constants k = base_constants();
  check(pfq_circuit_resolve_constants(circuit.get(), &k), a.netlist);
  apply_overrides(k, c.consts);

  pfq_state* in_raw = nullptr;
  if (!a.state_file.empty()) {
    check(pfq_state_from_json(read_file(a.state_file).c_str(), &in_raw), a.state_file);
  } else {
    if (a.pol != "H" && a.pol != "V") throw Failure{kExitUsage, "--pol must be H or V"};
    check(pfq_state_basis(a.k, a.m, a.path, a.pol == "H" ? PFQ_POL_H : PFQ_POL_V, &in_raw),
          "input");
  }
  State input(in_raw);

  pfq_state* out_raw = nullptr;
  check(pfq_circuit_run(circuit.get(), input.get(), &out_raw), a.netlist);
  State output(out_raw);

  pfq_record* rec_raw = nullptr;
  if (!a.fringe.empty()) {
    if (a.fringe.size() != 2) throw Failure{kExitUsage, "--fringe takes two paths"};
    check(pfq_fringe(output.get(), a.fringe[0], a.fringe[1], &rec_raw), "fringe");
  } else {
    check(pfq_time_trace(output.get(), a.detector, &k, a.periods, a.per_period, &rec_raw),
          "trace");
  }
  Record record(rec_raw);
  pfq_record_summary sum{};
  check(pfq_record_summarize(record.get(), &sum));

  std::vector<std::int64_t> counts;
  if (a.counts > 0.0) {
    counts.resize(sum.sample_count);
    check(pfq_record_poisson(record.get(), a.counts, c.seed, counts.data()), "counts");
  }

  char* body = nullptr;
  if (c.format == "csv") {
    check(pfq_record_to_csv(record.get(), counts.empty() ? nullptr : counts.data(), counts.size(),
                            &body));
  } else {
    check(pfq_record_to_json(record.get(), &body));
  }
  const Output out{c};
  out.data(take(body));

  if (!a.state_out.empty()) {
    char* js = nullptr;
    check(pfq_state_to_json(output.get(), &js));
    std::ofstream f(a.state_out, std::ios::binary);
    if (!f) throw Failure{kExitUsage, "cannot write '" + a.state_out + "'"};
    f << take(js) << "\n";
  }

  double norm2 = 0.0;
  double loss = 0.0;
  check(pfq_state_norm_squared(output.get(), &norm2));
  check(pfq_state_loss(output.get(), &loss));
  auto& s = out.summary();
  s << "dc " << real(sum.dc) << "\n"
    << "beat_amplitude " << real(sum.beat_amplitude) << "\n"
    << "beat_phase " << real(sum.beat_phase) << "\n"
    << "classification " << class_name(sum.classification) << "\n"
    << "norm_squared " << real(norm2) << "\n"
    << "loss " << real(loss) << "\n";
  return kExitOk;
}

struct SweepArgs {
  int steps = 32;
  double start = 0.0;
  double stop = kTwoPi;
  double tolerance = 1e-9;
};

int cmd_sweep(int variable, const SweepArgs& a, const Common& c) {
  check_format(c);
  if (a.steps < 2) throw Failure{kExitUsage, "--steps must be at least 2"};
  pfq_constants k = base_constants();
  apply_overrides(k, c.consts);
  pfq_sweep* raw = nullptr;
  check(pfq_sweep_run(variable, &k, a.start, a.stop, a.steps, &raw), "sweep");
  Sweep sweep(raw);
  pfq_sweep_summary sum{};
  check(pfq_sweep_summarize(sweep.get(), &sum));

  char* body = nullptr;
  check(c.format == "csv" ? pfq_sweep_to_csv(sweep.get(), &body)
                          : pfq_sweep_to_json(sweep.get(), &body));
  const Output out{c};
  out.data(take(body));

  auto& s = out.summary();
  s << "fit a " << real(sum.fit_a) << "\n"
    << "fit b " << real(sum.fit_b) << "\n"
    << "fit c " << real(sum.fit_c) << "\n"
    << "fit max_residual " << real(sum.fit_max_residual) << "\n";
  bool ok = sum.fit_max_residual < a.tolerance;
  if (variable == PFQ_SWEEP_PHI) {
    const double spread = sum.max_amplitude - sum.min_amplitude;
    s << "amplitude " << real(sum.min_amplitude) << " .. " << real(sum.max_amplitude) << "\n"
      << "max_phase_error " << real(sum.max_phase_error) << "\n";
    ok = ok && spread < a.tolerance && sum.max_phase_error < a.tolerance;
  }
  s << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitFail;
}

int cmd_dj(int bb1, int bb2, const Common& c) {
  check_format(c);
  pfq_constants k = base_constants();
  apply_overrides(k, c.consts);
  int cls = PFQ_CLASS_NONE;
  pfq_record* raw = nullptr;
  check(pfq_dj(bb1, bb2, &k, &cls, &raw), "dj");
  Record pattern(raw);
  if (!c.out.empty()) {
    char* body = nullptr;
    check(c.format == "csv" ? pfq_record_to_csv(pattern.get(), nullptr, 0, &body)
                            : pfq_record_to_json(pattern.get(), &body));
    Output{c}.data(take(body));
  }
  const char* verdict = cls == PFQ_CLASS_FRINGE       ? "CONSTANT"
                        : cls == PFQ_CLASS_ANTIFRINGE ? "BALANCED"
                                                      : "UNDETERMINED";
  std::cout << verdict << " (" << class_name(cls) << ")\n";
  return cls == PFQ_CLASS_FRINGE || cls == PFQ_CLASS_ANTIFRINGE ? kExitOk : kExitFail;
}

struct SpectrumArgs {
  int n = 3;
  std::string qubits = "1";
  std::string role = "cf1";
  double edge_width = 0.1;
  double epsilon = -1.0;  // falls back to the constants record
  int samples = 0;
};

std::vector<int> parse_qubits(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '&')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Failure{kExitUsage, "--qubit expects q or q1&q2, got '" + text + "'"};
    }
  }
  if (out.empty()) throw Failure{kExitUsage, "--qubit is empty"};
  return out;
}

int cmd_spectrum(const SpectrumArgs& a, const Common& c) {
  if (c.format != "csv") throw Failure{kExitUsage, "spectrum output is CSV only"};
  pfq_constants k = base_constants();
  apply_overrides(k, c.consts);
  const auto qubits = parse_qubits(a.qubits);
  int role = PFQ_ROLE_CF1;
  if (a.role == "cf2" || a.role == "CF2") {
    role = PFQ_ROLE_CF2;
  } else if (a.role != "cf1" && a.role != "CF1") {
    throw Failure{kExitUsage, "--role must be cf1 or cf2"};
  }
  const double eps = a.epsilon >= 0.0 ? a.epsilon : k.epsilon_cf;
  char* body = nullptr;
  check(pfq_spectrum_csv(a.n, qubits.data(), qubits.size(), role, a.edge_width, eps, a.samples,
                         &body),
        "spectrum");
  Output{c}.data(take(body));
  return kExitOk;
}

Program load_program(const std::string& path) {
  pfq_program* raw = nullptr;
  check(pfq_program_from_json(read_file(path).c_str(), &raw), path);
  return Program(raw);
}

struct VerifyArgs {
  std::string program;
  std::string netlist;
  double tolerance = 1e-10;
};

int cmd_verify(const VerifyArgs& a, const Common& c) {
  pfq_constants k = base_constants();
  apply_overrides(k, c.consts);
  Program program = load_program(a.program);
  Circuit realized;
  if (!a.netlist.empty()) {
    const std::string text = read_file(a.netlist);
    pfq_circuit* raw = nullptr;
    check(pfq_circuit_parse(text.data(), text.size(), &raw), a.netlist);
    realized.reset(raw);
  } else {
    pfq_circuit* raw = nullptr;
    check(pfq_program_compile(program.get(), k.eta_fs, k.epsilon_cf, &raw), "compile");
    realized.reset(raw);
  }
  pfq_verify_report rep{};
  check(pfq_program_verify(program.get(), realized.get(), a.tolerance, &rep), "verify");
  std::string report = "max_deviation " + real(rep.max_deviation) + "\nstray " + real(rep.stray) +
                       "\ntolerance " + real(rep.tolerance) + "\n" + (rep.pass ? "PASS" : "FAIL") +
                       "\n";
  if (!c.out.empty()) Output{c}.data(report);
  std::cout << report;
  return rep.pass ? kExitOk : kExitFail;
}

struct CompileArgs {
  std::string program;
  std::string builtin;
  int n = 1;
  int qubit = 1;
  int control = 1;
  int target = 2;
  int bit = 0;
  double theta = 0.0;
  double phi = 0.0;
  int bb1 = 0;
  int bb2 = 0;
};

int cmd_compile(const CompileArgs& a, const Common& c) {
  pfq_constants k = base_constants();
  apply_overrides(k, c.consts);
  const double eta = k.eta_fs;
  const double eps = k.epsilon_cf;
  pfq_circuit* raw = nullptr;
  if (!a.program.empty() && !a.builtin.empty())
    throw Failure{kExitUsage, "give either a program file or --builtin, not both"};
  if (!a.program.empty()) {
    Program program = load_program(a.program);
    check(pfq_program_compile(program.get(), eta, eps, &raw), "compile");
  } else if (a.builtin == "fhg") {
    check(pfq_build_fhg(a.n, a.qubit, eta, eps, &raw), "fhg");
  } else if (a.builtin == "fqpg") {
    check(pfq_build_fqpg(a.n, a.qubit, eta, eps, &raw), "fqpg");
  } else if (a.builtin == "cz") {
    check(pfq_build_cz(a.n, a.control, a.target, eta, eps, &raw), "cz");
  } else if (a.builtin == "cnot") {
    check(pfq_build_cnot(a.n, a.control, a.target, eta, eps, &raw), "cnot");
  } else if (a.builtin == "bbphase") {
    check(pfq_build_bb_phase(a.n, a.qubit, a.bit, eta, eps, &raw), "bbphase");
  } else if (a.builtin == "experimental-fhg") {
    check(pfq_build_experimental_fhg(a.theta, eta, &raw), "experimental-fhg");
  } else if (a.builtin == "experimental-fqpg") {
    check(pfq_build_experimental_fqpg(a.phi, eta, &raw), "experimental-fqpg");
  } else if (a.builtin == "dj") {
    check(pfq_build_dj(a.bb1, a.bb2, eta, &raw), "dj");
  } else if (a.builtin.empty()) {
    throw Failure{kExitUsage, "compile needs a program file or --builtin"};
  } else {
    throw Failure{kExitUsage, "unknown builtin '" + a.builtin + "'"};
  }
  Circuit circuit(raw);
  char* text = nullptr;
  check(pfq_circuit_serialize(circuit.get(), &text));
  Output{c}.data(take(text));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-qubit optics simulator"};
  app.require_subcommand(1);
  Common common;

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "run a netlist and record the detector output");
  run_cmd->add_option("netlist", run.netlist, ".pfq netlist")->required();
  run_cmd->add_option("--state", run.state_file, "input state JSON (overrides --k/--m/--path/--pol)");
  run_cmd->add_option("--k", run.k, "input coarse frequency index");
  run_cmd->add_option("--m", run.m, "input detuning index");
  run_cmd->add_option("--path", run.path, "input path");
  run_cmd->add_option("--pol", run.pol, "input polarization, H or V");
  run_cmd->add_option("--detector", run.detector, "detector path for the time trace");
  run_cmd->add_option("--fringe", run.fringe, "record a fringe between two paths instead")
      ->expected(2)
      ->delimiter(',');
  run_cmd->add_option("--counts", run.counts, "mean photon counts per unit intensity");
  run_cmd->add_option("--periods", run.periods, "beat periods in the trace");
  run_cmd->add_option("--per-period", run.per_period, "samples per beat period");
  run_cmd->add_option("--state-out", run.state_out, "write the output state as JSON");
  add_common(run_cmd, common);

  SweepArgs sweep;
  auto add_sweep = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--steps", sweep.steps, "number of sweep points (stop excluded)");
    cmd->add_option("--start", sweep.start, "first setting, radians");
    cmd->add_option("--stop", sweep.stop, "end of the sweep range, radians");
    cmd->add_option("--tolerance", sweep.tolerance, "PASS threshold");
    add_common(cmd, common);
    return cmd;
  };
  auto* theta_cmd = add_sweep("sweep-theta", "beat amplitude of the Hadamard emulation versus theta");
  auto* phi_cmd = add_sweep("sweep-phi", "beat amplitude and phase of the phase-gate emulation versus phi");

  int bb1 = 0;
  int bb2 = 0;
  auto* dj_cmd = app.add_subcommand("dj", "one-qubit Deutsch-Jozsa with two black boxes");
  dj_cmd->add_option("bb1", bb1, "first black box, 0 or 1")->required()->check(CLI::Range(0, 1));
  dj_cmd->add_option("bb2", bb2, "second black box, 0 or 1")->required()->check(CLI::Range(0, 1));
  add_common(dj_cmd, common);

  SpectrumArgs spec;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "comb-filter reflectance spectrum");
  spectrum_cmd->add_option("--n", spec.n, "qubit count");
  spectrum_cmd->add_option("--qubit", spec.qubits, "qubit, or q1&q2 for a conjunction");
  spectrum_cmd->add_option("--role", spec.role, "cf1 or cf2");
  spectrum_cmd->add_option("--edge-width", spec.edge_width, "band edge width, grid units");
  spectrum_cmd->add_option("--epsilon", spec.epsilon, "crosstalk floor (default: constants)");
  spectrum_cmd->add_option("--samples", spec.samples, "sample count (default: 64 per band)");
  add_common(spectrum_cmd, common);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "check a gate program against the dense oracle");
  verify_cmd->add_option("program", verify.program, "gate program JSON")->required();
  verify_cmd->add_option("--netlist", verify.netlist, "verify this netlist instead of the compiled one");
  verify_cmd->add_option("--tolerance", verify.tolerance, "PASS threshold");
  add_common(verify_cmd, common);

  CompileArgs compile;
  auto* compile_cmd = app.add_subcommand("compile", "emit the netlist of a program or builtin circuit");
  compile_cmd->add_option("program", compile.program, "gate program JSON");
  compile_cmd->add_option("--builtin", compile.builtin,
                          "fhg|fqpg|cz|cnot|bbphase|experimental-fhg|experimental-fqpg|dj");
  compile_cmd->add_option("--n", compile.n, "qubit count");
  compile_cmd->add_option("--qubit", compile.qubit, "qubit for fhg, fqpg, bbphase");
  compile_cmd->add_option("--control", compile.control, "control qubit");
  compile_cmd->add_option("--target", compile.target, "target qubit");
  compile_cmd->add_option("--bit", compile.bit, "black-box bit for bbphase");
  compile_cmd->add_option("--theta", compile.theta, "theta for experimental-fhg");
  compile_cmd->add_option("--phi", compile.phi, "phi for experimental-fqpg");
  compile_cmd->add_option("--bb1", compile.bb1, "first black box for dj");
  compile_cmd->add_option("--bb2", compile.bb2, "second black box for dj");
  add_common(compile_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run, common);
    if (*theta_cmd) return cmd_sweep(PFQ_SWEEP_THETA, sweep, common);
    if (*phi_cmd) return cmd_sweep(PFQ_SWEEP_PHI, sweep, common);
    if (*dj_cmd) return cmd_dj(bb1, bb2, common);
    if (*spectrum_cmd) return cmd_spectrum(spec, common);
    if (*verify_cmd) return cmd_verify(verify, common);
    if (*compile_cmd) return cmd_compile(compile, common);
  } catch (const Failure& f) {
    std::cerr << "pfq: " << f.message << "\n";
    return f.exit_code;
  }
  return kExitUsage;
}
