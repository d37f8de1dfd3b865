#include "pfq/pfq.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "pfq/bandmap.hpp"
#include "pfq/error.hpp"
#include "pfq/experiments.hpp"
#include "pfq/netlist.hpp"
#include "pfq/program.hpp"

struct pfq_state {
  pfq::PhotonState value;
};
struct pfq_circuit {
  pfq::Circuit value;
};
struct pfq_program {
  pfq::GateProgram value;
};
struct pfq_record {
  pfq::DetectionRecord value;
};
struct pfq_sweep {
  pfq::SweepResult value;
};

namespace {

thread_local std::string g_message;
thread_local int g_line = 0;
thread_local int g_column = 0;

void clear_error() {
  g_message.clear();
  g_line = 0;
  g_column = 0;
}

pfq_status set_error(pfq_status status, std::string message, int line = 0, int column = 0) {
  g_message = std::move(message);
  g_line = line;
  g_column = column;
  return status;
}

pfq_status from_code(pfq::ErrorCode code) { return static_cast<pfq_status>(static_cast<int>(code) + 1); }

template <class F>
pfq_status guarded(F&& body) {
  clear_error();
  try {
    body();
    return PFQ_OK;
  } catch (const pfq::Error& e) {
    const auto loc = e.location();
    return set_error(from_code(e.code()), e.what(), loc ? loc->line : 0, loc ? loc->column : 0);
  } catch (const std::bad_alloc&) {
    return set_error(PFQ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(PFQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(PFQ_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw pfq::Error(pfq::ErrorCode::kInvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

pfq::PhysicalConstants to_cpp(const pfq_constants& c) {
  pfq::PhysicalConstants k;
  k.delta_omega = c.delta_omega;
  k.delta = c.delta;
  k.eta_fs = c.eta_fs;
  k.epsilon_cf = c.epsilon_cf;
  return k;
}

pfq_constants to_c(const pfq::PhysicalConstants& k) {
  return pfq_constants{k.delta_omega, k.delta, k.eta_fs, k.epsilon_cf};
}

pfq::Polarization to_pol(int pol) {
  if (pol != PFQ_POL_H && pol != PFQ_POL_V)
    throw pfq::Error(pfq::ErrorCode::kInvalidArgument, "polarization must be PFQ_POL_H or PFQ_POL_V");
  return pol == PFQ_POL_H ? pfq::Polarization::kH : pfq::Polarization::kV;
}

int to_class(const std::optional<pfq::FringeClass>& c) {
  if (!c) return PFQ_CLASS_NONE;
  switch (*c) {
    case pfq::FringeClass::kFringe: return PFQ_CLASS_FRINGE;
    case pfq::FringeClass::kAntiFringe: return PFQ_CLASS_ANTIFRINGE;
    case pfq::FringeClass::kFlat: return PFQ_CLASS_FLAT;
  }
  return PFQ_CLASS_NONE;
}

template <class Build>
pfq_status make_circuit(pfq_circuit** out, Build build) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(out != nullptr, "output handle is null");
    *out = new pfq_circuit{build()};
  });
}

}  // namespace

extern "C" {

const char* pfq_status_name(pfq_status status) {
  if (status == PFQ_OK) return "ok";
  if (status == PFQ_ERR_INTERNAL) return "internal";
  const int i = static_cast<int>(status) - 1;
  if (i >= 0 && i <= static_cast<int>(pfq::ErrorCode::kIo))
    return pfq::to_string(static_cast<pfq::ErrorCode>(i));
  return "unknown";
}

const char* pfq_last_error(void) { return g_message.c_str(); }
int pfq_last_error_line(void) { return g_line; }
int pfq_last_error_column(void) { return g_column; }
void pfq_free_string(char* s) { std::free(s); }

pfq_constants pfq_constants_default(void) { return to_c(pfq::PhysicalConstants::defaults()); }
pfq_constants pfq_constants_ideal(void) { return to_c(pfq::PhysicalConstants::ideal()); }

pfq_status pfq_constants_set(pfq_constants* c, const char* key, double value) {
  return guarded([&] {
    require(c && key, "null argument");
    auto k = to_cpp(*c);
    k.set(key, value);
    *c = to_c(k);
  });
}

pfq_status pfq_constants_validate(const pfq_constants* c) {
  return guarded([&] {
    require(c != nullptr, "null constants");
    to_cpp(*c).validate();
  });
}

pfq_status pfq_state_basis(int64_t k, int64_t m, int path, int pol, pfq_state** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(out != nullptr, "output handle is null");
    *out = new pfq_state{pfq::PhotonState::basis(pfq::Mode{{k, m}, path, to_pol(pol)})};
  });
}

pfq_status pfq_state_from_json(const char* text, pfq_state** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(text && out, "null argument");
    *out = new pfq_state{pfq::state_from_json(text)};
  });
}

pfq_status pfq_state_to_json(const pfq_state* s, char** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(s && out, "null argument");
    *out = copy_string(pfq::state_to_json(s->value));
  });
}

pfq_status pfq_state_norm_squared(const pfq_state* s, double* out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = s->value.norm_squared();
  });
}

pfq_status pfq_state_loss(const pfq_state* s, double* out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = s->value.loss();
  });
}

size_t pfq_state_mode_count(const pfq_state* s) { return s ? s->value.amplitudes().size() : 0; }

pfq_status pfq_state_amplitude(const pfq_state* s, int64_t k, int64_t m, int path, int pol,
                               double* re, double* im) {
  return guarded([&] {
    require(s && re && im, "null argument");
    const auto a = s->value.amplitude(pfq::Mode{{k, m}, path, to_pol(pol)});
    *re = a.real();
    *im = a.imag();
  });
}

void pfq_state_free(pfq_state* s) { delete s; }

pfq_status pfq_circuit_parse(const char* text, size_t length, pfq_circuit** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(out != nullptr, "output handle is null");
    require(text != nullptr || length == 0, "null text");
    *out = new pfq_circuit{pfq::parse_netlist(std::string_view(text ? text : "", length))};
  });
}

pfq_status pfq_circuit_serialize(const pfq_circuit* c, char** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(c && out, "null argument");
    *out = copy_string(pfq::serialize_netlist(c->value));
  });
}

pfq_status pfq_circuit_run(const pfq_circuit* c, const pfq_state* in, pfq_state** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(c && in && out, "null argument");
    *out = new pfq_state{pfq::run_circuit(c->value, in->value)};
  });
}

pfq_status pfq_circuit_resolve_constants(const pfq_circuit* c, pfq_constants* constants) {
  return guarded([&] {
    require(c && constants, "null argument");
    *constants = to_c(c->value.resolve_constants(to_cpp(*constants)));
  });
}

size_t pfq_circuit_stage_count(const pfq_circuit* c) { return c ? c->value.stages().size() : 0; }
int pfq_circuit_qubits(const pfq_circuit* c) { return c ? c->value.qubits() : 0; }
int pfq_circuit_shifter_count(const pfq_circuit* c) { return c ? pfq::shifter_count(c->value) : 0; }

int pfq_circuit_equal(const pfq_circuit* a, const pfq_circuit* b) {
  return a && b && a->value == b->value ? 1 : 0;
}

void pfq_circuit_free(pfq_circuit* c) { delete c; }

pfq_status pfq_build_fhg(int n, int target, double eta, double epsilon, pfq_circuit** out) {
  if (out) *out = nullptr;
  return make_circuit(out, [&] { return pfq::build_fhg(n, target, {eta, epsilon}); });
}

pfq_status pfq_build_fqpg(int n, int qubit, double eta, double epsilon, pfq_circuit** out) {
  if (out) *out = nullptr;
  return make_circuit(out, [&] { return pfq::build_fqpg(n, qubit, {eta, epsilon}); });
}

pfq_status pfq_build_cz(int n, int control, int target, double eta, double epsilon,
                        pfq_circuit** out) {
  if (out) *out = nullptr;
  return make_circuit(out, [&] { return pfq::build_cz(n, control, target, {eta, epsilon}); });
}

pfq_status pfq_build_cnot(int n, int control, int target, double eta, double epsilon,
                          pfq_circuit** out) {
  if (out) *out = nullptr;
  return make_circuit(out, [&] { return pfq::build_cnot(n, control, target, {eta, epsilon}); });
}

pfq_status pfq_build_bb_phase(int n, int qubit, int bit, double eta, double epsilon,
                              pfq_circuit** out) {
  if (out) *out = nullptr;
  return make_circuit(out, [&] { return pfq::build_bb_phase(n, qubit, bit, {eta, epsilon}); });
}

pfq_status pfq_build_experimental_fhg(double theta, double eta, pfq_circuit** out) {
  if (out) *out = nullptr;
  return make_circuit(out, [&] { return pfq::build_experimental_fhg(theta, eta); });
}

pfq_status pfq_build_experimental_fqpg(double phi, double eta, pfq_circuit** out) {
  if (out) *out = nullptr;
  return make_circuit(out, [&] { return pfq::build_experimental_fqpg(phi, eta); });
}

pfq_status pfq_build_dj(int bb1, int bb2, double eta, pfq_circuit** out) {
  if (out) *out = nullptr;
  return make_circuit(out, [&] { return pfq::build_dj_circuit(bb1, bb2, eta); });
}

pfq_status pfq_emulation_input(pfq_state** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(out != nullptr, "output handle is null");
    *out = new pfq_state{pfq::emulation_input()};
  });
}

pfq_status pfq_time_trace(const pfq_state* s, int path, const pfq_constants* constants,
                          int periods, int per_period, pfq_record** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(s && constants && out, "null argument");
    const auto k = to_cpp(*constants);
    *out = new pfq_record{
        pfq::time_trace(s->value, path, k, pfq::TimeGrid::beat_periods(k, periods, per_period))};
  });
}

pfq_status pfq_fringe(const pfq_state* s, int path_a, int path_b, pfq_record** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(s && out, "null argument");
    const auto grid = pfq::default_fringe_grid();
    *out = new pfq_record{pfq::fringe_pattern(s->value, path_a, path_b, pfq::kDefaultKappa, grid)};
  });
}

pfq_status pfq_record_summarize(const pfq_record* r, pfq_record_summary* out) {
  return guarded([&] {
    require(r && out, "null argument");
    const auto& v = r->value;
    out->kind = v.kind == pfq::RecordKind::kTimeTrace ? PFQ_RECORD_TIME_TRACE : PFQ_RECORD_FRINGE;
    out->classification = to_class(v.classification);
    out->dc = v.dc;
    out->beat_amplitude = v.beat_amplitude;
    out->beat_phase = v.beat_phase;
    out->quadrature_re = v.quadrature.real();
    out->quadrature_im = v.quadrature.imag();
    out->sample_count = v.samples.size();
  });
}

pfq_status pfq_record_sample(const pfq_record* r, size_t index, double* x, double* intensity) {
  return guarded([&] {
    require(r && x && intensity, "null argument");
    if (index >= r->value.samples.size())
      throw pfq::Error(pfq::ErrorCode::kRange, "sample index out of range");
    *x = r->value.samples[index].x;
    *intensity = r->value.samples[index].intensity;
  });
}

pfq_status pfq_record_poisson(const pfq_record* r, double mean_counts, uint64_t seed,
                              int64_t* counts) {
  return guarded([&] {
    require(r && counts, "null argument");
    const auto c = pfq::poisson_sample(r->value, mean_counts, seed);
    std::copy(c.begin(), c.end(), counts);
  });
}

pfq_status pfq_record_to_csv(const pfq_record* r, const int64_t* counts, size_t count,
                             char** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(r && out, "null argument");
    require(counts != nullptr || count == 0, "null counts");
    *out = copy_string(pfq::record_to_csv(r->value, std::span<const std::int64_t>(counts, count)));
  });
}

pfq_status pfq_record_to_json(const pfq_record* r, char** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(r && out, "null argument");
    *out = copy_string(pfq::record_to_json(r->value));
  });
}

void pfq_record_free(pfq_record* r) { delete r; }

pfq_status pfq_sweep_run(int variable, const pfq_constants* constants, double start, double stop,
                         int steps, pfq_sweep** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(constants && out, "null argument");
    require(variable == PFQ_SWEEP_THETA || variable == PFQ_SWEEP_PHI, "unknown sweep variable");
    const pfq::SweepSpec spec{start, stop, steps};
    const auto k = to_cpp(*constants);
    *out = new pfq_sweep{variable == PFQ_SWEEP_THETA ? pfq::sweep_theta(k, spec)
                                                     : pfq::sweep_phi(k, spec)};
  });
}

pfq_status pfq_sweep_summarize(const pfq_sweep* s, pfq_sweep_summary* out) {
  return guarded([&] {
    require(s && out, "null argument");
    const auto& v = s->value;
    out->variable = v.variable == pfq::SweepVariable::kTheta ? PFQ_SWEEP_THETA : PFQ_SWEEP_PHI;
    out->rows = v.rows.size();
    out->fit_a = v.fit.a;
    out->fit_b = v.fit.b;
    out->fit_c = v.fit.c;
    out->fit_max_residual = v.fit.max_residual;
    out->max_phase_error = v.max_phase_error;
    out->min_amplitude = v.min_amplitude;
    out->max_amplitude = v.max_amplitude;
  });
}

pfq_status pfq_sweep_row(const pfq_sweep* s, size_t index, double* setting, double* beat_amplitude,
                         double* beat_phase, double* dc) {
  return guarded([&] {
    require(s != nullptr, "null sweep");
    if (index >= s->value.rows.size())
      throw pfq::Error(pfq::ErrorCode::kRange, "row index out of range");
    const auto& r = s->value.rows[index];
    if (setting) *setting = r.setting;
    if (beat_amplitude) *beat_amplitude = r.beat_amplitude;
    if (beat_phase) *beat_phase = r.beat_phase;
    if (dc) *dc = r.dc;
  });
}

pfq_status pfq_sweep_to_csv(const pfq_sweep* s, char** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(s && out, "null argument");
    *out = copy_string(pfq::sweep_to_csv(s->value));
  });
}

pfq_status pfq_sweep_to_json(const pfq_sweep* s, char** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(s && out, "null argument");
    *out = copy_string(pfq::sweep_to_json(s->value));
  });
}

void pfq_sweep_free(pfq_sweep* s) { delete s; }

pfq_status pfq_dj(int bb1, int bb2, const pfq_constants* constants, int* classification,
                  pfq_record** pattern) {
  if (pattern) *pattern = nullptr;
  return guarded([&] {
    require(constants && classification, "null argument");
    auto r = pfq::run_dj(bb1, bb2, to_cpp(*constants));
    *classification = to_class(r.classification);
    if (pattern) *pattern = new pfq_record{std::move(r.pattern)};
  });
}

pfq_status pfq_spectrum_csv(int n, const int* qubits, size_t qubit_count, int role,
                            double edge_width, double epsilon, int samples, char** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(qubits && qubit_count > 0 && out, "null argument");
    require(role == PFQ_ROLE_CF1 || role == PFQ_ROLE_CF2, "role must be CF1 or CF2");
    const auto r = role == PFQ_ROLE_CF1 ? pfq::CfRole::kCf1 : pfq::CfRole::kCf2;
    const auto bands =
        pfq::BandMap::conjunction(n, std::vector<int>(qubits, qubits + qubit_count), r);
    const int count = samples > 0 ? samples : pfq::centred_sample_count(bands);
    const auto spectrum = pfq::reflectance_spectrum(bands, edge_width, epsilon, count);
    *out = copy_string(pfq::spectrum_to_csv(spectrum));
  });
}

pfq_status pfq_program_from_json(const char* text, pfq_program** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(text && out, "null argument");
    *out = new pfq_program{pfq::program_from_json(text)};
  });
}

pfq_status pfq_program_to_json(const pfq_program* p, char** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(p && out, "null argument");
    *out = copy_string(pfq::program_to_json(p->value));
  });
}

int pfq_program_qubits(const pfq_program* p) { return p ? p->value.n : 0; }

pfq_status pfq_program_compile(const pfq_program* p, double eta, double epsilon,
                               pfq_circuit** out) {
  if (out) *out = nullptr;
  return guarded([&] {
    require(p && out, "null argument");
    *out = new pfq_circuit{pfq::compile_program(p->value, {eta, epsilon})};
  });
}

pfq_status pfq_program_verify(const pfq_program* p, const pfq_circuit* realized, double tolerance,
                              pfq_verify_report* out) {
  return guarded([&] {
    require(p && out, "null argument");
    const auto r =
        pfq::verify_program(p->value, realized ? &realized->value : nullptr, tolerance);
    out->max_deviation = r.max_deviation;
    out->stray = r.stray;
    out->tolerance = r.tolerance;
    out->pass = r.pass ? 1 : 0;
  });
}

void pfq_program_free(pfq_program* p) { delete p; }

}  // extern "C"
