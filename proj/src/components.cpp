#include "pfq/components.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "pfq/error.hpp"

namespace pfq {
namespace {

constexpr Amplitude kI{0.0, 1.0};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_distinct(PathId a, PathId b, const char* what) {
  if (a == b)
    throw Error(ErrorCode::kCircuit,
                std::string(what) + " ports must differ (both are path " + std::to_string(a) + ")");
}

// Amplitudes of one (frequency, polarization) class on the two ports.
struct PortPair {
  Amplitude a{};
  Amplitude b{};
};

using ClassKey = std::pair<Frequency, Polarization>;

// Splits s into the two-port classes and a copy of everything else.
std::pair<std::map<ClassKey, PortPair>, PhotonState> split_ports(const PhotonState& s, PathId a,
                                                                 PathId b) {
  std::map<ClassKey, PortPair> classes;
  PhotonState rest;
  rest.set_loss(s.loss());
  rest = rest.with_prune_threshold(s.prune_threshold());
  for (const auto& [mode, amp] : s.amplitudes()) {
    if (mode.path == a) {
      classes[{mode.freq, mode.pol}].a += amp;
    } else if (mode.path == b) {
      classes[{mode.freq, mode.pol}].b += amp;
    } else {
      rest.accumulate(mode, amp);
    }
  }
  return {std::move(classes), std::move(rest)};
}

void emit(PhotonState& out, const ClassKey& key, PathId a, PathId b, const PortPair& p) {
  out.accumulate(Mode{key.first, a, key.second}, p.a);
  out.accumulate(Mode{key.first, b, key.second}, p.b);
}

// Applies f to every mode on `path`, leaving other modes untouched.
template <class F>
PhotonState map_path(const PhotonState& s, PathId path, F&& f) {
  PhotonState out;
  out.set_loss(s.loss());
  out = out.with_prune_threshold(s.prune_threshold());
  for (const auto& [mode, amp] : s.amplitudes()) {
    if (mode.path == path) {
      f(out, mode, amp);
    } else {
      out.accumulate(mode, amp);
    }
  }
  return out;
}

}  // namespace

std::vector<PathId> referenced_paths(const Component& c) {
  return std::visit(
      Overloaded{
          [](const Npbs& x) { return std::vector<PathId>{x.a, x.b}; },
          [](const Pbs& x) { return std::vector<PathId>{x.a, x.b}; },
          [](const FrequencyShifter& x) {
            std::vector<PathId> v{x.path};
            if (x.leak_path) v.push_back(*x.leak_path);
            return v;
          },
          [](const PhaseShifter& x) { return std::vector<PathId>{x.path}; },
          [](const HalfWavePlate& x) { return std::vector<PathId>{x.path}; },
          [](const CombFilter& x) { return std::vector<PathId>{x.a, x.b}; },
          [](const BlackBox& x) { return std::vector<PathId>{x.path}; },
          [](const Mirror& x) { return std::vector<PathId>{x.a, x.b}; },
      },
      c);
}

void validate(const Component& c) {
  std::visit(Overloaded{
                 [](const Npbs& x) { require_distinct(x.a, x.b, "npbs"); },
                 [](const Pbs& x) { require_distinct(x.a, x.b, "pbs"); },
                 [](const FrequencyShifter& x) {
                   if (!(x.eta > 0.0 && x.eta <= 1.0))
                     throw Error(ErrorCode::kConfiguration, "fs eta must lie in (0, 1]");
                   if (x.leak_path) require_distinct(x.path, *x.leak_path, "fs leak");
                 },
                 [](const PhaseShifter& x) {
                   if (!std::isfinite(x.theta))
                     throw Error(ErrorCode::kConfiguration, "ps angle must be finite");
                 },
                 [](const HalfWavePlate&) {},
                 [](const CombFilter& x) {
                   require_distinct(x.a, x.b, "cf");
                   if (!(x.epsilon >= 0.0 && x.epsilon < 1.0))
                     throw Error(ErrorCode::kConfiguration, "cf epsilon must lie in [0, 1)");
                 },
                 [](const BlackBox& x) {
                   if (x.bit != 0 && x.bit != 1)
                     throw Error(ErrorCode::kConfiguration, "bb bit must be 0 or 1");
                 },
                 [](const Mirror& x) { require_distinct(x.a, x.b, "mirror"); },
             },
             c);
}

PhotonState npbs_transfer(const PhotonState& s, PathId a, PathId b) {
  require_distinct(a, b, "npbs");
  const double r = 1.0 / std::sqrt(2.0);
  auto [classes, out] = split_ports(s, a, b);
  for (const auto& [key, p] : classes) {
    emit(out, key, a, b, {r * (p.a + kI * p.b), r * (kI * p.a + p.b)});
  }
  out.prune();
  return out;
}

PhotonState pbs_transfer(const PhotonState& s, PathId a, PathId b) {
  require_distinct(a, b, "pbs");
  auto [classes, out] = split_ports(s, a, b);
  for (const auto& [key, p] : classes) {
    if (key.second == Polarization::kH) {
      emit(out, key, a, b, p);
    } else {
      emit(out, key, a, b, {kI * p.b, kI * p.a});
    }
  }
  out.prune();
  return out;
}

PhotonState fs_transfer(const PhotonState& s, PathId path, std::int64_t dk, std::int64_t dm,
                        double eta, std::optional<PathId> leak_path) {
  validate(FrequencyShifter{path, dk, dm, eta, leak_path});
  const double t = std::sqrt(eta);
  const double r = std::sqrt(1.0 - eta);
  PhotonState out = map_path(s, path, [&](PhotonState& o, const Mode& mode, Amplitude amp) {
    Mode shifted = mode;
    if (__builtin_add_overflow(mode.freq.k, dk, &shifted.freq.k) ||
        __builtin_add_overflow(mode.freq.m, dm, &shifted.freq.m))
      throw Error(ErrorCode::kRange, "frequency index overflows 64 bits");
    o.accumulate(shifted, t * amp);
    if (eta < 1.0) {
      if (leak_path) {
        Mode leaked = mode;
        leaked.path = *leak_path;
        o.accumulate(leaked, r * amp);
      } else {
        o.add_loss((1.0 - eta) * std::norm(amp));
      }
    }
  });
  out.prune();
  return out;
}

PhotonState ps_transfer(const PhotonState& s, PathId path, double theta) {
  const Amplitude phase = std::polar(1.0, theta);
  PhotonState out = map_path(s, path, [&](PhotonState& o, const Mode& mode, Amplitude amp) {
    o.accumulate(mode, phase * amp);
  });
  out.prune();
  return out;
}

PhotonState hwp_transfer(const PhotonState& s, PathId path) {
  PhotonState out = map_path(s, path, [](PhotonState& o, const Mode& mode, Amplitude amp) {
    Mode flipped = mode;
    flipped.pol = mode.pol == Polarization::kH ? Polarization::kV : Polarization::kH;
    o.accumulate(flipped, amp);
  });
  out.prune();
  return out;
}

PhotonState cf_transfer(const PhotonState& s, PathId a, PathId b, const BandMap& bands,
                        double epsilon) {
  validate(CombFilter{a, b, bands, epsilon});
  const double c = std::sqrt(1.0 - epsilon);
  const double x = std::sqrt(epsilon);
  auto [classes, out] = split_ports(s, a, b);
  for (const auto& [key, p] : classes) {
    PortPair routed = p;
    // Off the grid the outermost band continues, as in the spectrum.
    const std::int64_t k = std::clamp<std::int64_t>(key.first.k, 0, bands.grid_size() - 1);
    if (bands.assignment(k) == Band::kReflect) routed = {p.b, p.a};
    emit(out, key, a, b, {c * routed.a + kI * x * routed.b, kI * x * routed.a + c * routed.b});
  }
  out.prune();
  return out;
}

PhotonState bb_transfer(const PhotonState& s, PathId path, int bit) {
  if (bit != 0 && bit != 1) throw Error(ErrorCode::kConfiguration, "bb bit must be 0 or 1");
  // e^{i pi} is exactly -1; avoid the 1.2e-16 imaginary residue of polar().
  const double sign = bit == 1 ? -1.0 : 1.0;
  PhotonState out = map_path(s, path, [&](PhotonState& o, const Mode& mode, Amplitude amp) {
    o.accumulate(mode, sign * amp);
  });
  out.prune();
  return out;
}

PhotonState mirror_transfer(const PhotonState& s, PathId a, PathId b) {
  require_distinct(a, b, "mirror");
  auto [classes, out] = split_ports(s, a, b);
  for (const auto& [key, p] : classes) emit(out, key, a, b, {p.b, p.a});
  out.prune();
  return out;
}

PhotonState apply(const Component& c, const PhotonState& s) {
  return std::visit(
      Overloaded{
          [&](const Npbs& x) { return npbs_transfer(s, x.a, x.b); },
          [&](const Pbs& x) { return pbs_transfer(s, x.a, x.b); },
          [&](const FrequencyShifter& x) {
            return fs_transfer(s, x.path, x.dk, x.dm, x.eta, x.leak_path);
          },
          [&](const PhaseShifter& x) { return ps_transfer(s, x.path, x.theta); },
          [&](const HalfWavePlate& x) { return hwp_transfer(s, x.path); },
          [&](const CombFilter& x) { return cf_transfer(s, x.a, x.b, x.bands, x.epsilon); },
          [&](const BlackBox& x) { return bb_transfer(s, x.path, x.bit); },
          [&](const Mirror& x) { return mirror_transfer(s, x.a, x.b); },
      },
      c);
}

void Circuit::declare_path(PathId p) {
  if (!paths_.insert(p).second)
    throw Error(ErrorCode::kDuplicatePath, "path " + std::to_string(p) + " declared twice");
}

void Circuit::add(Component c) {
  validate(c);
  for (PathId p : referenced_paths(c)) {
    if (!paths_.contains(p))
      throw Error(ErrorCode::kUndeclaredPath, "path " + std::to_string(p) + " is not declared");
  }
  stages_.push_back(std::move(c));
}

void Circuit::append(const Circuit& other) {
  paths_.insert(other.paths_.begin(), other.paths_.end());
  stages_.insert(stages_.end(), other.stages_.begin(), other.stages_.end());
  qubits_ = std::max(qubits_, other.qubits_);
}

PhysicalConstants Circuit::resolve_constants(PhysicalConstants base) const {
  for (const auto& [key, value] : constants_) base.set(key, value);
  return base;
}

PhotonState run_circuit(const Circuit& circuit, const PhotonState& input) {
  if (circuit.paths().empty() && circuit.stages().empty()) return input;
  for (PathId p : input.paths()) {
    if (!circuit.paths().contains(p))
      throw Error(ErrorCode::kCircuit,
                  "input occupies path " + std::to_string(p) + " which the circuit does not declare");
  }
  PhotonState s = input;
  const auto& stages = circuit.stages();
  for (std::size_t i = 0; i < stages.size(); ++i) {
    try {
      s = pfq::apply(stages[i], s);
    } catch (const Error& e) {
      throw Error(e.code(), "stage " + std::to_string(i) + ": " + e.what());
    }
  }
  return s;
}

int shifter_count(const Circuit& circuit) {
  int n = 0;
  for (const auto& c : circuit.stages()) n += std::holds_alternative<FrequencyShifter>(c) ? 1 : 0;
  return n;
}

}  // namespace pfq
