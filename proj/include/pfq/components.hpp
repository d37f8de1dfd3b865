#pragma once

// Optical elements as sparse mode-to-mode transfers, and in-line circuits.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "pfq/bandmap.hpp"
#include "pfq/state.hpp"

namespace pfq {

// 50/50 splitter, symmetric convention (a, b) -> (a + i b, i a + b) / sqrt 2.
struct Npbs {
  PathId a = 1, b = 2;
  bool operator==(const Npbs&) const = default;
};

// H transmits; V swaps a <-> b and picks up a factor i.
struct Pbs {
  PathId a = 1, b = 2;
  bool operator==(const Pbs&) const = default;
};

// Shifts every mode on `path` by (dk, dm). A fraction 1 - eta of the power is
// lost, or sent unshifted onto `leak_path` when one is given.
struct FrequencyShifter {
  PathId path = 1;
  std::int64_t dk = 0;
  std::int64_t dm = 0;
  double eta = 1.0;
  std::optional<PathId> leak_path;
  bool operator==(const FrequencyShifter&) const = default;
};

struct PhaseShifter {
  PathId path = 1;
  double theta = 0.0;  // radians
  bool operator==(const PhaseShifter&) const = default;
};

// H <-> V on one path.
struct HalfWavePlate {
  PathId path = 1;
  bool operator==(const HalfWavePlate&) const = default;
};

// Per frequency class: REFLECT swaps the ports, PASS keeps them, then the
// crosstalk unitary (sqrt(1-e), i sqrt e; i sqrt e, sqrt(1-e)) mixes them.
// Frequencies below or above the 2^n grid see the outermost band.
struct CombFilter {
  PathId a = 1, b = 2;
  BandMap bands = BandMap::make(1, 1, CfRole::kCf1);
  double epsilon = 0.0;
  bool operator==(const CombFilter&) const = default;
};

// Preprogrammed delay: bit 1 multiplies the path by e^{i pi}.
struct BlackBox {
  PathId path = 1;
  int bit = 0;
  bool operator==(const BlackBox&) const = default;
};

// Fold mirrors that exchange two beam lines.
struct Mirror {
  PathId a = 1, b = 2;
  bool operator==(const Mirror&) const = default;
};

using Component = std::variant<Npbs, Pbs, FrequencyShifter, PhaseShifter, HalfWavePlate,
                               CombFilter, BlackBox, Mirror>;

std::vector<PathId> referenced_paths(const Component& c);

// Throws kCircuit (identical ports) or kConfiguration (parameter domain).
void validate(const Component& c);

PhotonState npbs_transfer(const PhotonState& s, PathId a, PathId b);
PhotonState pbs_transfer(const PhotonState& s, PathId a, PathId b);
PhotonState fs_transfer(const PhotonState& s, PathId path, std::int64_t dk, std::int64_t dm,
                        double eta, std::optional<PathId> leak_path = std::nullopt);
PhotonState ps_transfer(const PhotonState& s, PathId path, double theta);
PhotonState hwp_transfer(const PhotonState& s, PathId path);
PhotonState cf_transfer(const PhotonState& s, PathId a, PathId b, const BandMap& bands,
                        double epsilon);
PhotonState bb_transfer(const PhotonState& s, PathId path, int bit);
PhotonState mirror_transfer(const PhotonState& s, PathId a, PathId b);

PhotonState apply(const Component& c, const PhotonState& s);

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::set<PathId> paths) : paths_(std::move(paths)) {}

  const std::string& name() const noexcept { return name_; }
  const std::string& description() const noexcept { return description_; }
  int qubits() const noexcept { return qubits_; }  // 0 when unspecified
  const std::set<PathId>& paths() const noexcept { return paths_; }
  const std::vector<Component>& stages() const noexcept { return stages_; }
  // Header constants recorded with the circuit (e.g. "delta").
  const std::map<std::string, double>& constants() const noexcept { return constants_; }

  void set_name(std::string name) { name_ = std::move(name); }
  void set_description(std::string text) { description_ = std::move(text); }
  void set_qubits(int n) { qubits_ = n; }
  void set_constant(const std::string& key, double value) { constants_[key] = value; }

  // Throws kDuplicatePath when already declared.
  void declare_path(PathId p);
  // Validates the component and that every path it references is declared.
  void add(Component c);
  // Appends another circuit's stages, declaring its paths as needed.
  void append(const Circuit& other);

  // Header constants applied on top of a base record.
  PhysicalConstants resolve_constants(PhysicalConstants base) const;

  bool operator==(const Circuit&) const = default;

 private:
  std::string name_;
  std::string description_;
  int qubits_ = 0;
  std::set<PathId> paths_;
  std::vector<Component> stages_;
  std::map<std::string, double> constants_;
};

// Folds apply() over the stages. Errors carry the 0-based stage index in
// their message; an input on an undeclared path is a kCircuit error. A
// circuit with no paths and no stages passes any input through.
PhotonState run_circuit(const Circuit& circuit, const PhotonState& input);

// Number of frequency shifters the circuit contains.
int shifter_count(const Circuit& circuit);

}  // namespace pfq
