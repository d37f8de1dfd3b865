#pragma once

// Single-photon states over (frequency, path, polarization) modes.
//
// Frequencies live on an integer lattice: coarse index k in units of the grid
// spacing and fine index m in units of the heterodyne detuning. The base
// frequency stays symbolic; detection only ever sees differences.

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pfq {

using Amplitude = std::complex<double>;
using PathId = int;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class Polarization : std::uint8_t { kH = 0, kV = 1 };

char to_char(Polarization p);

struct PhysicalConstants {
  double delta_omega = 2.0 * kPi * 80e6;  // rad/s, grid spacing stand-in
  double delta = 2.0 * kPi * 1e6;         // rad/s, heterodyne detuning
  double eta_fs = 0.85;                   // shifter conversion efficiency
  double epsilon_cf = 0.0;                // comb-filter crosstalk power

  static PhysicalConstants defaults() { return {}; }
  // Lossless shifters and crosstalk-free filters.
  static PhysicalConstants ideal();

  // Accepts "delta_omega", "delta", "eta", "epsilon" and the long forms
  // "delta_omega_num", "delta_num", "eta_fs", "epsilon_cf".
  void set(std::string_view key, double value);

  // Throws kConfiguration on out-of-domain values.
  void validate() const;
  // Soft problems, e.g. a detuning that is not small against the grid.
  std::vector<std::string> warnings() const;
};

struct Frequency {
  std::int64_t k = 0;  // coarse index, units of delta_omega
  std::int64_t m = 0;  // fine index, units of delta

  auto operator<=>(const Frequency&) const = default;

  // Offset from the symbolic base frequency, rad/s.
  double offset(const PhysicalConstants& c) const {
    return static_cast<double>(k) * c.delta_omega + static_cast<double>(m) * c.delta;
  }
};

struct Mode {
  Frequency freq;
  PathId path = 1;
  Polarization pol = Polarization::kH;

  auto operator<=>(const Mode&) const = default;
};

class PhotonState {
 public:
  using AmplitudeMap = std::map<Mode, Amplitude>;

  PhotonState() = default;

  static PhotonState basis(const Mode& mode);
  // Duplicate modes are summed. With normalize set the result has unit norm;
  // an all-zero input then throws kDegenerateState.
  static PhotonState superpose(std::span<const std::pair<Mode, Amplitude>> terms,
                               bool normalize = false);

  const AmplitudeMap& amplitudes() const noexcept { return amps_; }
  Amplitude amplitude(const Mode& mode) const;
  double loss() const noexcept { return loss_; }
  double norm_squared() const;
  double norm() const;
  bool empty() const noexcept { return amps_.empty(); }
  std::set<PathId> paths() const;

  // Amplitudes with |a|^2 below the threshold are moved into loss after every
  // component. Zero (the default) disables pruning.
  double prune_threshold() const noexcept { return prune_threshold_; }
  PhotonState with_prune_threshold(double threshold) const;

  // Building blocks for transfers; public so that components can assemble
  // new states, not meant for callers that treat states as values.
  void accumulate(const Mode& mode, Amplitude a);
  void add_loss(double power) { loss_ += power; }
  void set_loss(double loss) { loss_ = loss; }
  void prune();

  // Same modes, amplitudes and loss (exact). Use global_phase_equal for
  // physics comparisons.
  bool operator==(const PhotonState& other) const = default;

 private:
  AmplitudeMap amps_;
  double loss_ = 0.0;
  double prune_threshold_ = 0.0;
};

// Qubit 1 is the most significant bit: "010" -> 2.
std::int64_t encode_bits(std::string_view bits);
std::string decode_bits(std::int64_t k, int n);
// Frequency weight 2^(n - qubit) of a qubit.
std::int64_t qubit_weight(int n, int qubit);
bool qubit_bit(std::int64_t k, int n, int qubit);

// <a|b>, antilinear in the first argument.
Amplitude inner(const PhotonState& a, const PhotonState& b);
// True iff a = e^{i g} b for some real g, within tol on the normalized
// inner-product modulus and on the norms.
bool global_phase_equal(const PhotonState& a, const PhotonState& b, double tol = 1e-10);

// {"modes": [{"k","m","path","pol","re","im"}...], "loss": x}
std::string state_to_json(const PhotonState& s);
PhotonState state_from_json(std::string_view text);

}  // namespace pfq
