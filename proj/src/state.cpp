#include "pfq/state.hpp"

#include <cmath>

#include "json.hpp"
#include "pfq/error.hpp"

namespace pfq {

char to_char(Polarization p) { return p == Polarization::kH ? 'H' : 'V'; }

PhysicalConstants PhysicalConstants::ideal() {
  PhysicalConstants c;
  c.eta_fs = 1.0;
  c.epsilon_cf = 0.0;
  return c;
}

void PhysicalConstants::set(std::string_view key, double value) {
  if (key == "delta_omega" || key == "delta_omega_num") {
    delta_omega = value;
  } else if (key == "delta" || key == "delta_num") {
    delta = value;
  } else if (key == "eta" || key == "eta_fs") {
    eta_fs = value;
  } else if (key == "epsilon" || key == "epsilon_cf") {
    epsilon_cf = value;
  } else {
    throw Error(ErrorCode::kConfiguration, "unknown constant '" + std::string(key) + "'");
  }
}

void PhysicalConstants::validate() const {
  if (!(delta_omega > 0.0) || !std::isfinite(delta_omega))
    throw Error(ErrorCode::kConfiguration, "delta_omega must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw Error(ErrorCode::kConfiguration, "delta must be positive");
  if (!(eta_fs > 0.0 && eta_fs <= 1.0))
    throw Error(ErrorCode::kConfiguration, "eta must lie in (0, 1]");
  if (!(epsilon_cf >= 0.0 && epsilon_cf < 1.0))
    throw Error(ErrorCode::kConfiguration, "epsilon must lie in [0, 1)");
}

std::vector<std::string> PhysicalConstants::warnings() const {
  std::vector<std::string> out;
  if (delta > 0.1 * delta_omega) {
    out.emplace_back("detuning delta is not small against the grid spacing (ratio > 0.1)");
  }
  return out;
}

PhotonState PhotonState::basis(const Mode& mode) {
  PhotonState s;
  s.amps_.emplace(mode, Amplitude{1.0, 0.0});
  return s;
}

PhotonState PhotonState::superpose(std::span<const std::pair<Mode, Amplitude>> terms,
                                   bool normalize) {
  if (terms.empty()) throw Error(ErrorCode::kInvalidArgument, "superpose needs at least one term");
  PhotonState s;
  for (const auto& [mode, a] : terms) s.accumulate(mode, a);
  if (normalize) {
    const double n = s.norm();
    if (n == 0.0) throw Error(ErrorCode::kDegenerateState, "cannot normalize an all-zero state");
    for (auto& [mode, a] : s.amps_) a /= n;
  }
  return s;
}

Amplitude PhotonState::amplitude(const Mode& mode) const {
  auto it = amps_.find(mode);
  return it == amps_.end() ? Amplitude{} : it->second;
}

double PhotonState::norm_squared() const {
  double sum = 0.0;
  for (const auto& [mode, a] : amps_) sum += std::norm(a);
  return sum;
}

double PhotonState::norm() const { return std::sqrt(norm_squared()); }

std::set<PathId> PhotonState::paths() const {
  std::set<PathId> out;
  for (const auto& [mode, a] : amps_) out.insert(mode.path);
  return out;
}

PhotonState PhotonState::with_prune_threshold(double threshold) const {
  if (!(threshold >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "prune threshold must be >= 0");
  PhotonState s = *this;
  s.prune_threshold_ = threshold;
  return s;
}

void PhotonState::accumulate(const Mode& mode, Amplitude a) {
  if (a == Amplitude{}) return;
  auto [it, inserted] = amps_.try_emplace(mode, a);
  if (!inserted) {
    it->second += a;
    if (it->second == Amplitude{}) amps_.erase(it);
  }
}

void PhotonState::prune() {
  if (prune_threshold_ <= 0.0) return;
  for (auto it = amps_.begin(); it != amps_.end();) {
    const double p = std::norm(it->second);
    if (p < prune_threshold_) {
      loss_ += p;
      it = amps_.erase(it);
    } else {
      ++it;
    }
  }
}

std::int64_t encode_bits(std::string_view bits) {
  if (bits.empty() || bits.size() > 62)
    throw Error(ErrorCode::kInvalidArgument, "bit string length must be in [1, 62]");
  std::int64_t k = 0;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw Error(ErrorCode::kInvalidArgument, "bit string may contain only '0' and '1'");
    k = (k << 1) | (c == '1' ? 1 : 0);
  }
  return k;
}

std::string decode_bits(std::int64_t k, int n) {
  if (n < 1 || n > 62) throw Error(ErrorCode::kInvalidArgument, "qubit count must be in [1, 62]");
  if (k < 0 || k >= (std::int64_t{1} << n))
    throw Error(ErrorCode::kRange, "index out of range for " + std::to_string(n) + " qubits");
  std::string out(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((k >> (n - 1 - i)) & 1) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

std::int64_t qubit_weight(int n, int qubit) {
  if (qubit < 1 || qubit > n)
    throw Error(ErrorCode::kRange, "qubit " + std::to_string(qubit) + " outside [1, " +
                                       std::to_string(n) + "]");
  return std::int64_t{1} << (n - qubit);
}

bool qubit_bit(std::int64_t k, int n, int qubit) { return (k & qubit_weight(n, qubit)) != 0; }

Amplitude inner(const PhotonState& a, const PhotonState& b) {
  Amplitude sum{};
  const auto& small = a.amplitudes().size() <= b.amplitudes().size() ? a : b;
  const bool a_small = &small == &a;
  for (const auto& [mode, amp] : small.amplitudes()) {
    const Amplitude other = (a_small ? b : a).amplitude(mode);
    sum += a_small ? std::conj(amp) * other : std::conj(other) * amp;
  }
  return sum;
}

bool global_phase_equal(const PhotonState& a, const PhotonState& b, double tol) {
  const double na = a.norm();
  const double nb = b.norm();
  if (std::abs(na - nb) > tol) return false;
  if (na <= tol && nb <= tol) return true;
  const double overlap = std::abs(inner(a, b)) / (na * nb);
  return std::abs(1.0 - overlap) <= tol;
}

std::string state_to_json(const PhotonState& s) {
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& [mode, a] : s.amplitudes()) {
    modes.push_back({{"k", mode.freq.k},
                     {"m", mode.freq.m},
                     {"path", mode.path},
                     {"pol", std::string(1, to_char(mode.pol))},
                     {"re", a.real()},
                     {"im", a.imag()}});
  }
  nlohmann::json j{{"modes", modes}, {"loss", s.loss()}};
  return j.dump();
}

PhotonState state_from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("modes") || !j["modes"].is_array())
    throw Error(ErrorCode::kSyntax, "state JSON must be an object with a 'modes' array");
  PhotonState s;
  try {
    for (const auto& e : j["modes"]) {
      Mode mode;
      mode.freq.k = e.at("k").get<std::int64_t>();
      mode.freq.m = e.value("m", std::int64_t{0});
      mode.path = e.at("path").get<int>();
      const std::string pol = e.value("pol", std::string("H"));
      if (pol != "H" && pol != "V") throw Error(ErrorCode::kSyntax, "pol must be \"H\" or \"V\"");
      mode.pol = pol == "H" ? Polarization::kH : Polarization::kV;
      s.accumulate(mode, Amplitude{e.at("re").get<double>(), e.value("im", 0.0)});
    }
    s.set_loss(j.value("loss", 0.0));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kSyntax, std::string("bad state JSON: ") + ex.what());
  }
  if (!(s.loss() >= 0.0)) throw Error(ErrorCode::kSyntax, "loss must be non-negative");
  return s;
}

}  // namespace pfq
