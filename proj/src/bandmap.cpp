#include "pfq/bandmap.hpp"

#include <algorithm>
#include <cmath>

#include "pfq/error.hpp"
#include "pfq/state.hpp"
#include "text.hpp"

namespace pfq {

const char* to_string(CfRole role) { return role == CfRole::kCf1 ? "cf1" : "cf2"; }

BandMap::BandMap(int n, std::vector<int> qubits, CfRole role)
    : n_(n), qubits_(std::move(qubits)), role_(role) {
  for (int q : qubits_) mask_ |= qubit_weight(n_, q);
}

BandMap BandMap::make(int n, int target_qubit, CfRole role) {
  return conjunction(n, {target_qubit}, role);
}

BandMap BandMap::conjunction(int n, std::vector<int> qubits, CfRole role) {
  if (n < 1 || n > 30) throw Error(ErrorCode::kRange, "band map qubit count must be in [1, 30]");
  if (qubits.empty()) throw Error(ErrorCode::kInvalidArgument, "band map needs a qubit");
  for (int q : qubits) {
    if (q < 1 || q > n)
      throw Error(ErrorCode::kRange,
                  "qubit " + std::to_string(q) + " outside [1, " + std::to_string(n) + "]");
  }
  std::sort(qubits.begin(), qubits.end());
  if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end())
    throw Error(ErrorCode::kInvalidArgument, "band map qubits must be distinct");
  return BandMap(n, std::move(qubits), role);
}

Band BandMap::assignment(std::int64_t k) const {
  if (k < 0 || k >= grid_size())
    throw Error(ErrorCode::kConfiguration,
                "frequency index " + std::to_string(k) + " has no band in a " +
                    std::to_string(grid_size()) + "-frequency comb");
  const bool selected = (k & mask_) == mask_;
  const bool reflect = role_ == CfRole::kCf1 ? selected : !selected;
  return reflect ? Band::kReflect : Band::kPass;
}

BandMap BandMap::with_role(CfRole role) const { return BandMap(n_, qubits_, role); }

BandMap make_bandmap(int n, int target_qubit, CfRole role) {
  return BandMap::make(n, target_qubit, role);
}

namespace {

double indicator(const BandMap& bands, std::int64_t k) {
  k = std::clamp<std::int64_t>(k, 0, bands.grid_size() - 1);
  return bands.assignment(k) == Band::kReflect ? 1.0 : 0.0;
}

void check_spectrum_args(double edge_width, double epsilon_floor) {
  if (!(edge_width > 0.0 && edge_width < 0.5))
    throw Error(ErrorCode::kInvalidArgument, "edge width must lie in (0, 0.5)");
  if (!(epsilon_floor >= 0.0 && epsilon_floor < 0.5))
    throw Error(ErrorCode::kInvalidArgument, "epsilon floor must lie in [0, 0.5)");
}

}  // namespace

double reflectance_at(const BandMap& bands, double x, double edge_width, double epsilon_floor) {
  check_spectrum_args(edge_width, epsilon_floor);
  // Nearest boundary between bands k and k+1 sits at k + 1/2.
  const double boundary = std::round(x - 0.5) + 0.5;

  double s;
  const double half = 0.5 * edge_width;
  if (std::abs(x - boundary) < half) {
    const auto left = static_cast<std::int64_t>(std::floor(boundary));
    const double s_left = indicator(bands, left);
    const double s_right = indicator(bands, left + 1);
    s = s_left + (s_right - s_left) * 0.5 * (1.0 + std::sin(kPi * (x - boundary) / edge_width));
  } else {
    s = indicator(bands, static_cast<std::int64_t>(std::llround(x)));
  }
  return epsilon_floor + (1.0 - 2.0 * epsilon_floor) * s;
}

std::vector<SpectrumSample> reflectance_spectrum(const BandMap& bands, double edge_width,
                                                 double epsilon_floor, int samples) {
  check_spectrum_args(edge_width, epsilon_floor);
  if (samples < 2) throw Error(ErrorCode::kInvalidArgument, "spectrum needs at least 2 samples");
  const double lo = -0.5;
  const double span = static_cast<double>(bands.grid_size());
  std::vector<SpectrumSample> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) {
    const double x = lo + span * static_cast<double>(j) / static_cast<double>(samples - 1);
    out.push_back({x, reflectance_at(bands, x, edge_width, epsilon_floor)});
  }
  return out;
}

int centred_sample_count(const BandMap& bands, int samples_per_band) {
  if (samples_per_band < 2) samples_per_band = 2;
  if (samples_per_band % 2 != 0) ++samples_per_band;
  return static_cast<int>(bands.grid_size()) * samples_per_band + 1;
}

std::string spectrum_to_csv(std::span<const SpectrumSample> spectrum) {
  std::string out = "omega_over_dw,R\n";
  for (const auto& s : spectrum) {
    out += detail::format_real(s.omega_over_dw);
    out += ',';
    out += detail::format_real(s.reflectance);
    out += '\n';
  }
  return out;
}

}  // namespace pfq
