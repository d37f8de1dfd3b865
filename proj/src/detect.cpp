#include "pfq/detect.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "json.hpp"
#include "pfq/error.hpp"
#include "text.hpp"

namespace pfq {
namespace {

double wrap_phase(double p) {
  p = std::remainder(p, 2.0 * kPi);  // (-pi, pi]
  if (p <= -kPi) p += 2.0 * kPi;
  return p;
}

}  // namespace

const char* to_string(RecordKind kind) {
  return kind == RecordKind::kTimeTrace ? "time_trace" : "fringe";
}

const char* to_string(FringeClass c) {
  switch (c) {
    case FringeClass::kFringe: return "FRINGE";
    case FringeClass::kAntiFringe: return "ANTIFRINGE";
    case FringeClass::kFlat: return "FLAT";
  }
  return "?";
}

TimeGrid TimeGrid::beat_periods(const PhysicalConstants& c, int periods, int per_period) {
  if (periods < 1 || per_period < 1)
    throw Error(ErrorCode::kInvalidArgument, "time grid needs positive periods and samples");
  const double period = 2.0 * kPi / c.delta;
  return TimeGrid{0.0, period / per_period, periods * per_period};
}

DetectionRecord time_trace(const PhotonState& s, PathId detector_path,
                           const PhysicalConstants& constants, const TimeGrid& grid) {
  constants.validate();
  const double period = 2.0 * kPi / constants.delta;
  if (!(grid.step > 0.0) || grid.count < 1)
    throw Error(ErrorCode::kPrecondition, "time grid must have a positive step");
  if (period / grid.step < 16.0 - 1e-9)
    throw Error(ErrorCode::kPrecondition, "time grid needs at least 16 samples per beat period");
  if (grid.step * grid.count < 3.0 * period * (1.0 - 1e-9))
    throw Error(ErrorCode::kPrecondition, "time grid must cover at least 3 beat periods");

  DetectionRecord rec;
  rec.kind = RecordKind::kTimeTrace;

  // Offsets relative to the first mode on the path: a common phase drops out
  // of the modulus, and small offsets keep the phases well conditioned.
  std::map<Polarization, std::vector<std::pair<double, Amplitude>>> groups;
  std::optional<Frequency> ref;
  for (const auto& [mode, a] : s.amplitudes()) {
    if (mode.path != detector_path) continue;
    if (!ref) ref = mode.freq;
    const Frequency rel{mode.freq.k - ref->k, mode.freq.m - ref->m};
    groups[mode.pol].emplace_back(rel.offset(constants), a);
  }

  rec.samples.reserve(static_cast<std::size_t>(grid.count));
  for (int j = 0; j < grid.count; ++j) {
    const double t = grid.start + grid.step * j;
    double intensity = 0.0;
    for (const auto& [pol, terms] : groups) {
      Amplitude field{};
      for (const auto& [w, a] : terms) field += a * std::polar(1.0, -w * t);
      intensity += std::norm(field);
    }
    rec.samples.push_back({t, intensity});
  }

  if (groups.empty()) {
    rec.classification = FringeClass::kFlat;
    return rec;
  }
  apply_demodulation(rec, demodulate(rec, constants.delta));
  if (std::abs(rec.beat_amplitude) < 1e-6 * rec.dc) rec.classification = FringeClass::kFlat;
  return rec;
}

BeatCalibration calibrate(const Demodulation& reference) {
  return BeatCalibration{std::arg(reference.quadrature)};
}

Demodulation demodulate(const DetectionRecord& record, double delta,
                        const std::optional<BeatCalibration>& calibration) {
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be positive");
  const auto& smp = record.samples;
  if (smp.size() < 2) throw Error(ErrorCode::kSampling, "need at least two samples");
  const double step = smp[1].x - smp[0].x;
  if (!(step > 0.0)) throw Error(ErrorCode::kSampling, "samples must be uniformly increasing");
  const double per_period = 2.0 * kPi / (delta * step);
  if (per_period < 8.0 - 1e-9)
    throw Error(ErrorCode::kSampling, "fewer than 8 samples per beat period");
  const double periods = std::floor(static_cast<double>(smp.size()) / per_period + 1e-9);
  if (periods < 1.0) throw Error(ErrorCode::kSampling, "record shorter than one beat period");
  const auto used = std::min<std::size_t>(
      smp.size(), static_cast<std::size_t>(std::llround(periods * per_period)));

  double sum = 0.0;
  std::complex<double> q{};
  for (std::size_t j = 0; j < used; ++j) {
    sum += smp[j].intensity;
    q += smp[j].intensity * std::polar(1.0, -delta * smp[j].x);
  }
  Demodulation d;
  d.dc = sum / static_cast<double>(used);
  d.quadrature = 2.0 * q / static_cast<double>(used);
  const double magnitude = std::abs(d.quadrature);
  if (calibration) {
    d.beat_phase = wrap_phase(std::arg(d.quadrature) - calibration->reference_phase);
    d.beat_amplitude = std::cos(d.beat_phase) >= 0.0 ? magnitude : -magnitude;
  } else {
    d.beat_phase = std::arg(d.quadrature);
    d.beat_amplitude = magnitude;
  }
  return d;
}

void apply_demodulation(DetectionRecord& record, const Demodulation& d) {
  record.dc = d.dc;
  record.quadrature = d.quadrature;
  record.beat_amplitude = d.beat_amplitude;
  record.beat_phase = d.beat_phase;
}

DetectionRecord fringe_pattern(const PhotonState& s, PathId a, PathId b, double kappa,
                               std::span<const double> x_grid) {
  if (a == b) throw Error(ErrorCode::kInvalidArgument, "fringe paths must differ");
  if (!(kappa > 0.0)) throw Error(ErrorCode::kInvalidArgument, "kappa must be positive");

  std::map<Polarization, std::pair<Amplitude, Amplitude>> fields;
  std::optional<Frequency> freq;
  for (const auto& [mode, amp] : s.amplitudes()) {
    if (mode.path != a && mode.path != b) continue;
    if (freq && *freq != mode.freq)
      throw Error(ErrorCode::kPrecondition,
                  "modes on the fringe paths differ in frequency; fringes would wash out");
    freq = mode.freq;
    auto& f = fields[mode.pol];
    (mode.path == a ? f.first : f.second) += amp;
  }

  DetectionRecord rec;
  rec.kind = RecordKind::kFringe;
  double dc = 0.0;
  std::complex<double> cross{};
  for (const auto& [pol, f] : fields) {
    dc += std::norm(f.first) + std::norm(f.second);
    cross += f.first * std::conj(f.second);
  }
  rec.samples.reserve(x_grid.size());
  for (double x : x_grid) {
    double intensity = 0.0;
    for (const auto& [pol, f] : fields) {
      intensity += std::norm(f.first * std::polar(1.0, kappa * x / 2.0) +
                             f.second * std::polar(1.0, -kappa * x / 2.0));
    }
    rec.samples.push_back({x, intensity});
  }
  rec.dc = dc;
  rec.quadrature = cross;
  rec.beat_amplitude = 2.0 * std::abs(cross);
  rec.beat_phase = std::arg(cross);
  try {
    rec.classification = classify_fringe(rec);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAmbiguousPattern) throw;
  }
  return rec;
}

std::vector<double> default_fringe_grid() {
  std::vector<double> x(401);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = -2.0 + 4.0 * static_cast<double>(i) / 400.0;
  return x;
}

FringeClass classify_fringe(const DetectionRecord& record) {
  if (record.kind != RecordKind::kFringe)
    throw Error(ErrorCode::kPrecondition, "classification needs a fringe record");
  // The two-beam pattern is dc + 2 Re(C e^{i kappa x}): extrema dc +/- 2|C|,
  // centre value dc + 2 Re C.
  const double swing = std::abs(record.beat_amplitude);
  const double hi = record.dc + swing;
  const double lo = record.dc - swing;
  const double ptp = hi - lo;
  if (ptp < 1e-6 * record.dc || ptp == 0.0) return FringeClass::kFlat;
  const double centre = record.dc + 2.0 * record.quadrature.real();
  if (centre >= hi - 0.1 * ptp) return FringeClass::kFringe;
  if (centre <= lo + 0.1 * ptp) return FringeClass::kAntiFringe;
  throw Error(ErrorCode::kAmbiguousPattern,
              "pattern centre is neither near a maximum nor a minimum; relative phase is not a "
              "multiple of pi");
}

std::vector<std::int64_t> poisson_sample(const DetectionRecord& record,
                                         double mean_counts_per_sample, std::uint64_t seed) {
  if (!(mean_counts_per_sample > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "mean counts must be positive");
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> counts;
  counts.reserve(record.samples.size());
  for (const auto& s : record.samples) {
    const double mean = mean_counts_per_sample * s.intensity;
    if (mean <= 0.0) {
      counts.push_back(0);
      continue;
    }
    std::poisson_distribution<std::int64_t> dist(mean);
    counts.push_back(dist(rng));
  }
  return counts;
}

std::string record_to_csv(const DetectionRecord& record, std::span<const std::int64_t> counts) {
  if (!counts.empty() && counts.size() != record.samples.size())
    throw Error(ErrorCode::kInvalidArgument, "counts must match the sample count");
  std::string out = record.kind == RecordKind::kTimeTrace ? "t,intensity" : "x,intensity";
  out += counts.empty() ? "\n" : ",counts\n";
  for (std::size_t i = 0; i < record.samples.size(); ++i) {
    out += detail::format_real(record.samples[i].x);
    out += ',';
    out += detail::format_real(record.samples[i].intensity);
    if (!counts.empty()) {
      out += ',';
      out += std::to_string(counts[i]);
    }
    out += '\n';
  }
  return out;
}

std::string record_to_json(const DetectionRecord& record) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : record.samples) samples.push_back({s.x, s.intensity});
  nlohmann::json j{
      {"kind", to_string(record.kind)},
      {"dc", record.dc},
      {"beat_amplitude", record.beat_amplitude},
      {"beat_phase", record.beat_phase},
      {"quadrature", {{"re", record.quadrature.real()}, {"im", record.quadrature.imag()}}},
      {"classification",
       record.classification ? nlohmann::json(to_string(*record.classification)) : nlohmann::json()},
      {"samples", samples},
  };
  return j.dump();
}

}  // namespace pfq
