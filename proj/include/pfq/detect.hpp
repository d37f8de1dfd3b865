#pragma once

// Read-out: heterodyne time traces and their quadrature demodulation,
// far-field fringe patterns between two co-propagating beams, and
// Poissonian photon counting.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfq/state.hpp"

namespace pfq {

enum class RecordKind { kTimeTrace, kFringe };
enum class FringeClass { kFringe, kAntiFringe, kFlat };

const char* to_string(RecordKind kind);
const char* to_string(FringeClass c);

struct Sample {
  double x;  // time (s) or transverse position
  double intensity;
};

struct DetectionRecord {
  RecordKind kind = RecordKind::kTimeTrace;
  std::vector<Sample> samples;
  double dc = 0.0;
  // Time traces: complex beat quadrature Q. Fringes: sum_pol A B*.
  std::complex<double> quadrature{};
  double beat_amplitude = 0.0;  // signed once calibrated
  double beat_phase = 0.0;      // radians, relative to calibration if any
  std::optional<FringeClass> classification;
};

// Uniform time grid t_j = start + j * step.
struct TimeGrid {
  double start = 0.0;
  double step = 0.0;
  int count = 0;

  // `periods` beat periods of the detuning, `per_period` samples each.
  static TimeGrid beat_periods(const PhysicalConstants& c, int periods = 10, int per_period = 64);
};

// I(t) = sum_pol |sum_modes a exp(-i w t)|^2 over the modes on the detector
// path, w the frequency offset. Requires >= 3 beat periods at >= 16 samples
// per period. An empty path gives a zero trace classified FLAT; a trace
// with no beat is also FLAT.
DetectionRecord time_trace(const PhotonState& s, PathId detector_path,
                           const PhysicalConstants& constants, const TimeGrid& grid);

struct Demodulation {
  double dc = 0.0;
  double beat_amplitude = 0.0;
  double beat_phase = 0.0;
  std::complex<double> quadrature{};
};

// Reference beat phase fixed once at a calibration setting.
struct BeatCalibration {
  double reference_phase = 0.0;
};

BeatCalibration calibrate(const Demodulation& reference);

// dc = mean I, Q = (2/N) sum I(t_j) exp(-i delta t_j) over the largest whole
// number of beat periods. Without calibration the amplitude is |Q| and the
// phase arg Q. With one, the amplitude carries the sign of the projection
// on the reference quadrature and the phase is wrapped to (-pi, pi] relative
// to it. Fewer than 8 samples per period, or under one period, is a
// kSampling error.
Demodulation demodulate(const DetectionRecord& record, double delta,
                        const std::optional<BeatCalibration>& calibration = std::nullopt);

// Copies the calibrated summary into the record.
void apply_demodulation(DetectionRecord& record, const Demodulation& d);

// I(x) = sum_pol |A e^{i kappa x/2} + B e^{-i kappa x/2}|^2 with A, B the
// total amplitudes on the two paths. Every mode on those paths must share a
// single frequency (kPrecondition otherwise).
DetectionRecord fringe_pattern(const PhotonState& s, PathId a, PathId b, double kappa,
                               std::span<const double> x_grid);

// x in [-2, 2], 401 samples.
std::vector<double> default_fringe_grid();
inline constexpr double kDefaultKappa = 2.0 * kPi;

// FLAT when peak-to-peak < 1e-6 dc; FRINGE when I(0) is within 10 % (of the
// peak-to-peak range) of the maximum; ANTIFRINGE within 10 % of the minimum.
// Anything else throws kAmbiguousPattern.
FringeClass classify_fringe(const DetectionRecord& record);

// Counts drawn Poisson with mean mean_counts_per_sample * I per sample.
// Deterministic for a given seed.
std::vector<std::int64_t> poisson_sample(const DetectionRecord& record,
                                         double mean_counts_per_sample, std::uint64_t seed);

// "t,intensity" or "x,intensity"; counts add a third column when given.
std::string record_to_csv(const DetectionRecord& record,
                          std::span<const std::int64_t> counts = {});
std::string record_to_json(const DetectionRecord& record);

}  // namespace pfq
