#pragma once

// Parameter sweeps over the emulation circuits, the one-qubit Deutsch-Jozsa
// run, and oracle verification of gate programs.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfq/detect.hpp"
#include "pfq/gates.hpp"

namespace pfq {

enum class SweepVariable { kTheta, kPhi };

const char* to_string(SweepVariable v);

// steps points from start, endpoint excluded: x_i = start + i (stop - start) / steps.
struct SweepSpec {
  double start = 0.0;
  double stop = 2.0 * kPi;
  int steps = 32;

  std::vector<double> points() const;
};

struct SweepRow {
  double setting = 0.0;
  double dc = 0.0;
  double beat_amplitude = 0.0;
  double beat_phase = 0.0;
};

// y ~ a cos x + b sin x + c, least squares.
struct CosineFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double max_residual = 0.0;

  double amplitude() const;
  double phase() const;  // y = amplitude cos(x - phase) + c
};

CosineFit fit_cosine(std::span<const double> x, std::span<const double> y);

struct SweepResult {
  SweepVariable variable = SweepVariable::kTheta;
  std::vector<SweepRow> rows;
  CosineFit fit;  // of beat_amplitude against the setting
  // Largest |beat_phase - setting| modulo 2 pi.
  double max_phase_error = 0.0;
  double min_amplitude = 0.0;
  double max_amplitude = 0.0;
};

// Signed, calibrated beat amplitude of build_experimental_fhg over theta.
// The calibration is taken at theta = 0.
SweepResult sweep_theta(const PhysicalConstants& constants, const SweepSpec& spec = {},
                        const TimeGrid* grid = nullptr);
// |Q| and calibrated beat phase of build_experimental_fqpg over phi,
// calibrated at phi = 0.
SweepResult sweep_phi(const PhysicalConstants& constants, const SweepSpec& spec = {},
                      const TimeGrid* grid = nullptr);

std::string sweep_to_csv(const SweepResult& result);
std::string sweep_to_json(const SweepResult& result);

struct DjResult {
  std::optional<FringeClass> classification;
  DetectionRecord pattern;

  // CONSTANT for a fringe, BALANCED for an anti-fringe.
  const char* verdict() const;
};

DjResult run_dj(int bb1, int bb2, const PhysicalConstants& constants);

struct VerifyReport {
  double max_deviation = 0.0;  // includes amplitude outside the computational register
  double stray = 0.0;
  double tolerance = 1e-10;
  bool pass = false;
};

// Compares the optical action of `realized` (or the compiled program when
// null) against dense_oracle on every basis input.
VerifyReport verify_program(const GateProgram& program, const Circuit* realized = nullptr,
                            double tolerance = 1e-10, const BuildOptions& opts = {});

}  // namespace pfq
