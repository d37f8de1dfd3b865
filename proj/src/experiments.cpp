#include "pfq/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "pfq/error.hpp"
#include "pfq/program.hpp"
#include "text.hpp"

namespace pfq {
namespace {

double wrap_phase(double p) {
  p = std::remainder(p, 2.0 * kPi);
  if (p <= -kPi) p += 2.0 * kPi;
  return p;
}

DetectionRecord trace_of(const Circuit& c, const PhysicalConstants& k, const TimeGrid& grid) {
  return time_trace(run_circuit(c, emulation_input()), kDetectorPath, k, grid);
}

template <class Build>
SweepResult sweep(SweepVariable variable, const PhysicalConstants& constants,
                  const SweepSpec& spec, const TimeGrid* grid, Build build) {
  constants.validate();
  const TimeGrid g = grid ? *grid : TimeGrid::beat_periods(constants);
  const BeatCalibration cal =
      calibrate(demodulate(trace_of(build(0.0), constants, g), constants.delta));

  SweepResult r;
  r.variable = variable;
  for (double x : spec.points()) {
    const Demodulation d = demodulate(trace_of(build(x), constants, g), constants.delta, cal);
    SweepRow row;
    row.setting = x;
    row.dc = d.dc;
    row.beat_phase = d.beat_phase;
    row.beat_amplitude = variable == SweepVariable::kTheta ? d.beat_amplitude : std::abs(d.quadrature);
    r.rows.push_back(row);
  }

  std::vector<double> xs, ys;
  for (const auto& row : r.rows) {
    xs.push_back(row.setting);
    ys.push_back(row.beat_amplitude);
  }
  r.fit = fit_cosine(xs, ys);
  const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
  r.min_amplitude = *lo;
  r.max_amplitude = *hi;
  for (const auto& row : r.rows)
    r.max_phase_error =
        std::max(r.max_phase_error, std::abs(wrap_phase(row.beat_phase - row.setting)));
  return r;
}

}  // namespace

const char* to_string(SweepVariable v) { return v == SweepVariable::kTheta ? "theta" : "phi"; }

std::vector<double> SweepSpec::points() const {
  if (steps < 2) throw Error(ErrorCode::kConfiguration, "sweeps need at least 2 steps");
  if (!std::isfinite(start) || !std::isfinite(stop))
    throw Error(ErrorCode::kConfiguration, "sweep bounds must be finite");
  std::vector<double> x(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) x[i] = start + (stop - start) * i / steps;
  return x;
}

double CosineFit::amplitude() const { return std::hypot(a, b); }
double CosineFit::phase() const { return std::atan2(b, a); }

CosineFit fit_cosine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty())
    throw Error(ErrorCode::kInvalidArgument, "fit needs matching, non-empty samples");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(x.size()), 3);
  Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    m(r, 0) = std::cos(x[i]);
    m(r, 1) = std::sin(x[i]);
    m(r, 2) = 1.0;
    v(r) = y[i];
  }
  const Eigen::Vector3d p = m.completeOrthogonalDecomposition().solve(v);
  CosineFit f{p(0), p(1), p(2), 0.0};
  f.max_residual = (m * p - v).cwiseAbs().maxCoeff();
  return f;
}

SweepResult sweep_theta(const PhysicalConstants& constants, const SweepSpec& spec,
                        const TimeGrid* grid) {
  return sweep(SweepVariable::kTheta, constants, spec, grid,
               [&](double x) { return build_experimental_fhg(x, constants.eta_fs); });
}

SweepResult sweep_phi(const PhysicalConstants& constants, const SweepSpec& spec,
                      const TimeGrid* grid) {
  return sweep(SweepVariable::kPhi, constants, spec, grid,
               [&](double x) { return build_experimental_fqpg(x, constants.eta_fs); });
}

std::string sweep_to_csv(const SweepResult& result) {
  using detail::format_real;
  std::string out = std::string(to_string(result.variable)) + ",beat_amplitude,beat_phase,dc\n";
  for (const auto& r : result.rows) {
    out += format_real(r.setting) + "," + format_real(r.beat_amplitude) + "," +
           format_real(r.beat_phase) + "," + format_real(r.dc) + "\n";
  }
  return out;
}

std::string sweep_to_json(const SweepResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{to_string(result.variable), r.setting},
                    {"beat_amplitude", r.beat_amplitude},
                    {"beat_phase", r.beat_phase},
                    {"dc", r.dc}});
  }
  nlohmann::json j{
      {"variable", to_string(result.variable)},
      {"rows", rows},
      {"fit",
       {{"a", result.fit.a},
        {"b", result.fit.b},
        {"c", result.fit.c},
        {"amplitude", result.fit.amplitude()},
        {"phase", result.fit.phase()},
        {"max_residual", result.fit.max_residual}}},
      {"max_phase_error", result.max_phase_error},
      {"min_amplitude", result.min_amplitude},
      {"max_amplitude", result.max_amplitude},
  };
  return j.dump();
}

const char* DjResult::verdict() const {
  if (!classification) return "UNDETERMINED";
  switch (*classification) {
    case FringeClass::kFringe: return "CONSTANT";
    case FringeClass::kAntiFringe: return "BALANCED";
    case FringeClass::kFlat: return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

DjResult run_dj(int bb1, int bb2, const PhysicalConstants& constants) {
  constants.validate();
  const PhotonState out = run_circuit(build_dj_circuit(bb1, bb2, constants.eta_fs), emulation_input());
  const auto grid = default_fringe_grid();
  DjResult r;
  r.pattern = fringe_pattern(out, 1, 2, kDefaultKappa, grid);
  r.classification = r.pattern.classification;
  return r;
}

VerifyReport verify_program(const GateProgram& program, const Circuit* realized, double tolerance,
                            const BuildOptions& opts) {
  program.validate();
  if (!(tolerance > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  const Circuit compiled = realized ? *realized : compile_program(program, opts);
  VerifyReport r;
  r.tolerance = tolerance;
  const GateMatrix optical = optical_matrix(compiled, program.n, &r.stray);
  r.max_deviation = std::max(max_deviation_up_to_phase(optical, dense_oracle(program)), r.stray);
  r.pass = r.max_deviation < tolerance;
  return r;
}

}  // namespace pfq
