#pragma once

// Comb-filter band assignments and idealized reflectance spectra.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pfq {

enum class Band { kPass, kReflect };

// CF1 splits (reflects where the selected bits are 1); CF2 is the
// port-complementary filter used to recombine.
enum class CfRole { kCf1, kCf2 };

const char* to_string(CfRole role);

class BandMap {
 public:
  // Single-qubit map. Throws kRange for a qubit outside [1, n].
  static BandMap make(int n, int target_qubit, CfRole role);
  // REFLECT (for CF1) iff every listed qubit bit is 1. Used for the
  // conditional phase of CZ.
  static BandMap conjunction(int n, std::vector<int> qubits, CfRole role);

  int qubit_count() const noexcept { return n_; }
  const std::vector<int>& qubits() const noexcept { return qubits_; }
  CfRole role() const noexcept { return role_; }
  std::int64_t grid_size() const noexcept { return std::int64_t{1} << n_; }

  // Throws kConfiguration for k outside the 2^n grid.
  Band assignment(std::int64_t k) const;

  BandMap with_role(CfRole role) const;

  bool operator==(const BandMap&) const = default;

 private:
  BandMap(int n, std::vector<int> qubits, CfRole role);

  int n_ = 1;
  std::vector<int> qubits_;
  CfRole role_ = CfRole::kCf1;
  std::int64_t mask_ = 0;
};

// Same as BandMap::make.
BandMap make_bandmap(int n, int target_qubit, CfRole role);

struct SpectrumSample {
  double omega_over_dw;  // offset from the base frequency in grid units
  double reflectance;
};

// R(x) = eps + (1 - 2 eps) S(x); S is the REFLECT indicator of the band
// [k - 1/2, k + 1/2) with raised-cosine edges of the given width centred on
// every band boundary. Outside the covered span the outermost band continues.
double reflectance_at(const BandMap& bands, double omega_over_dw, double edge_width,
                      double epsilon_floor);

// Uniform grid over [-1/2, 2^n - 1/2]. Requires 0 < edge_width < 0.5,
// 0 <= epsilon_floor < 0.5, samples >= 2.
std::vector<SpectrumSample> reflectance_spectrum(const BandMap& bands, double edge_width,
                                                 double epsilon_floor, int samples);

// Sample count that puts every band centre on the grid at the given
// resolution (samples per band, rounded up to even).
int centred_sample_count(const BandMap& bands, int samples_per_band = 64);

// "omega_over_dw,R" header then one row per sample.
std::string spectrum_to_csv(std::span<const SpectrumSample> spectrum);

}  // namespace pfq
