#include <cmath>
#include <random>

#include "doctest.h"
#include "pfq/error.hpp"
#include "pfq/state.hpp"

using namespace pfq;

namespace {

Mode mode(std::int64_t k, PathId path = 1, Polarization pol = Polarization::kH, std::int64_t m = 0) {
  return Mode{{k, m}, path, pol};
}

}  // namespace

TEST_CASE("basis state has one unit amplitude") {
  const auto s = PhotonState::basis(mode(0));
  REQUIRE(s.amplitudes().size() == 1);
  CHECK(s.amplitude(mode(0)) == Amplitude{1.0, 0.0});
  CHECK(s.loss() == 0.0);
  CHECK(s.norm() == doctest::Approx(1.0));

  const auto t = PhotonState::basis(mode(1));
  CHECK(s != t);
  CHECK(std::abs(inner(s, t)) == 0.0);
  CHECK(s.amplitude(mode(0, 2)) == Amplitude{});
}

TEST_CASE("superpose sums duplicates and normalizes") {
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<std::pair<Mode, Amplitude>> terms = {{mode(0), r}, {mode(2), r}};
  const auto s = PhotonState::superpose(terms);
  CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.amplitude(mode(encode_bits("010"))) == Amplitude{r, 0.0});

  const std::vector<std::pair<Mode, Amplitude>> one = {{mode(3), 1.0}};
  CHECK(PhotonState::superpose(one) == PhotonState::basis(mode(3)));

  std::vector<std::pair<Mode, Amplitude>> eight;
  for (int k = 0; k < 8; ++k) eight.emplace_back(mode(k), 1.0 / std::sqrt(8.0));
  const auto three = PhotonState::superpose(eight);
  CHECK(three.amplitudes().size() == 8);
  CHECK(std::abs(three.norm() - 1.0) < 1e-15);

  const std::vector<std::pair<Mode, Amplitude>> dup = {{mode(1), 0.5}, {mode(1), 0.25}};
  CHECK(PhotonState::superpose(dup).amplitude(mode(1)) == Amplitude{0.75, 0.0});

  const std::vector<std::pair<Mode, Amplitude>> scaled = {{mode(0), 3.0}, {mode(1), 4.0}};
  CHECK(PhotonState::superpose(scaled, true).norm() == doctest::Approx(1.0));
}

TEST_CASE("superpose rejects degenerate input") {
  const std::vector<std::pair<Mode, Amplitude>> zeros = {{mode(0), 0.0}, {mode(1), 0.0}};
  try {
    PhotonState::superpose(zeros, true);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateState);
  }
  const std::vector<std::pair<Mode, Amplitude>> cancel = {{mode(0), 1.0}, {mode(0), -1.0}};
  CHECK_THROWS_AS(PhotonState::superpose(cancel, true), Error);
  CHECK_THROWS_AS(PhotonState::superpose({}), Error);
}

TEST_CASE("encode and decode bits") {
  CHECK(encode_bits("010") == 2);
  CHECK(encode_bits("000") == 0);
  CHECK(encode_bits("111") == 7);
  CHECK(decode_bits(2, 3) == "010");
  CHECK(qubit_weight(3, 1) == 4);
  CHECK(qubit_weight(3, 3) == 1);
  CHECK(qubit_bit(6, 3, 1));
  CHECK_FALSE(qubit_bit(6, 3, 3));
  CHECK_THROWS_AS(encode_bits(""), Error);
  CHECK_THROWS_AS(encode_bits("01x"), Error);
  CHECK_THROWS_AS(qubit_weight(3, 4), Error);
}

TEST_CASE("encode and decode are inverse for n <= 10") {
  for (int n = 1; n <= 10; ++n) {
    for (std::int64_t k = 0; k < (std::int64_t{1} << n); ++k) {
      const std::string bits = decode_bits(k, n);
      REQUIRE(bits.size() == static_cast<std::size_t>(n));
      REQUIRE(encode_bits(bits) == k);
    }
  }
}

TEST_CASE("global phase equality") {
  const std::vector<std::pair<Mode, Amplitude>> terms = {{mode(0), {0.6, 0.0}}, {mode(1), {0.0, 0.8}}};
  const auto s = PhotonState::superpose(terms);
  const std::vector<std::pair<Mode, Amplitude>> neg = {{mode(0), {-0.6, 0.0}}, {mode(1), {0.0, -0.8}}};
  CHECK(global_phase_equal(s, PhotonState::superpose(neg)));
  const auto rot = std::polar(1.0, 1.234);
  const std::vector<std::pair<Mode, Amplitude>> turned = {{mode(0), 0.6 * rot},
                                                          {mode(1), Amplitude{0.0, 0.8} * rot}};
  CHECK(global_phase_equal(s, PhotonState::superpose(turned)));
  CHECK_FALSE(global_phase_equal(PhotonState::basis(mode(0)), PhotonState::basis(mode(1))));
  const std::vector<std::pair<Mode, Amplitude>> rel = {{mode(0), {0.6, 0.0}}, {mode(1), {0.0, -0.8}}};
  CHECK_FALSE(global_phase_equal(s, PhotonState::superpose(rel)));

  const auto ip = inner(s, s);
  CHECK(std::abs(ip.imag()) < 1e-15);
  CHECK(ip.real() == doctest::Approx(s.norm_squared()));
}

TEST_CASE("inner product is antilinear in the first argument") {
  const std::vector<std::pair<Mode, Amplitude>> a = {{mode(0), {0.0, 1.0}}};
  const std::vector<std::pair<Mode, Amplitude>> b = {{mode(0), 1.0}};
  CHECK(inner(PhotonState::superpose(a), PhotonState::superpose(b)) == Amplitude{0.0, -1.0});
}

TEST_CASE("prune moves small amplitudes into loss only when enabled") {
  const std::vector<std::pair<Mode, Amplitude>> terms = {{mode(0), 1.0}, {mode(1), 1e-5}};
  auto s = PhotonState::superpose(terms);
  s.prune();
  CHECK(s.amplitudes().size() == 2);
  auto p = s.with_prune_threshold(1e-9);
  p.prune();
  CHECK(p.amplitudes().size() == 1);
  CHECK(p.loss() == doctest::Approx(1e-10));
  CHECK(p.norm_squared() + p.loss() == doctest::Approx(s.norm_squared()));
}

TEST_CASE("state JSON round trip is exact") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<std::pair<Mode, Amplitude>> terms;
  for (int k = 0; k < 6; ++k)
    terms.emplace_back(mode(k, 1 + k % 3, k % 2 ? Polarization::kV : Polarization::kH, -k),
                       Amplitude{g(rng), g(rng)});
  auto s = PhotonState::superpose(terms, true);
  s.add_loss(0.1234567890123456789);
  const auto back = state_from_json(state_to_json(s));
  CHECK(back == s);
  CHECK_THROWS_AS(state_from_json("{"), Error);
  CHECK_THROWS_AS(state_from_json(R"({"modes":[{"k":0}]})"), Error);
}

TEST_CASE("physical constants") {
  PhysicalConstants c;
  CHECK(c.eta_fs == 0.85);
  CHECK(c.epsilon_cf == 0.0);
  CHECK(c.delta == doctest::Approx(2 * kPi * 1e6));
  CHECK(c.warnings().empty());
  c.set("eta", 0.5);
  CHECK(c.eta_fs == 0.5);
  c.set("delta_num", 1.0);
  CHECK(c.delta == 1.0);
  CHECK_THROWS_AS(c.set("bogus", 1.0), Error);
  c.set("delta", c.delta_omega);
  CHECK_FALSE(c.warnings().empty());
  c.set("eta", 1.5);
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK(PhysicalConstants::ideal().eta_fs == 1.0);
}

TEST_CASE("frequency equality is exact") {
  CHECK(Frequency{1, 2} == Frequency{1, 2});
  CHECK(Frequency{1, 2} != Frequency{1, 3});
  CHECK(mode(0, 1, Polarization::kH) != mode(0, 1, Polarization::kV));
  const PhysicalConstants c;
  CHECK(Frequency{2, -1}.offset(c) == doctest::Approx(2 * c.delta_omega - c.delta));
}
