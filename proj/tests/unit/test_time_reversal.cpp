#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "hetnet/error.hpp"
#include "hetnet/time_reversal.hpp"

using namespace hetnet;
using fixture::cir;

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("TR prefilter of a real two-tap channel") {
  const std::vector<Cir> h{cir({3.0, 4.0})};
  const auto g = tr_prefilter(h);
  REQUIRE(g.antennas() == 1);
  CHECK(close(g.per_antenna[0][0], 0.8, 1e-15));
  CHECK(close(g.per_antenna[0][1], 0.6, 1e-15));
  CHECK(g.energy() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("TR prefilter conjugates and reverses") {
  const std::vector<Cir> h{cir({1.0, cplx(0.0, 1.0)})};
  const auto g = tr_prefilter(h);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(close(g.per_antenna[0][0], cplx(0.0, -s), 1e-15));
  CHECK(close(g.per_antenna[0][1], cplx(s, 0.0), 1e-15));
}

TEST_CASE("equivalent channel of the two-tap example") {
  const Cir h = cir({3.0, 4.0});
  const std::vector<cplx> g{0.8, 0.6};
  const auto c = equivalent_channel(g, h);
  REQUIRE(c.size() == 3);
  CHECK(close(c.at(1), 2.4, 1e-14));
  CHECK(close(c.at(2), 5.0, 1e-14));
  CHECK(close(c.at(3), 2.4, 1e-14));
  const auto r = focusing_report(c);
  CHECK(r.peak_power == doctest::Approx(25.0));
  CHECK(r.isi_power == doctest::Approx(11.52));
}

TEST_CASE("unit-impulse prefilter reproduces the channel") {
  std::mt19937_64 rng(1);
  const auto taps = fixture::random_taps(rng, 6);
  std::vector<cplx> delta(6);
  delta[0] = 1.0;
  const auto c = equivalent_channel(delta, cir(taps));
  for (std::size_t l = 0; l < 6; ++l) CHECK(c.taps[l] == taps[l]);
  for (std::size_t l = 6; l < 11; ++l) CHECK(c.taps[l] == cplx{});
}

TEST_CASE("equivalent channel equals the literal convolution sum") {
  std::mt19937_64 rng(2);
  for (std::size_t L : {1u, 2u, 3u, 6u, 9u}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto g = fixture::random_taps(rng, L);
      const auto h = fixture::random_taps(rng, L);
      const auto c = equivalent_channel(g, cir(h));
      const auto ref = oracle::convolve(g, h);
      REQUIRE(c.size() == 2 * L - 1);
      for (std::size_t k = 0; k < ref.size(); ++k) CHECK(c.taps[k] == ref[k]);
    }
  }
}

TEST_CASE("length mismatch and degenerate channels are rejected") {
  const std::vector<cplx> g{1.0, 0.0, 0.0};
  CHECK_THROWS_AS(equivalent_channel(g, cir({1.0, 2.0})), InvalidInput);
  const std::vector<Cir> zero{cir({0.0, 0.0}), cir({0.0, 0.0})};
  CHECK_THROWS_AS(tr_prefilter(zero), DegenerateChannel);
  CHECK_THROWS_AS(tr_prefilter(std::vector<Cir>{}), InvalidInput);
}

TEST_CASE("centre tap equals the aggregate channel norm") {
  std::mt19937_64 rng(3);
  for (std::size_t M : {1u, 2u, 4u}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Cir> h;
      double energy = 0.0;
      for (std::size_t i = 0; i < M; ++i) {
        h.push_back(cir(fixture::random_taps(rng, 6)));
        energy += h.back().energy();
      }
      const auto c = composite_channel(tr_prefilter(h), h);
      const cplx centre = c.at(6);
      CHECK(std::abs(centre.imag()) <= 1e-12 * std::sqrt(energy));
      CHECK(centre.real() > 0.0);
      CHECK(std::abs(centre.real() - std::sqrt(energy)) <= 1e-10 * std::sqrt(energy));
    }
  }
}

TEST_CASE("TR equivalent channel is Hermitian about the centre tap") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = fixture::random_taps(rng, 6);
    const std::vector<Cir> one{cir(h)};
    const auto c = composite_channel(tr_prefilter(one), one);
    for (std::size_t k = 1; k < 6; ++k) CHECK(close(c.at(6 + k), std::conj(c.at(6 - k)), 1e-12));
  }
}

TEST_CASE("common phase rotation of the channel leaves the TR equivalent channel unchanged") {
  std::mt19937_64 rng(5);
  const cplx rot = std::polar(1.0, 0.7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Cir> h, hr;
    for (int i = 0; i < 3; ++i) {
      auto t = fixture::random_taps(rng, 6);
      h.push_back(cir(t));
      for (auto& x : t) x *= rot;
      hr.push_back(cir(t));
    }
    const auto a = composite_channel(tr_prefilter(h), h);
    const auto b = composite_channel(tr_prefilter(hr), hr);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(close(a.taps[k], b.taps[k], 1e-12));
  }
}

TEST_CASE("single-tap channels focus perfectly") {
  const std::vector<Cir> h{cir({cplx(0.3, -1.1)}), cir({cplx(2.0, 0.5)})};
  const auto r = focusing_report(composite_channel(tr_prefilter(h), h));
  CHECK(r.isi_power == 0.0);
  CHECK(r.peak_to_total_ratio == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("intended user sees a stronger peak than an unintended one") {
  // Averaged over drops; any single drop may go either way.
  const auto config = table1_config();
  double intended = 0.0, unintended = 0.0;
  for (std::size_t d = 0; d < 1000; ++d) {
    const auto set = fixture::table1_drop(8, d);
    const auto bfs = femto_tr_beamformers(set);
    intended += std::norm(composite_channel(bfs[0], set.towards(kFemto, kFemto, 0)).at(6)) /
                set.towards(kFemto, kFemto, 0)[0].energy();
    unintended += std::norm(composite_channel(bfs[1], set.towards(kFemto, kFemto, 0)).at(6)) /
                  set.towards(kFemto, kFemto, 0)[0].energy();
  }
  CHECK(intended > 2.0 * unintended);
  (void)config;
}

TEST_CASE("more antennas concentrate more energy at the centre tap") {
  std::mt19937_64 rng(6);
  const auto pdp = tap_mean_powers(itu_indoor_a(), 6, TapMapping::kPerPath);
  Rng crng(7);
  double ratio1 = 0.0, ratio4 = 0.0;
  const int n = 2000;
  for (int k = 0; k < n; ++k) {
    std::vector<Cir> h;
    for (int i = 0; i < 4; ++i) h.push_back(generate_cir(pdp, 1.0, crng));
    const std::vector<Cir> first{h[0]};
    ratio1 += focusing_report(composite_channel(tr_prefilter(first), first)).peak_to_total_ratio;
    ratio4 += focusing_report(composite_channel(tr_prefilter(h), h)).peak_to_total_ratio;
  }
  CHECK(ratio4 / n > ratio1 / n);
  CHECK(ratio1 / n > 0.0);
  CHECK(ratio4 / n < 1.0);
}

TEST_CASE("focusing report from a channel set matches the composite") {
  const auto set = fixture::table1_drop(1, 3);
  const auto bfs = femto_tr_beamformers(set);
  REQUIRE(bfs.size() == 2);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(bfs[j].user == j);
    CHECK(bfs[j].kind == BeamformerKind::kTimeReversal);
    const auto direct = focusing_report(composite_channel(bfs[j], set.towards(kFemto, kFemto, j)));
    const auto r = focusing_report(set, bfs, j);
    CHECK(r.peak_power == direct.peak_power);
    CHECK(r.peak_to_total_ratio == doctest::Approx(r.peak_power / (r.peak_power + r.isi_power)));
  }
}
