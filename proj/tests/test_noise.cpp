/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qccd/noise.hpp"
#include "qccd/simulator.hpp"
#include "test_util.hpp"

using namespace qccd;

TEST_CASE("uzz error model pins") {
  NoiseModel m;
  CHECK(m.eps_2q(0.0) == doctest::Approx(0.46e-3).epsilon(1e-12));
  CHECK(m.eps_2q(M_PI_2) == doctest::Approx(1.91e-3).epsilon(1e-9));
  // The slope term contributes 2.9e-3 at theta = pi above the offset.
  CHECK(m.eps_2q(M_PI) - m.eps_2q(0.0) == doctest::Approx(2.9e-3).epsilon(1e-9));
}

TEST_CASE("uzz error model is monotone in angle") {
  NoiseModel m;
  double prev = -1.0;
  for (double t = 0.0; t <= M_PI + 1e-9; t += M_PI / 64) {
    const double e = m.eps_2q(std::min(t, M_PI));
    CHECK(e >= prev);
    prev = e;
  }
}

TEST_CASE("effective 2Q error predictor matches the reported values") {
  NoiseModel m;
  // predicted = eps_2q(theta_bar) + 2 * transport memory error; the
  // reported values are quoted to 0.1e-3, so agreement means matching
  // within half that quantum.
  auto matches = [&](double theta, double target) {
    return std::abs(m.predict_eps_eff(theta) - target) <= 0.05e-3 + 1e-12;
  };
  CHECK(matches(0.35 * M_PI, 1.9e-3));
  CHECK(matches(0.42 * M_PI, 2.1e-3));
  CHECK(matches(0.50 * M_PI, 2.4e-3));
  CHECK(m.predict_eps_eff(0.35 * M_PI) ==
        doctest::Approx(1e-3 * (2.9 * 0.35 + 0.9)).epsilon(1e-12));
}

TEST_CASE("zero rates always sample the identity action") {
  NoiseModel zero;
  zero.uzz_slope = zero.uzz_offset = zero.leak_per_2q = 0.0;
  zero.eps_1q = zero.eps_mem_per_transport = zero.eps_spam = 0.0;
  zero.eps_meas_crosstalk = zero.eps_reset_crosstalk = 0.0;
  Rng rng(1);
  const Operation uzz = Operation::uzz(0, 1, M_PI_2);
  const Operation rot = Operation::rot1q(0, 0.1, 0.2, 0.3);
  for (int i = 0; i < 100000; ++i) {
    CHECK(sample_channel(uzz, zero, 4, rng).identity());
    CHECK(sample_channel(rot, zero, 4, rng).identity());
    CHECK(sample_transport_layer(zero, 4, rng).identity());
  }
}

TEST_CASE("2Q pauli event frequency is (5/4) eps") {
  NoiseModel m;
  m.uzz_slope = 0.0;
  m.uzz_offset = 18.3e-4;
  m.leak_per_2q = 0.0;
  Rng rng(2);
  const Operation op = Operation::uzz(0, 1, M_PI_2);
  const int n = 1000000;
  int events = 0;
  std::array<int, 16> pauli_counts{};
  for (int i = 0; i < n; ++i) {
    const auto act = sample_channel(op, m, 2, rng);
    if (!act.paulis.empty()) {
      ++events;
      int idx = 0;
      for (const auto& [q, p] : act.paulis) idx += p * (q == 0 ? 1 : 4);
      pauli_counts[idx]++;
    }
  }
  const double q = 1.25 * 18.3e-4;
  const double freq = static_cast<double>(events) / n;
  CHECK(std::abs(freq - q) < testutil::binom3sigma(q, n));
  // All 15 non-identity Paulis occur at comparable rates.
  int nonzero = 0;
  for (int i = 1; i < 16; ++i) nonzero += pauli_counts[i] > 0;
  CHECK(nonzero == 15);
}

TEST_CASE("leak events pick either qubit uniformly") {
  NoiseModel m;
  m.uzz_slope = m.uzz_offset = 0.0;
  m.leak_per_2q = 0.5;
  Rng rng(3);
  const Operation op = Operation::uzz(2, 5, M_PI_2);
  int q2 = 0, q5 = 0, none = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto act = sample_channel(op, m, 8, rng);
    if (act.leak_qubit == 2) ++q2;
    else if (act.leak_qubit == 5) ++q5;
    else ++none;
  }
  CHECK(std::abs(q2 / double(n) - 0.25) < testutil::binom3sigma(0.25, n));
  CHECK(std::abs(q5 / double(n) - 0.25) < testutil::binom3sigma(0.25, n));
  CHECK(std::abs(none / double(n) - 0.5) < testutil::binom3sigma(0.5, n));
}

TEST_CASE("transport layer dephasing rate is (3/2) eps per qubit") {
  NoiseModel m;
  m.eps_mem_per_transport = 2.2e-4;
  Rng rng(4);
  const int n = 400000;
  int flips = 0;
  for (int i = 0; i < n; ++i) {
    const auto act = sample_transport_layer(m, 1, rng);
    for (const auto& [q, p] : act.paulis) {
      CHECK(p == 3);  // pure dephasing
      ++flips;
    }
  }
  const double expect = 1.5 * 2.2e-4;
  CHECK(std::abs(flips / double(n) - expect) < testutil::binom3sigma(expect, n));
}

TEST_CASE("crosstalk acts on declared neighbors of mcmr events") {
  NoiseModel m;
  m.eps_meas_crosstalk = 0.2;
  m.eps_reset_crosstalk = 0.0;
  m.crosstalk_radius = 1;
  Rng rng(5);
  const Operation meas = Operation::measure(3, "c", 0);
  int hits2 = 0, hits4 = 0, other = 0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const auto act = sample_channel(meas, m, 8, rng);
    for (const auto& [q, p] : act.paulis) {
      if (q == 2) ++hits2;
      else if (q == 4) ++hits4;
      else ++other;
    }
  }
  CHECK(other == 0);
  const double expect = 1.5 * 0.2;
  CHECK(std::abs(hits2 / double(n) - expect) < testutil::binom3sigma(expect, n));
  CHECK(std::abs(hits4 / double(n) - expect) < testutil::binom3sigma(expect, n));
  // Boundary qubit has a single neighbor.
  const Operation meas0 = Operation::measure(0, "c", 0);
  const auto act = sample_channel(meas0, m, 8, rng);
  for (const auto& [q, p] : act.paulis) CHECK(q == 1);
}

TEST_CASE("noise model validation") {
  NoiseModel bad;
  bad.eps_spam = 1.5;
  CHECK_THROWS_AS(bad.validate(), Error);
  NoiseModel bad2;
  bad2.uzz_slope = 1.2;
  CHECK_THROWS_AS(bad2.validate(), Error);
  NoiseModel ok;
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("spam flips show up at the readout rate") {
  NoiseModel m;
  m.uzz_slope = m.uzz_offset = m.leak_per_2q = 0.0;
  m.eps_1q = m.eps_mem_per_transport = 0.0;
  m.eps_meas_crosstalk = m.eps_reset_crosstalk = 0.0;
  m.eps_spam = 0.05;
  CircuitBuilder b(1);
  b.creg("c", 1).measure(0, "c", 0);
  const auto rec = run_circuit(b.build(), m, 6, 20000);
  const double flip = rec.mean_bit("c", 0);
  CHECK(std::abs(flip - 0.05) < testutil::binom3sigma(0.05, 20000));
}
