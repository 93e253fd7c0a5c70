/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qccd/circuit.hpp"
#include "qccd/haar.hpp"
#include "qccd/simulator.hpp"
#include "test_util.hpp"

using namespace qccd;

TEST_CASE("empty circuit measures zero") {
  CircuitBuilder b(1);
  b.creg("c", 1).measure(0, "c", 0);
  const auto rec = run_circuit(b.build(), std::nullopt, 1, 100);
  CHECK(rec.fraction_equal("c", 0) == 1.0);
}

TEST_CASE("x flips the measured bit") {
  CircuitBuilder b(1);
  b.creg("c", 1).x(0).measure(0, "c", 0);
  const auto rec = run_circuit(b.build(), std::nullopt, 1, 100);
  CHECK(rec.fraction_equal("c", 1) == 1.0);
}

TEST_CASE("bell circuit correlations at 1e4 shots") {
  const auto rec = run_circuit(testutil::bell_circuit(), std::nullopt, 7, 10000);
  const double p_corr = rec.fraction_equal("c", 0) + rec.fraction_equal("c", 3);
  CHECK(p_corr == doctest::Approx(1.0).epsilon(0.02));
  // Both outcomes appear.
  CHECK(rec.fraction_equal("c", 0) > 0.4);
  CHECK(rec.fraction_equal("c", 3) > 0.4);
}

TEST_CASE("plus state ideal probabilities") {
  CircuitBuilder b(1);
  b.h(0);
  const auto probs = ideal_probabilities(b.build());
  CHECK(probs[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(probs[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ideal probabilities reject measurement") {
  CircuitBuilder b(1);
  b.creg("c", 1).h(0).measure(0, "c", 0);
  CHECK_THROWS_AS(ideal_probabilities(b.build()), Error);
}

TEST_CASE("norm preserved across op stream") {
  Rng rng(11);
  CircuitBuilder b(4);
  for (int i = 0; i < 30; ++i) {
    const int q = static_cast<int>(rng.uniform_int(4));
    int p = static_cast<int>(rng.uniform_int(4));
    if (p == q) p = (p + 1) % 4;
    if (rng.bernoulli(0.5))
      b.gate(q, sample_haar_2(rng));
    else
      b.uzz(q, p, rng.uniform() * 2.0 * M_PI - M_PI);
  }
  const Circuit c = b.build();
  QuantumState st(4);
  for (const auto& op : c.ops) {
    if (op.kind == OpKind::Rot1Q)
      st.apply_1q(op.qubits[0],
                  gates::from_euler_zyz(op.euler[0], op.euler[1], op.euler[2]));
    else
      st.apply_uzz(op.qubits[0], op.qubits[1], op.theta());
    CHECK(std::abs(st.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("repeated measurement is consistent") {
  CircuitBuilder b(2);
  b.creg("c", 2).h(0).cnot(0, 1).measure(0, "c", 0).measure(0, "c", 1);
  const auto rec = run_circuit(b.build(), std::nullopt, 42, 200);
  for (const auto& s : rec.shots) {
    const auto v = s.cregs.at("c");
    CHECK(((v >> 0) & 1) == ((v >> 1) & 1));
  }
}

TEST_CASE("false conditional leaves state bit-exactly unchanged") {
  Rng rng(3);
  QuantumState st(2);
  st.declare_creg("c", 1);
  st.apply_1q(0, sample_haar_2(rng));
  st.apply_uzz(0, 1, 0.731);
  const auto before = st.amplitudes();
  // Predicate over c[0] == 1 with the register at 0: never fires.
  Predicate pred;
  pred.creg = "c";
  pred.mask = 1;
  pred.value = 1;
  CHECK_FALSE(pred.evaluate(st.creg_value("c")));
  const auto after = st.amplitudes();
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(before[i] == after[i]);

  // Through the runner: a conditional that never fires must not disturb
  // the output distribution of a deterministic circuit.
  CircuitBuilder b(1);
  b.creg("c", 1);
  b.conditional(pred, {Operation::rot1q(0, gates::pauli_x())});
  b.measure(0, "c", 0);
  const auto rec = run_circuit(b.build(), std::nullopt, 5, 50);
  CHECK(rec.fraction_equal("c", 0) == 1.0);
}

TEST_CASE("feed-forward true branch applies") {
  CircuitBuilder b(2);
  b.creg("c", 2).x(0).measure(0, "c", 0);
  Predicate pred;
  pred.creg = "c";
  pred.mask = 1;
  pred.value = 1;
  b.conditional(pred, {Operation::rot1q(1, gates::pauli_x())});
  b.measure(1, "c", 1);
  const auto rec = run_circuit(b.build(), std::nullopt, 5, 50);
  CHECK(rec.fraction_equal("c", 3) == 1.0);
}

TEST_CASE("leaked qubit freezes gates and persists until reset") {
  Rng rng(17);
  QuantumState st(2);
  st.apply_1q(1, sample_haar_2(rng));
  st.apply_1q(0, sample_haar_2(rng));
  st.mark_leaked(0, rng);
  CHECK(st.leaked(0));

  const Mat2 rho_before = st.reduced_density(1);
  st.apply_uzz(0, 1, M_PI_2);
  st.apply_uzz(0, 1, 1.234);
  st.apply_1q(0, sample_haar_2(rng));
  const Mat2 rho_after = st.reduced_density(1);
  CHECK((rho_after - rho_before).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(st.leaked(0));  // flag persists through gates

  // Fidelity of the partner's (pure) reduced state is 1 within 1e-10.
  const double fid = std::abs((rho_before * rho_after).trace()) /
                     std::abs((rho_before * rho_before).trace());
  CHECK(fid == doctest::Approx(1.0).epsilon(1e-10));

  st.reset(0, rng);
  CHECK_FALSE(st.leaked(0));
  CHECK(st.prob_one(0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("measuring a leaked qubit reads dark by default") {
  NoiseModel leaky;
  leaky.uzz_slope = leaky.uzz_offset = 0.0;
  leaky.eps_1q = leaky.eps_mem_per_transport = leaky.eps_spam = 0.0;
  leaky.eps_meas_crosstalk = leaky.eps_reset_crosstalk = 0.0;
  leaky.leak_per_2q = 1.0;  // every 2Q gate leaks one of its qubits
  CircuitBuilder b(2);
  b.creg("c", 2);
  b.x(0).x(1).uzz(0, 1, M_PI_2);
  b.measure(0, "c", 0).measure(1, "c", 1);
  const auto rec = run_circuit(b.build(), leaky, 3, 400);
  int leaked_shots = 0;
  for (const auto& s : rec.shots) {
    CHECK(s.leak_mask != 0);
    ++leaked_shots;
    // Exactly one qubit leaked; it reads 0, the other reads 1.
    const int lq = (s.leak_mask & 1) ? 0 : 1;
    CHECK(((s.cregs.at("c") >> lq) & 1) == 0);
    CHECK(((s.cregs.at("c") >> (1 - lq)) & 1) == 1);
  }
  CHECK(leaked_shots == 400);
}

TEST_CASE("swap label twice is the identity") {
  Rng rng(23);
  QuantumState st(3);
  for (int q = 0; q < 3; ++q) st.apply_1q(q, sample_haar_2(rng));
  st.apply_uzz(0, 2, 0.4);
  const auto before = st.amplitudes();
  st.apply_swap_label(0, 2);
  st.apply_swap_label(0, 2);
  const auto after = st.amplitudes();
  for (std::size_t i = 0; i < before.size(); ++i)
    CHECK(std::abs(before[i] - after[i]) < 1e-15);
}

TEST_CASE("swap label relabels measurement outcomes") {
  CircuitBuilder b(2);
  b.creg("c", 2).x(0).swap_label(0, 1).measure(0, "c", 0).measure(1, "c", 1);
  const auto rec = run_circuit(b.build(), std::nullopt, 1, 20);
  CHECK(rec.fraction_equal("c", 2) == 1.0);  // the 1 moved to qubit 1
}

TEST_CASE("determinism and per-shot sub-seeds") {
  const Circuit c = testutil::bell_circuit();
  const auto r1 = run_circuit(c, std::nullopt, 99, 64);
  const auto r2 = run_circuit(c, std::nullopt, 99, 64);
  REQUIRE(r1.n_shots() == r2.n_shots());
  for (int k = 0; k < r1.n_shots(); ++k)
    CHECK(r1.shots[k].cregs.at("c") == r2.shots[k].cregs.at("c"));
  const auto r3 = run_circuit(c, std::nullopt, 100, 64);
  int diff = 0;
  for (int k = 0; k < r1.n_shots(); ++k)
    diff += r1.shots[k].cregs.at("c") != r3.shots[k].cregs.at("c");
  CHECK(diff > 0);
}

TEST_CASE("qubit cap and index validation") {
  Circuit c(30);
  CHECK_THROWS_AS(run_circuit(c, std::nullopt, 0, 1), Error);
  Circuit c2(2);
  Operation bad = Operation::rot1q(5, 0.0, 0.0, 0.0);
  c2.append(bad);
  CHECK_THROWS_AS(run_circuit(c2, std::nullopt, 0, 1), Error);
  Circuit c3(1);
  c3.append(Operation::measure(0, "nope", 0));
  CHECK_THROWS_AS(run_circuit(c3, std::nullopt, 0, 1), Error);
}

TEST_CASE("zero-rate noise model reproduces the no-noise records") {
  NoiseModel zero;
  zero.uzz_slope = zero.uzz_offset = zero.leak_per_2q = 0.0;
  zero.eps_1q = zero.eps_mem_per_transport = zero.eps_spam = 0.0;
  zero.eps_meas_crosstalk = zero.eps_reset_crosstalk = 0.0;
  const Circuit c = testutil::bell_circuit();
  const auto plain = run_circuit(c, std::nullopt, 5, 128);
  const auto noisy = run_circuit(c, zero, 5, 128);
  for (int k = 0; k < plain.n_shots(); ++k)
    CHECK(plain.shots[k].cregs.at("c") == noisy.shots[k].cregs.at("c"));
}

TEST_CASE("exact creg distribution matches sampling on a dynamic circuit") {
  // Measure one half of a Bell pair, feed-forward X onto a third qubit.
  CircuitBuilder b(3);
  b.creg("m", 1).creg("out", 3);
  b.h(0).cnot(0, 1).measure(0, "m", 0);
  Predicate pred;
  pred.creg = "m";
  pred.mask = 1;
  pred.value = 1;
  b.conditional(pred, {Operation::rot1q(2, gates::pauli_x())});
  b.measure(0, "out", 0).measure(1, "out", 1).measure(2, "out", 2);
  const Circuit c = b.build();

  const auto dist = exact_creg_distribution(c);
  // Keys are (m, out) in name-sorted order: m < out.
  double total = 0.0;
  for (const auto& [key, p] : dist) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // Outcomes: m=0 -> out=000; m=1 -> out=111.
  CHECK(dist.at({0, 0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist.at({1, 7}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ghz pre-measurement populations") {
  // Log-depth GHZ without measurement: half the mass on each extreme.
  const int n = 8;
  CircuitBuilder b(n);
  b.h(0);
  for (int step = 1; step < n; step *= 2)
    for (int i = 0; i < step && i + step < n; ++i) b.cnot(i, i + step);
  const auto probs = ideal_probabilities(b.build());
  CHECK(probs[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(probs[(1u << n) - 1] == doctest::Approx(0.5).epsilon(1e-10));
}
