/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "layer_checker.hpp"
#include "qccd/haar.hpp"
#include "qccd/schedule.hpp"
#include "qccd/simulator.hpp"
#include "test_util.hpp"

using namespace qccd;
using namespace qccd::sched;

namespace {

Circuit random_unitary_circuit(int n, int n_gates, std::uint64_t seed,
                               bool with_barriers = false) {
  Rng rng(seed);
  CircuitBuilder b(n);
  for (int i = 0; i < n_gates; ++i) {
    if (rng.bernoulli(0.3)) b.gate(rng.uniform_int(n), sample_haar_2(rng));
    const int a = static_cast<int>(rng.uniform_int(n));
    int c = static_cast<int>(rng.uniform_int(n));
    if (c == a) c = (c + 1) % n;
    b.uzz(a, c, rng.uniform() * M_PI - M_PI_2);
    if (with_barriers && rng.bernoulli(0.1)) b.barrier();
  }
  return b.build();
}

}  // namespace

TEST_CASE("forced layering example") {
  CircuitBuilder b(4);
  b.uzz(0, 1, M_PI_2).uzz(2, 3, M_PI_2).uzz(1, 2, M_PI_2);
  const auto lc = layer_circuit(b.build());
  REQUIRE(lc.n_gate_layers() == 2);
  CHECK(lc.layers[0].gates.size() == 2);
  CHECK(lc.layers[1].gates.size() == 1);
  CHECK(lc.layers[1].gates[0].q0 == 1);
  CHECK(lc.layers[1].gates[0].q1 == 2);
}

TEST_CASE("fully parallel pairing lands in one layer") {
  CircuitBuilder b(8);
  for (int i = 0; i < 8; i += 2) b.uzz(i, i + 1, M_PI_2);
  const auto lc = layer_circuit(b.build());
  CHECK(lc.n_gate_layers() == 1);
  CHECK(lc.layers[0].gates.size() == 4);
}

TEST_CASE("random 50-gate circuits pass the independent checker") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Circuit c = random_unitary_circuit(8, 50, seed, true);
    const auto lc = layer_circuit(c);
    CHECK_NOTHROW(testutil::check_layering(c, lc));
    const auto plan = schedule(lc, c);
    CHECK_NOTHROW(verify_transport_plan(plan, lc, c));
  }
}

TEST_CASE("barriers are never crossed") {
  CircuitBuilder b(4);
  b.uzz(0, 1, M_PI_2).barrier().uzz(2, 3, M_PI_2);
  const auto lc = layer_circuit(b.build());
  // Without the barrier these would share a layer.
  CHECK(lc.n_gate_layers() == 2);
  CHECK_NOTHROW(testutil::check_layering(b.build(), lc));
}

TEST_CASE("odd-even transposition sorts a reversal within n rounds") {
  std::vector<int> rev(16);
  for (int i = 0; i < 16; ++i) rev[i] = 15 - i;
  const auto rounds = oet_sort_rounds(rev);
  CHECK(rounds.size() <= 16);
  CHECK(rounds.size() >= 8);  // a reversal is the worst case
}

TEST_CASE("already sorted needs zero rounds") {
  std::vector<int> id(12);
  std::iota(id.begin(), id.end(), 0);
  CHECK(oet_sort_rounds(id).empty());
}

TEST_CASE("adjacent pairs in the gate zones need no swap rounds") {
  CircuitBuilder b(8);
  for (int i = 0; i < 8; i += 2) b.uzz(i, i + 1, M_PI_2);
  const Circuit c = b.build();
  const auto plan = schedule(layer_circuit(c), c);
  int swap_rounds = 0;
  for (const auto& s : plan.steps)
    if (s.kind == StepKind::SwapRound) ++swap_rounds;
  CHECK(swap_rounds == 0);
  CHECK(plan.n_arrangement_rounds == 1);
}

TEST_CASE("budget of a gates-only plan is 100 percent quantum") {
  TransportPlan plan;
  plan.n_qubits = 2;
  TransportStep s{};
  s.kind = StepKind::Gate2Q;
  s.duration = 1e-3;
  plan.steps.push_back(s);
  const auto b = budget(plan);
  CHECK(b.quantum_pct == doctest::Approx(100.0));
  CHECK(b.transport_pct == doctest::Approx(0.0));
  CHECK(b.triple() == "100/0/0");
}

TEST_CASE("budget splits equal gate and transport time evenly") {
  TransportPlan plan;
  plan.n_qubits = 2;
  TransportStep g{};
  g.kind = StepKind::Gate1Q;
  g.duration = 2e-3;
  TransportStep t{};
  t.kind = StepKind::BatchShift;
  t.duration = 2e-3;
  plan.steps.push_back(g);
  plan.steps.push_back(t);
  const auto b = budget(plan);
  CHECK(b.quantum_pct == doctest::Approx(50.0));
  CHECK(b.transport_pct == doctest::Approx(50.0));
  CHECK(b.cooling_pct == doctest::Approx(0.0));
  // Percentages always close to a total of 100.
  CHECK(b.quantum_pct + b.transport_pct + b.cooling_pct ==
        doctest::Approx(100.0).epsilon(0.005));
}

TEST_CASE("budget of empty plan throws") {
  TransportPlan plan;
  CHECK_THROWS_AS(budget(plan), Error);
}

TEST_CASE("scheduled plans replay validly") {
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    const Circuit c = random_unitary_circuit(10, 40, seed);
    const auto lc = layer_circuit(c);
    const auto plan = schedule(lc, c);
    CHECK_NOTHROW(verify_transport_plan(plan, lc, c));
    // The annotation reported to the noise model counts one transport
    // layer per arrangement round.
    int annotated = 0;
    for (const auto& [idx, k] : plan.transport_layers_before) annotated += k;
    CHECK(annotated == plan.n_arrangement_rounds);
    CHECK(plan.n_arrangement_rounds == lc.n_gate_layers());
  }
}

TEST_CASE("semantic preservation over random circuits") {
  // The scheduled (flattened) circuit must produce the same distribution.
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const Circuit c = random_unitary_circuit(8, 30, seed);
    const auto lc = layer_circuit(c);
    const Circuit flat = lc.flatten(c);
    const auto p = ideal_probabilities(c);
    const auto q = ideal_probabilities(flat);
    CHECK(testutil::tv_distance(p, q) < 1e-10);
  }
}

TEST_CASE("determinism of scheduling") {
  const Circuit c = random_unitary_circuit(12, 60, 7);
  const auto p1 = schedule(layer_circuit(c), c);
  const auto p2 = schedule(layer_circuit(c), c);
  REQUIRE(p1.steps.size() == p2.steps.size());
  CHECK(p1.total_time == p2.total_time);
  for (std::size_t i = 0; i < p1.steps.size(); ++i) {
    CHECK(p1.steps[i].kind == p2.steps[i].kind);
    CHECK(p1.steps[i].start == p2.steps[i].start);
  }
}

TEST_CASE("capacity guard") {
  TrapLayout tiny;
  tiny.storage_wells_per_side = 2;  // capacity 4
  CircuitBuilder b(8);
  b.uzz(0, 1, M_PI_2);
  const Circuit c = b.build();
  CHECK_THROWS_AS(schedule(layer_circuit(c), c, tiny), Error);
}

TEST_CASE("plan export is valid json with a budget triple") {
  const Circuit c = random_unitary_circuit(6, 12, 3);
  const auto plan = schedule(layer_circuit(c), c);
  const std::string j = write_plan_json(plan);
  CHECK(j.find("\"budget\"") != std::string::npos);
  CHECK(j.find("\"triple\"") != std::string::npos);
}

TEST_CASE("swap label is free and tracked by the scheduler") {
  CircuitBuilder b(4);
  b.uzz(0, 1, M_PI_2).swap_label(1, 2).uzz(0, 1, M_PI_2);
  const Circuit c = b.build();
  const auto lc = layer_circuit(c);
  const auto plan = schedule(lc, c);
  CHECK_NOTHROW(verify_transport_plan(plan, lc, c));
  CHECK(plan.n_arrangement_rounds == 2);
}
