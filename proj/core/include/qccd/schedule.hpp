/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "qccd/layering.hpp"

namespace qccd::sched {

/// Race-track layout abstraction. Durations are calibration constants
/// (config-overridable), not measured values; defaults are chosen to
/// reproduce the qualitative shot-time budget ordering of representative
/// circuits.
struct TrapLayout {
  int n_gate_zones_active = 4;     // host gates and SPAM
  int n_gate_zones_sort_only = 4;  // participate in sorting only
  int storage_wells_per_side = 20;

  struct Durations {
    double split_combine = 0.6e-3;
    double linear_shift = 0.5e-3;
    double physical_swap = 1.2e-3;
    double batch_shift = 4.0e-3;
    double sideband_cool = 4.0e-3;
    double gate_1q = 20e-6;
    double gate_2q = 150e-6;
    double spam_op = 200e-6;
  } durations;

  int capacity() const { return 2 * storage_wells_per_side; }
  void validate() const;
};

enum class StepKind {
  SwapRound,    // parallel adjacent transpositions (transport)
  BatchShift,   // ring rotation moving a batch into the gate zones
  SplitCombine, // well reconfiguration around a gate round (transport)
  SidebandCool, // cooling before a 2Q round
  Gate2Q,       // up to n_gate_zones_active parallel 2Q gates
  Gate1Q,       // batched 1Q gates
  Spam,         // batched state prep / measurement operations
};

struct TransportStep {
  StepKind kind;
  double start = 0;
  double duration = 0;
  int layer = -1;
  // SwapRound: swapped position pairs. BatchShift: rotation amount.
  std::vector<std::pair<int, int>> swaps;
  int shift = 0;
  std::vector<GateRef> gates;  // Gate2Q rounds
  int count = 0;               // parallel op count for Gate1Q / Spam
};

struct BudgetSummary {
  double quantum_pct = 0;
  double transport_pct = 0;
  double cooling_pct = 0;
  double shot_time = 0;  // seconds
  std::string triple() const;  // "q/t/c" rounded percentages
};

struct TransportPlan {
  int n_qubits = 0;
  TrapLayout layout;
  std::vector<TransportStep> steps;
  double total_time = 0;
  BudgetSummary budget;
  int n_arrangement_rounds = 0;  // drives memory-error injection
  int n_gate_rounds = 0;
  /// Noise annotation consumed by RunOptions::transport_layers_before.
  std::map<int, int> transport_layers_before;
};

/// Arranges each layer's pairs with barycenter ordering (10 sweeps, ties
/// toward lower qubit index), sorts via parallel odd-even transposition
/// on the optimally rotated ring, and rotates pair batches through the
/// active gate zones with sideband cooling before every 2Q round.
TransportPlan schedule(const LayeredCircuit& layered, const Circuit& source,
                       const TrapLayout& layout = {});

/// Recomputed budget (quantum ops / transport / cooling) from the steps.
BudgetSummary budget(const TransportPlan& plan);

/// Replays the plan's steps and checks that every gated pair sits in one
/// active gate zone at its gate step and that positions only change via
/// transport primitives (label swaps are replayed from the layering).
/// Throws on violation.
void verify_transport_plan(const TransportPlan& plan,
                           const LayeredCircuit& layered,
                           const Circuit& source);

/// Rounds of parallel adjacent transpositions that sort `target_of` (the
/// target index of the item at each position) on a line; exposed for
/// property tests of the sorting bound.
std::vector<std::vector<std::pair<int, int>>> oet_sort_rounds(
    std::vector<int> target_of);

/// Plan export (JSON): timed steps plus the budget summary.
std::string write_plan_json(const TransportPlan& plan);

}  // namespace qccd::sched
