/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <vector>

#include "qccd/circuit.hpp"

namespace qccd::sched {

struct GateRef {
  int op_index = -1;
  int q0 = 0, q1 = 0;
  double theta = 0;
};

/// One layer: interleaved non-gate ops (by op index, executing before the
/// gates) plus a set of qubit-disjoint two-qubit gates.
struct Layer {
  std::vector<int> pre_ops;
  std::vector<GateRef> gates;
};

struct LayeredCircuit {
  int n_qubits = 0;
  std::vector<Layer> layers;

  int n_gate_layers() const;
  int total_gates() const;
  /// Rebuilds a circuit in scheduled order (pre-ops, then gates, per
  /// layer). Preserves the per-qubit program order and classical deps.
  Circuit flatten(const Circuit& source) const;
};

/// Earliest-layer grouping of 2Q gates subject to: (1) no qubit twice in
/// a layer, (2) program order among gates sharing a qubit, and barriers
/// never crossed. Deterministic.
LayeredCircuit layer_circuit(const Circuit& circuit);

}  // namespace qccd::sched
