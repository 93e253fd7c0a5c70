/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/layering.hpp"

#include <algorithm>
#include <map>

namespace qccd::sched {

namespace {

void collect_qubits(const Operation& op, int n_qubits, std::vector<int>& out) {
  if (op.kind == OpKind::Barrier && op.qubits.empty()) {
    for (int q = 0; q < n_qubits; ++q) out.push_back(q);
    return;
  }
  for (int q : op.qubits) out.push_back(q);
  for (const auto& nested : op.body) collect_qubits(nested, n_qubits, out);
}

}  // namespace

int LayeredCircuit::n_gate_layers() const {
  int n = 0;
  for (const auto& l : layers) n += !l.gates.empty();
  return n;
}

int LayeredCircuit::total_gates() const {
  int n = 0;
  for (const auto& l : layers) n += static_cast<int>(l.gates.size());
  return n;
}

Circuit LayeredCircuit::flatten(const Circuit& source) const {
  Circuit out;
  out.n_qubits = source.n_qubits;
  out.cregs = source.cregs;
  out.metadata = source.metadata;
  for (const auto& layer : layers) {
    for (int idx : layer.pre_ops) out.ops.push_back(source.ops[idx]);
    for (const auto& g : layer.gates) out.ops.push_back(source.ops[g.op_index]);
  }
  return out;
}

LayeredCircuit layer_circuit(const Circuit& circuit) {
  circuit.validate();
  LayeredCircuit out;
  out.n_qubits = circuit.n_qubits;

  std::vector<int> ready(circuit.n_qubits, 0);
  // Last layer that wrote each classical bit; a conditional reading the
  // register may not land in an earlier layer.
  std::map<std::pair<std::string, int>, int> creg_floor;

  auto ensure_layer = [&](int l) {
    if (static_cast<int>(out.layers.size()) <= l)
      out.layers.resize(static_cast<std::size_t>(l) + 1);
  };

  for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
    const Operation& op = circuit.ops[i];
    if (op.kind == OpKind::UZZ) {
      const int a = op.qubits[0], b = op.qubits[1];
      const int l = std::max(ready[a], ready[b]);
      ensure_layer(l);
      out.layers[l].gates.push_back({static_cast<int>(i), a, b, op.theta()});
      ready[a] = ready[b] = l + 1;
      continue;
    }
    std::vector<int> touched;
    collect_qubits(op, circuit.n_qubits, touched);
    int slot = 0;
    for (int q : touched) slot = std::max(slot, ready[q]);
    if (op.kind == OpKind::Conditional) {
      for (const auto& [key, l] : creg_floor)
        if (key.first == op.pred.creg) slot = std::max(slot, l);
    }
    ensure_layer(slot);
    out.layers[slot].pre_ops.push_back(static_cast<int>(i));
    for (int q : touched) ready[q] = std::max(ready[q], slot);
    if (op.kind == OpKind::Measure) creg_floor[{op.creg, op.creg_bit}] = slot;
  }
  if (out.layers.empty()) out.layers.resize(1);
  return out;
}

}  // namespace qccd::sched
