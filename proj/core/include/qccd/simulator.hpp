/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qccd/circuit.hpp"
#include "qccd/noise.hpp"
#include "qccd/state.hpp"

namespace qccd {

struct RunOptions {
  /// Hard cap on simulated qubits (memory guard).
  int max_qubits = 24;
  /// Outcome reported when measuring a leaked qubit (dark ion reads 0).
  bool leaked_reads_one = false;
  /// Shot-level parallelism; 0 = hardware concurrency.
  int threads = 1;
  /// Arrangement layers consumed before a given op index. Each layer
  /// applies the per-qubit transport dephasing channel once.
  std::map<int, int> transport_layers_before;
  /// Memory budget for noiseless-prefix checkpoints (fast path).
  std::size_t checkpoint_bytes = std::size_t{256} << 20;
};

struct ShotRecord {
  std::map<std::string, std::uint64_t> cregs;
  std::uint32_t leak_mask = 0;
};

struct ShotRecords {
  int n_qubits = 0;
  std::map<std::string, int> creg_widths;
  std::vector<ShotRecord> shots;

  int n_shots() const { return static_cast<int>(shots.size()); }
  /// Fraction of shots where `creg` reads exactly `value`.
  double fraction_equal(const std::string& creg, std::uint64_t value) const;
  /// Mean of one classical bit over shots.
  double mean_bit(const std::string& creg, int bit) const;
  std::map<std::uint64_t, int> counts(const std::string& creg) const;
};

/// Executes `shots` repetitions of `circuit`. Deterministic given
/// (circuit, noise, seed, shots): shot k draws from a sub-seed derived
/// from (seed, k), so aggregation is order-independent.
ShotRecords run_circuit(const Circuit& circuit,
                        const std::optional<NoiseModel>& noise,
                        std::uint64_t seed, int shots,
                        const RunOptions& opts = {});

/// Exact noiseless output distribution over basis states. The circuit
/// must not contain measure/reset/conditional ops.
std::vector<double> ideal_probabilities(const Circuit& circuit,
                                        const RunOptions& opts = {});

/// Noiseless final state (same preconditions as ideal_probabilities).
QuantumState ideal_state(const Circuit& circuit, const RunOptions& opts = {});

/// Exact noiseless distribution over classical register outcomes for
/// circuits with mid-circuit measurement / reset / feed-forward, by
/// enumerating measurement branches. Keys list register values in the
/// circuit's (name-sorted) register order.
std::map<std::vector<std::uint64_t>, double> exact_creg_distribution(
    const Circuit& circuit, const RunOptions& opts = {});

}  // namespace qccd
