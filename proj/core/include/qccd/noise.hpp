/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <vector>

#include "qccd/circuit.hpp"
#include "qccd/seed.hpp"

namespace qccd {

/// Stochastic error model. Average infidelities; channels are realized as
/// sampled Pauli/leak/flip events on pure-state trajectories.
/// Defaults are the zone-averaged component benchmarking results.
struct NoiseModel {
  // 2Q gate error: average infidelity eps = uzz_slope * theta/pi + uzz_offset.
  double uzz_slope = 2.9e-3;
  double uzz_offset = 0.46e-3;
  // Leakage probability per 2Q gate (one of the two qubits, chosen uniformly).
  double leak_per_2q = 3.9e-4;
  // Average infidelity per 1Q gate.
  double eps_1q = 2.5e-5;
  // Average infidelity per qubit per transport (arrangement) layer,
  // realized as pure dephasing.
  double eps_mem_per_transport = 2.2e-4;
  // Readout bit-flip probability.
  double eps_spam = 1.6e-3;
  // Depolarizing strength on declared neighbors per mid-circuit
  // measurement / reset event.
  double eps_meas_crosstalk = 4.5e-6;
  double eps_reset_crosstalk = 3.8e-6;
  // Crosstalk neighborhood half-width: qubits within this index distance
  // of a measured/reset qubit receive the crosstalk channel. 0 disables.
  int crosstalk_radius = 1;

  /// Average infidelity of UZZ(theta) from the linear angle model.
  /// theta must lie in [0, pi] after taking |theta|.
  double eps_2q(double theta) const;

  /// Effective per-2Q-gate error at mean gate angle theta_bar:
  /// eps_2q(theta_bar) + 2 * eps_mem_per_transport.
  double predict_eps_eff(double theta_bar) const;

  void validate() const;

  std::vector<int> crosstalk_neighbors(int q, int n_qubits) const;
};

/// One sampled error action attached to an operation.
struct ErrorAction {
  // (qubit, pauli index 1..3) pairs applied after the operation.
  std::vector<std::pair<int, int>> paulis;
  // Qubit that leaked, or -1.
  int leak_qubit = -1;
  bool identity() const { return paulis.empty() && leak_qubit < 0; }
};

/// Samples the stochastic error action attached to `op`.
/// 2Q gates draw a uniform two-qubit Pauli with total probability
/// (5/4) eps_2q(theta) plus a leak event; 1Q gates draw a uniform
/// single-qubit Pauli with probability (3/2) eps_1q; measure/reset draw
/// depolarizing events on the crosstalk neighborhood.
ErrorAction sample_channel(const Operation& op, const NoiseModel& model,
                           int n_qubits, Rng& rng);

/// Per-qubit dephasing for one transport layer: Z with probability
/// (3/2) eps_mem_per_transport, sampled independently per qubit.
ErrorAction sample_transport_layer(const NoiseModel& model, int n_qubits,
                                   Rng& rng);

}  // namespace qccd
