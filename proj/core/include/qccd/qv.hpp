/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>

#include "qccd/noise.hpp"
#include "qccd/simulator.hpp"
#include "qccd/stats.hpp"

namespace qccd::sysbench {

struct QVSpec {
  int n_qubits = 0;
  int circuits = 200;
  int shots = 100;
};

struct QVCircuit {
  Circuit circuit;
  std::vector<double> ideal_probs;
  std::vector<char> heavy;  // heavy-set membership per basis index
  double ideal_heavy_mass = 0;
};

/// N rounds of random perfect pairings with Haar SU(4) elements compiled
/// into three UZZ(pi/2) gates each (odd N idles one qubit per round).
std::vector<QVCircuit> gen_qv(const QVSpec& spec, std::uint64_t seed);

/// Heavy set: the 2^{N-1} bitstrings of largest ideal probability, ties
/// at the median resolved by ascending bitstring order. The mask selects
/// at least half the ideal mass.
std::vector<char> heavy_set(const std::vector<double>& probs, double* mass);

struct HeavyOutputRecord {
  int circuit_id = 0;
  double ideal_heavy_mass = 0;
  double observed_fraction = 0;
  int shots = 0;
};

struct QVResult {
  double mean_hop = 0;
  double lo = 0, hi = 0;  // two-sigma bootstrap interval
  bool pass = false;
  double eps_eff = 0;  // inferred effective per-2Q-gate infidelity
  int mean_uzz = 0;
  std::vector<HeavyOutputRecord> records;
};

/// Pass iff the bootstrap lower two-sigma bound clears 2/3. The error
/// inference maps each circuit's observed heavy fraction onto a fidelity
/// by linear interpolation between the decohered point (HOP 1/2) and the
/// circuit's ideal HOP, then attributes the fidelity to the 2Q gates
/// after removing the readout contribution at eps_spam.
QVResult analyze_qv(const std::vector<HeavyOutputRecord>& records,
                    int n_qubits, int mean_uzz, std::uint64_t seed,
                    double eps_spam = 1.6e-3);

QVResult run_qv(const QVSpec& spec, const std::optional<NoiseModel>& noise,
                std::uint64_t seed, const RunOptions& opts = {});

}  // namespace qccd::sysbench
