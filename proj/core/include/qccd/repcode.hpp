/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <vector>

#include "qccd/circuit.hpp"
#include "qccd/seed.hpp"

namespace qccd::apps {

enum class RepCodeKind { BitFlip, PhaseFlip };

/// Distance-d repetition code memory: d data qubits and one reused
/// ancilla extract the d-1 stabilizers serially each round. Bit kind
/// detects injected X flips with ZZ stabilizers; phase kind is the
/// Hadamard conjugate (|+> data, XX stabilizers, Z flips).
struct RepCodeSpec {
  int distance = 3;  // odd
  int rounds = 1;
  RepCodeKind kind = RepCodeKind::BitFlip;
  double flip_prob = 0.0;       // per data qubit per round
  double meas_flip_prob = 0.0;  // readout flip on syndromes and data

  void validate() const;
};

/// Recorded syndrome history, retained so smaller-distance codes can be
/// re-decoded from the same data.
struct RepCodeShots {
  RepCodeSpec spec;
  // Per shot: rounds syndrome words (d-1 bits each) then the final data
  // readout (d bits).
  std::vector<std::vector<std::uint32_t>> syndromes;
  std::vector<std::uint32_t> final_data;
};

RepCodeShots repcode_run(const RepCodeSpec& spec, std::uint64_t seed,
                         int shots);

struct RepCodeResult {
  double logical_fidelity = 0;
  double stderr_est = 0;
  int shots_used = 0;
  int shots_excluded = 0;  // defect count exceeded the exact-matching cap
};

/// Decodes via exact minimum-weight perfect matching on the space-time
/// defect graph (syndrome differences plus the final data syndrome),
/// with boundary nodes; shots with more defects than the cap are
/// excluded and counted.
RepCodeResult repcode_decode(const RepCodeShots& shots, int defect_cap = 12);

/// Re-decodes the centered contiguous sub-chain of odd distance
/// `target_d` from recorded syndromes, without re-simulation.
RepCodeResult repcode_subsets(const RepCodeShots& shots, int target_d,
                              int defect_cap = 12);

/// Exact matching on one shot's defect list (exposed for the decoder
/// optimality property test). Returns the data-flip correction mask.
std::uint32_t mwpm_correction(const std::vector<std::pair<int, int>>& defects,
                              int distance, int defect_cap = 12);

}  // namespace qccd::apps
