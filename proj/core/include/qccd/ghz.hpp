/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>

#include "qccd/noise.hpp"
#include "qccd/simulator.hpp"

namespace qccd::sysbench {

enum class GHZMethod { LogDepth, Adaptive };

/// Log-depth construction: N-1 entangling gates in ceil(log2 N) rounds.
/// Adaptive construction: Bell pairs fused by mid-circuit measurement
/// with classically conditioned X corrections (prefix parity of the
/// fusion outcomes), then measured qubits are reset and re-entangled;
/// constant depth, feed-forward required. Neither variant measures the
/// state itself.
Circuit gen_ghz(int n_qubits, GHZMethod method);

/// Number of 2Q gates in the construction (31 at N = 32 log-depth,
/// 46 adaptive).
int ghz_gate_count(int n_qubits, GHZMethod method);

struct GHZEstimate {
  double fidelity = 0;
  double stderr_est = 0;
  double p_all0 = 0, p_all1 = 0;
  std::vector<double> parities;  // <M_k> for k = 1..N
};

/// Combines populations and the N rotated global parities:
///   F = (P0 + P1)/2 + (1/2N) sum_k (-1)^k <M_k>.
double ghz_fidelity_estimate(int n_qubits, double p_all0, double p_all1,
                             const std::vector<double>& parities);

/// Runs the N+1-basis protocol: one computational-basis circuit for the
/// populations and one circuit per parity operator M_k, measured after
/// rotating each qubit by Rz(-k pi / N) then Hadamard. Error bars by
/// parametric bootstrap over the per-basis shot counts.
GHZEstimate ghz_fidelity_protocol(const Circuit& prep, int n_qubits,
                                  const std::optional<NoiseModel>& noise,
                                  std::uint64_t seed, int shots_per_basis = 50,
                                  const RunOptions& opts = {});

}  // namespace qccd::sysbench
