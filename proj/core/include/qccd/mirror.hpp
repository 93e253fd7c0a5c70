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

struct MBSpec {
  int n_qubits = 0;  // even
  std::vector<int> lengths = {2, 4, 6, 10};
  int circuits = 10;
  int shots = 100;
};

struct MBCircuit {
  Circuit circuit;
  int length = 0;
  std::uint64_t target = 0;
};

/// Mirrored layers of random 1Q Cliffords plus UZZ(pi/2) on a random
/// perfect pairing, Pauli-randomized gate by gate so the per-layer error
/// channel twirls to stochastic Pauli; the second half inverts the first
/// and a final random Pauli scrambles the ideal outcome. A length-l
/// circuit contains 2l (N/2) two-qubit gates.
std::vector<MBCircuit> gen_mb(const MBSpec& spec, std::uint64_t seed);

/// Decay parameter of the layer channel for a uniform per-gate
/// depolarizing of average infidelity eps on every pair: the mean-square
/// non-identity Pauli fidelity
///   u = [(1 + 15 lambda^2)^{N/2} - 1] / (4^N - 1),  lambda = 1 - (4/3) eps.
/// Used as the documented N-extrapolation of the simulated calibration.
double mb_u_analytic(double eps, int n_qubits);

/// Simulation-calibrated u(eps) table at one qubit count.
struct MBCalibration {
  int n_qubits = 0;
  std::vector<double> eps_grid;
  std::vector<double> u_grid;  // decreasing in eps
  std::uint64_t seed = 0;
  int version = 1;

  /// Monotone interpolation of eps(u); throws outside the charted range.
  double invert(double u) const;
  std::string to_json() const;
  static MBCalibration from_json(const std::string& text);
};

/// Simulates MB at each grid eps (uniform 2Q depolarizing) and fits u.
MBCalibration calibrate_mb_inversion(int n_qubits,
                                     const std::vector<double>& eps_grid,
                                     std::uint64_t seed,
                                     const MBSpec& probe_spec);

struct MBResult {
  stats::DecayFit fit;
  double u = 0, u_stderr = 0;
  double eps_eff = 0;  // set when a calibration was supplied
  bool eps_valid = false;
  std::vector<stats::CircuitOutcome> survival;
};

MBResult run_mb(const MBSpec& spec, const std::optional<NoiseModel>& noise,
                std::uint64_t seed, const MBCalibration* calibration = nullptr,
                const RunOptions& opts = {});

/// Fit + inversion on already-collected survivals.
MBResult analyze_mb(const std::vector<stats::CircuitOutcome>& survival,
                    std::uint64_t seed,
                    const MBCalibration* calibration = nullptr);

}  // namespace qccd::sysbench
