/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>

#include "qccd/noise.hpp"
#include "qccd/simulator.hpp"

namespace qccd::apps {

/// Transverse-field Ising quench on a periodic chain:
/// H = -J sum Z_j Z_{j+1} - h sum X_j, initial state |+>^L.
struct TFIMSpec {
  int sites = 8;       // periodic chain length
  double coupling = 1.0;  // J
  double field = 0.2;     // h
  double time = 1.0;      // evolution time t (J t in natural units)
  int steps = 1;          // Trotter steps r
  bool clifford_gates = false;  // decompose each UZZ(theta) into two UZZ(pi/2)
};

/// First-order Trotterization: r repetitions of a ring of ZZ rotations
/// (theta = -2 J t / r) followed by X rotations (-2 h t / r), after the
/// |+>^L preparation layer. The Clifford-gate mode doubles the UZZ count
/// exactly.
Circuit tfim_trotter_circuit(const TFIMSpec& spec);

/// Noiseless <X> averaged over sites at the end of the Trotter circuit.
double tfim_trotter_mean_x(const TFIMSpec& spec);

/// Smallest r such that successive noiseless <X> values stay within
/// `tol` for all r' in [r, cap). Throws if the chain never settles.
int tfim_choose_steps(const TFIMSpec& spec, double tol = 0.0025, int cap = 64);

/// Sampled estimate of <X> (measure all qubits in the X basis).
struct MeanXEstimate {
  double mean_x = 0;
  double stderr_est = 0;
};
MeanXEstimate tfim_measure_mean_x(const TFIMSpec& spec,
                                  const std::optional<NoiseModel>& noise,
                                  std::uint64_t seed, int shots,
                                  const RunOptions& opts = {});

}  // namespace qccd::apps
