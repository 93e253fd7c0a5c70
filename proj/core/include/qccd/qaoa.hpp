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

/// MaxCut on unweighted 3-regular graphs via alternating cost / mixer
/// layers from |+>^N. Each cost term exp(-i gamma (1 - Z_i Z_j)/2) is a
/// single UZZ(-gamma) up to phase; the mixer is Rx(2 beta) per qubit.
struct QAOASpec {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // 3-regular
  std::vector<double> gammas, betas;       // one per layer
  int shots = 200;

  int layers() const { return static_cast<int>(gammas.size()); }
  void validate() const;
};

/// The 3-regular cube graph on 8 vertices (single-bit-flip edges).
std::vector<std::pair<int, int>> cube_graph();

Circuit qaoa_circuit(const QAOASpec& spec);

/// Exact cost expectation <H_C> (number of cut edges) by state-vector
/// evaluation; deterministic, used as the optimizer objective when
/// shots = 0 is requested.
double qaoa_exact_energy(const QAOASpec& spec);

struct EnergyEstimate {
  double mean = 0;
  double lo = 0, hi = 0;  // reverse-percentile bootstrap interval
  double stderr_est = 0;
  int best_cut = 0;
};

/// Sampled cost estimate with reverse-percentile bootstrap error bars.
EnergyEstimate qaoa_energy(const QAOASpec& spec,
                           const std::optional<NoiseModel>& noise,
                           std::uint64_t seed, const RunOptions& opts = {});

struct OptimizerConfig {
  double initial_radius = 0.4;
  double param_tol = 1e-3;  // terminate when the trust radius shrinks here
  int max_evals = 600;
};

struct OptimizerTrace {
  std::vector<std::pair<std::vector<double>, double>> evals;  // params, energy
  std::vector<double> best_params;  // gammas then betas
  double best_energy = 0;
  bool converged = false;
};

/// Derivative-free trust-region search (full quadratic interpolation
/// model, shrinking radius) maximizing <H_C>. Deterministic given the
/// seed; shots = 0 evaluates exactly.
OptimizerTrace qaoa_optimize(const QAOASpec& spec_template,
                             const OptimizerConfig& config,
                             const std::optional<NoiseModel>& noise,
                             std::uint64_t seed,
                             std::vector<double> initial_params = {});

}  // namespace qccd::apps
