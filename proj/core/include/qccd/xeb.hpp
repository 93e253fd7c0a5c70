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

struct RCSSpec {
  int n_qubits = 0;  // tiled on a near-square grid
  int depth = 14;    // two-qubit layers
  int circuits = 10;
  int shots = 100;
};

/// Near-square factorization rows x cols = n (rows <= cols).
std::pair<int, int> rcs_grid(int n_qubits);

struct RCSCircuit {
  Circuit circuit;
  std::vector<double> ideal_probs;
  int n_fsim = 0;  // one native 2Q gate per fSim
};

/// Random circuits on the grid: per layer a 1Q gate from
/// {sqrt(X), sqrt(Y), sqrt(W)} on every qubit (never repeating the
/// previous layer's choice on that qubit), then fSim(pi/2, pi/6) on the
/// repeating E/F/G/H edge tiling, realized as one UZZ(-5 pi/12) plus a
/// label swap and 1Q dressing. A final 1Q layer precedes measurement.
std::vector<RCSCircuit> gen_rcs(const RCSSpec& spec, std::uint64_t seed);

/// The fSim(pi/2, pi/6) matrix and its native realization (test hook).
Mat4 fsim_pi2_pi6();
void append_fsim(Circuit& c, int q0, int q1);

struct XEBRecord {
  int n_qubits = 0;
  int depth = 0;
  double f_xeb = 0;
  double variance = 0;
};

/// Linear cross-entropy fidelity 2^N <P(x)> - 1 with the sampling
/// variance 2^{2N} var(P)/shots.
XEBRecord xeb_of_samples(const std::vector<double>& ideal_probs,
                         const std::vector<std::uint64_t>& samples, int depth);

/// Inverse-variance combination of per-circuit records (equal N).
XEBRecord combine_xeb(const std::vector<XEBRecord>& records);

struct XEBFit {
  double f2q = 1.0;            // effective 2Q process fidelity
  double eps_2q_avg = 0.0;     // (4/5)(1 - f2q)
  double eps_spam_held = 0.0;  // held fixed during the fit
};

/// Fits F(N) = f2q^{#2Q(N)} (1 - eps_spam)^N over the combined records,
/// holding the SPAM error fixed.
XEBFit fit_xeb_model(const std::vector<XEBRecord>& combined,
                     const std::vector<int>& uzz_counts, double eps_spam);

struct RCSRunResult {
  std::vector<XEBRecord> per_circuit;
  XEBRecord combined;
  int n_fsim = 0;
};

RCSRunResult run_rcs(const RCSSpec& spec, const std::optional<NoiseModel>& noise,
                     std::uint64_t seed, const RunOptions& opts = {});

}  // namespace qccd::sysbench
