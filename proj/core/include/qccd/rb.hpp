/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>

#include "qccd/circuit.hpp"
#include "qccd/noise.hpp"
#include "qccd/schedule.hpp"
#include "qccd/simulator.hpp"
#include "qccd/stats.hpp"

namespace qccd::rb {

enum class RBKind { Clifford1Q, Clifford2Q, SU4, Direct, Transport1Q };

struct RBSpec {
  RBKind kind = RBKind::Clifford1Q;
  std::vector<int> lengths;  // strictly increasing
  int repetitions = 30;      // random circuits per length
  int shots = 100;
  double theta = M_PI_2;     // Direct kind: the benchmarked gate angle
  bool final_random_pauli = true;

  /// Community-standard parameters per kind (lengths, repetitions, shots).
  static RBSpec defaults(RBKind kind);
  void validate() const;
};

/// One generated benchmark circuit with its stored ideal outcome.
struct RBCircuit {
  Circuit circuit;
  int length = 0;           // sequence length
  int body_uzz = 0;         // native 2Q gates in the sequence body
  std::uint64_t target = 0; // ideal readout of creg "m"
  int n_qubits_measured = 1;
};

std::vector<RBCircuit> gen_clifford_rb(const RBSpec& spec, std::uint64_t seed);
std::vector<RBCircuit> gen_su4_rb(const RBSpec& spec, std::uint64_t seed);
std::vector<RBCircuit> gen_direct_rb(double theta, const RBSpec& spec,
                                     std::uint64_t seed);

/// Appends the leakage detection unit for each (target, ancilla) pair:
/// the ancilla is prepared in |1>, flips to |0> iff the target is still
/// in the computational subspace, and is measured into creg "leak".
void append_leakage_gadget(Circuit& c, const std::vector<int>& targets,
                           const std::vector<int>& ancillas);

struct RBAnalysis {
  stats::DecayFit fit;
  double eps = 0;         // average infidelity per element (or per gate)
  double eps_stderr = 0;  // semi-parametric bootstrap
  std::vector<stats::CircuitOutcome> survival;  // x = sequence length
  // Leakage gadget analysis (when the gadget was attached).
  std::optional<stats::DecayFit> leak_fit;
  double leak_rate = 0, leak_stderr = 0;
};

/// Generate, simulate, fit. For Clifford2Q the reported eps is per
/// UZZ(pi/2) gate (per-Clifford value divided by 1.5); Direct switches to
/// the local-twirl irrep analysis below theta = 1e-3.
RBAnalysis run_rb_experiment(const RBSpec& spec,
                             const std::optional<NoiseModel>& noise,
                             std::uint64_t seed, bool with_gadget = false,
                             const RunOptions& opts = {});

enum class CrosstalkKind { Measure, Reset };

struct CrosstalkResult {
  stats::DecayFit fit;
  double eps = 0;
  std::vector<stats::DecayPoint> points;
};

/// Bright-state depumping: the spectator is prepared in |1> and a
/// neighbor is measured (or reset) l times; the spectator's survival is
/// fit to the corresponding depumping model.
CrosstalkResult run_crosstalk_depump(CrosstalkKind kind,
                                     const std::vector<int>& lengths, int shots,
                                     const std::optional<NoiseModel>& noise,
                                     std::uint64_t seed);

/// Draws binomial samples directly from the depumping decay laws;
/// used for fit-closure checks of the crosstalk models.
std::vector<stats::DecayPoint> synth_depump_points(
    CrosstalkKind kind, double amplitude, double rate,
    const std::vector<int>& lengths, int shots, std::uint64_t seed);

struct SpamResult {
  double eps = 0;      // mean flip probability over preparations
  double stderr_ = 0;  // binomial
  std::vector<double> per_qubit;
};

/// Prepare |0> / |1> on each qubit, measure, average the flip rates.
SpamResult spam_experiment(int n_qubits, int shots,
                           const std::optional<NoiseModel>& noise,
                           std::uint64_t seed);

/// Interleaved transport RB: per-qubit random Cliffords with a layer of
/// dummy (theta = 0, laser-free) 2Q gates on a random perfect pairing
/// between steps. The dummy layers drive the full scheduling pipeline,
/// injecting one arrangement's memory error per step; they carry no gate
/// error. Survival is pooled over qubits and fit per qubit.
RBAnalysis run_transport_rb(int n_qubits, const RBSpec& spec,
                            const std::optional<NoiseModel>& noise,
                            std::uint64_t seed,
                            const sched::TrapLayout& layout = {});

}  // namespace qccd::rb
