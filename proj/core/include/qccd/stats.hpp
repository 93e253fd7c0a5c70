/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qccd/seed.hpp"

namespace qccd::stats {

/// Decay model families used by the benchmark analyses. All asymptotes
/// are fixed, not fitted.
enum class DecayModel {
  RB,             // A r^l + 1/2^N
  Leakage,        // A (1 - r)^l
  CrosstalkMeas,  // (1/3) (2 - A + (4A - 2) e^{-3 r l})
  CrosstalkReset, // 1 - A + (1/3) e^{-5 r l} (2 + e^{3 r l}) (2A - 1)
  TwoExp,         // A1 r1^l + A2 r2^l + 1/4
  TwoExpTied,     // s (r1^l / 2 + r2^l / 4) + 1/4
  MirrorU,        // A u^{l-1}
};

struct DecayPoint {
  double length = 0;
  double success = 0;  // observed success fraction
  int shots = 0;       // total shots behind the fraction (binomial weight)
};

struct DecayFit {
  DecayModel model = DecayModel::RB;
  int n_qubits = 1;
  std::map<std::string, double> params;
  std::map<std::string, double> stderrs;
  double chi2 = 0.0;
  int n_points = 0;
  bool converged = true;
};

/// Weighted least squares with binomial variance weights, damped
/// Gauss-Newton with box constraints and three starts. Requires at least
/// 3 distinct lengths (5 for TwoExp).
DecayFit fit_decay(const std::vector<DecayPoint>& points, DecayModel model,
                   int n_qubits = 1);

/// Average infidelity from an RB decay: (2^N - 1)/2^N (1 - r). When
/// `per_gate_2q` is set the 2Q-Clifford result is divided by the average
/// UZZ(pi/2) count per Clifford (1.5) to report a per-gate number.
double rb_infidelity(const DecayFit& fit, int n_qubits,
                     bool per_gate_2q = false);

/// Scattering-rate conversions: measurement eps = 5 r / 6,
/// reset eps = 5 r / 3.
double crosstalk_infidelity(const DecayFit& fit);

/// Local-twirl irrep analysis of a two-exponential fit: entanglement
/// fidelity F = (1 + 6 r1 + 9 r2)/16 and average infidelity
/// (d/(d+1))(1-F), d = 4. The tied variant pins the amplitudes at the
/// 2:1 ratio every basis-state survival target has, which keeps r1/r2
/// identifiable when the two decays coincide.
struct IrrepFidelity {
  double entanglement_fidelity;
  double avg_infidelity;
};
IrrepFidelity irrep_fidelity(const DecayFit& fit);

/// One benchmark circuit's aggregated outcome.
struct CircuitOutcome {
  double x = 0;       // covariate (sequence length etc.)
  double rate = 0;    // observed success fraction
  int shots = 0;
};

enum class BootstrapMethod { NormalTwoSigma, ReversePercentile };

struct BootstrapResult {
  double mean = 0;
  double lo = 0, hi = 0;  // two-sigma (or 95.45% percentile-based) interval
  double stderr_est = 0;
};

/// Semi-parametric bootstrap: circuits are resampled with replacement
/// within each distinct x stratum, then each selected circuit's shots are
/// re-drawn from a binomial at its observed rate. Deterministic given the
/// seed (per-resample sub-seeds).
BootstrapResult bootstrap(
    const std::vector<CircuitOutcome>& data,
    const std::function<double(const std::vector<CircuitOutcome>&)>& statistic,
    int resamples, std::uint64_t seed,
    BootstrapMethod method = BootstrapMethod::NormalTwoSigma);

/// Model evaluation shared with the fitter (used by synthetic-data tests).
double eval_decay(DecayModel model, int n_qubits, const std::vector<double>& p,
                  double length);
std::vector<std::string> param_names(DecayModel model);

}  // namespace qccd::stats
