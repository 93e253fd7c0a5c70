/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/ghz.hpp"

#include <bit>
#include <cmath>

namespace qccd::sysbench {

namespace {

void append_cnot(Circuit& c, int control, int target) {
  c.append(Operation::rot1q(target, gates::hadamard()));
  c.append(Operation::uzz(control, target, -M_PI_2));
  c.append(Operation::rot1q(target,
                            (gates::rx(M_PI_2) * gates::hadamard()).eval()));
  c.append(Operation::rot1q(control, gates::rz(M_PI_2)));
}

Circuit ghz_log_depth(int n) {
  Circuit c(n);
  c.append(Operation::rot1q(0, gates::hadamard()));
  for (int step = 1; step < n; step *= 2)
    for (int i = 0; i < step && i + step < n; ++i)
      append_cnot(c, i, i + step);
  return c;
}

Circuit ghz_adaptive(int n) {
  QCCD_CHECK(n % 2 == 0, "adaptive GHZ preparation needs an even qubit count");
  Circuit c(n);
  const int pairs = n / 2;
  const int fusions = pairs - 1;
  if (fusions > 0) c.add_creg("f", fusions);

  // Bell pairs (2k, 2k+1).
  for (int k = 0; k < pairs; ++k) {
    c.append(Operation::rot1q(2 * k, gates::hadamard()));
    append_cnot(c, 2 * k, 2 * k + 1);
  }
  // One round of fusion gates, then the fused qubits are measured.
  for (int k = 0; k < fusions; ++k) append_cnot(c, 2 * k + 1, 2 * k + 2);
  for (int k = 0; k < fusions; ++k)
    c.append(Operation::measure(2 * k + 2, "f", k));
  // Feed-forward: pair j's survivor flips iff the prefix parity of the
  // fusion outcomes up to boundary j is odd.
  for (int j = 1; j <= fusions; ++j) {
    Predicate pred;
    pred.kind = Predicate::Kind::ParityEquals;
    pred.creg = "f";
    pred.mask = (std::uint64_t{1} << j) - 1;
    pred.value = 1;
    c.append(Operation::conditional(
        pred, {Operation::rot1q(2 * j + 1, gates::pauli_x())}));
  }
  // Reset the measured qubits and splice them back into the state.
  for (int k = 0; k < fusions; ++k) {
    c.append(Operation::reset(2 * k + 2));
    append_cnot(c, 2 * k + 3, 2 * k + 2);
  }
  return c;
}

}  // namespace

Circuit gen_ghz(int n_qubits, GHZMethod method) {
  QCCD_CHECK(n_qubits >= 2, "GHZ needs at least two qubits");
  return method == GHZMethod::LogDepth ? ghz_log_depth(n_qubits)
                                       : ghz_adaptive(n_qubits);
}

int ghz_gate_count(int n_qubits, GHZMethod method) {
  if (method == GHZMethod::LogDepth) return n_qubits - 1;
  return n_qubits / 2 + 2 * (n_qubits / 2 - 1);
}

double ghz_fidelity_estimate(int n_qubits, double p_all0, double p_all1,
                             const std::vector<double>& parities) {
  QCCD_CHECK(static_cast<int>(parities.size()) == n_qubits,
             "one parity setting per qubit is required");
  double coherence = 0.0;
  for (int k = 1; k <= n_qubits; ++k)
    coherence += (k % 2 == 0 ? 1.0 : -1.0) * parities[k - 1];
  return 0.5 * (p_all0 + p_all1) + coherence / (2.0 * n_qubits);
}

GHZEstimate ghz_fidelity_protocol(const Circuit& prep, int n_qubits,
                                  const std::optional<NoiseModel>& noise,
                                  std::uint64_t seed, int shots_per_basis,
                                  const RunOptions& opts) {
  QCCD_CHECK(shots_per_basis >= 50, "parity bases need at least 50 shots");
  const std::uint64_t all_ones =
      (n_qubits == 64) ? ~std::uint64_t{0}
                       : ((std::uint64_t{1} << n_qubits) - 1);

  GHZEstimate out;
  // Populations.
  {
    Circuit c = prep;
    if (!c.cregs.count("m")) c.add_creg("m", n_qubits);
    for (int q = 0; q < n_qubits; ++q) c.append(Operation::measure(q, "m", q));
    const auto rec = run_circuit(c, noise, derive_seed(seed, "ghz-pop"),
                                 n_qubits * shots_per_basis, opts);
    out.p_all0 = rec.fraction_equal("m", 0);
    out.p_all1 = rec.fraction_equal("m", all_ones);
  }
  // Parity settings M_k: measure cos(theta_k) X + sin(theta_k) Y on every
  // qubit via Rz(-theta_k) then Hadamard.
  out.parities.resize(n_qubits);
  std::vector<int> parity_shots(n_qubits, shots_per_basis);
  for (int k = 1; k <= n_qubits; ++k) {
    Circuit c = prep;
    if (!c.cregs.count("m")) c.add_creg("m", n_qubits);
    const double theta = k * M_PI / n_qubits;
    for (int q = 0; q < n_qubits; ++q) {
      c.append(Operation::rot1q(q, gates::rz(-theta)));
      c.append(Operation::rot1q(q, gates::hadamard()));
      c.append(Operation::measure(q, "m", q));
    }
    const auto rec = run_circuit(c, noise, derive_seed(seed, "ghz-par", k),
                                 shots_per_basis, opts);
    double acc = 0.0;
    for (const auto& s : rec.shots) {
      const int ones = std::popcount(s.cregs.at("m") & all_ones);
      acc += (ones % 2 == 0) ? 1.0 : -1.0;
    }
    out.parities[k - 1] = acc / rec.n_shots();
  }
  out.fidelity =
      ghz_fidelity_estimate(n_qubits, out.p_all0, out.p_all1, out.parities);

  // Parametric bootstrap over the per-basis counts.
  const int resamples = 500;
  const int pop_shots = n_qubits * shots_per_basis;
  std::vector<double> draws(resamples);
  for (int b = 0; b < resamples; ++b) {
    Rng rng(derive_seed(seed, "ghz-boot", b));
    auto redraw = [&](double p, int shots) {
      int k = 0;
      for (int s = 0; s < shots; ++s) k += rng.bernoulli(std::clamp(p, 0.0, 1.0));
      return static_cast<double>(k) / shots;
    };
    const double p0 = redraw(out.p_all0, pop_shots);
    const double p1 = redraw(out.p_all1, pop_shots);
    std::vector<double> pars(n_qubits);
    for (int k = 0; k < n_qubits; ++k) {
      const double up = (out.parities[k] + 1.0) / 2.0;
      pars[k] = 2.0 * redraw(up, parity_shots[k]) - 1.0;
    }
    draws[b] = ghz_fidelity_estimate(n_qubits, p0, p1, pars);
  }
  double mean = 0;
  for (double d : draws) mean += d;
  mean /= resamples;
  double var = 0;
  for (double d : draws) var += (d - mean) * (d - mean);
  out.stderr_est = std::sqrt(var / (resamples - 1));
  return out;
}

}  // namespace qccd::sysbench
