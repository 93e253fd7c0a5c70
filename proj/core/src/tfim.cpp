/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/tfim.hpp"

#include <cmath>

namespace qccd::apps {

namespace {

void append_zz(Circuit& c, int a, int b, double theta, bool clifford_gates) {
  if (!clifford_gates) {
    c.append(Operation::uzz(a, b, theta));
    return;
  }
  // exp(-i theta/2 ZZ) = CNOT Rz(theta) CNOT with each CNOT one UZZ(pi/2).
  auto cnot = [&](int ctrl, int tgt) {
    c.append(Operation::rot1q(tgt, gates::hadamard()));
    c.append(Operation::uzz(tgt, ctrl, -M_PI_2));
    c.append(Operation::rot1q(tgt, (gates::rx(M_PI_2) * gates::hadamard()).eval()));
    c.append(Operation::rot1q(ctrl, gates::rz(M_PI_2)));
  };
  cnot(b, a);
  c.append(Operation::rot1q(a, gates::rz(theta)));
  cnot(b, a);
}

}  // namespace

Circuit tfim_trotter_circuit(const TFIMSpec& spec) {
  QCCD_CHECK(spec.sites >= 2, "chain needs at least two sites");
  QCCD_CHECK(spec.steps >= 1, "at least one Trotter step");
  const int l = spec.sites;
  Circuit c(l);
  for (int q = 0; q < l; ++q)
    c.append(Operation::rot1q(q, gates::hadamard()));
  if (spec.time == 0.0) return c;

  const double theta_zz = -2.0 * spec.coupling * spec.time / spec.steps;
  const double theta_x = -2.0 * spec.field * spec.time / spec.steps;
  for (int step = 0; step < spec.steps; ++step) {
    // Ring of ZZ rotations: even bonds then odd bonds (odd L folds the
    // wrap bond into the second group).
    for (int j = 0; j + 1 < l; j += 2)
      append_zz(c, j, j + 1, theta_zz, spec.clifford_gates);
    for (int j = 1; j + 1 < l; j += 2)
      append_zz(c, j, j + 1, theta_zz, spec.clifford_gates);
    append_zz(c, l - 1, 0, theta_zz, spec.clifford_gates);
    for (int q = 0; q < l; ++q)
      c.append(Operation::rot1q(q, gates::rx(theta_x)));
  }
  return c;
}

double tfim_trotter_mean_x(const TFIMSpec& spec) {
  const QuantumState st = ideal_state(tfim_trotter_circuit(spec));
  // <X_q> = 2 Re sum_i conj(a_i) a_{i^q}.
  const auto& amps = st.amplitudes();
  double total = 0;
  for (int q = 0; q < spec.sites; ++q) {
    const std::size_t m = std::size_t{1} << q;
    double x = 0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (i & m) continue;
      x += 2.0 * (std::conj(amps[i]) * amps[i | m]).real();
    }
    total += x;
  }
  return total / spec.sites;
}

int tfim_choose_steps(const TFIMSpec& spec, double tol, int cap) {
  QCCD_CHECK(cap >= 2, "step cap too small");
  if (spec.time == 0.0) return 1;
  std::vector<double> x(cap + 1);
  for (int r = 1; r <= cap; ++r) {
    TFIMSpec s = spec;
    s.steps = r;
    s.clifford_gates = false;
    x[r] = tfim_trotter_mean_x(s);
  }
  int chosen = -1;
  for (int r = cap - 1; r >= 1; --r) {
    if (std::abs(x[r + 1] - x[r]) <= tol)
      chosen = r;
    else
      break;
  }
  QCCD_CHECK(chosen > 0, "Trotter sequence did not converge below the cap");
  return chosen;
}

MeanXEstimate tfim_measure_mean_x(const TFIMSpec& spec,
                                  const std::optional<NoiseModel>& noise,
                                  std::uint64_t seed, int shots,
                                  const RunOptions& opts) {
  Circuit c = tfim_trotter_circuit(spec);
  c.add_creg("m", spec.sites);
  for (int q = 0; q < spec.sites; ++q) {
    c.append(Operation::rot1q(q, gates::hadamard()));
    c.append(Operation::measure(q, "m", q));
  }
  const auto rec = run_circuit(c, noise, seed, shots, opts);
  double acc = 0, acc2 = 0;
  for (const auto& s : rec.shots) {
    double per_shot = 0;
    for (int q = 0; q < spec.sites; ++q)
      per_shot += ((s.cregs.at("m") >> q) & 1) ? -1.0 : 1.0;
    per_shot /= spec.sites;
    acc += per_shot;
    acc2 += per_shot * per_shot;
  }
  MeanXEstimate out;
  out.mean_x = acc / shots;
  const double var = std::max(acc2 / shots - out.mean_x * out.mean_x, 0.0);
  out.stderr_est = std::sqrt(var / shots);
  return out;
}

}  // namespace qccd::apps
