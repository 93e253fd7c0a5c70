/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/noise.hpp"

#include <cmath>

namespace qccd {

double NoiseModel::eps_2q(double theta) const {
  const double t = std::abs(normalize_angle(theta));
  QCCD_CHECK(t <= M_PI + 1e-12, "eps_2q: angle out of range");
  return uzz_slope * (t / M_PI) + uzz_offset;
}

double NoiseModel::predict_eps_eff(double theta_bar) const {
  return eps_2q(theta_bar) + 2.0 * eps_mem_per_transport;
}

void NoiseModel::validate() const {
  auto in_unit = [](double r) { return r >= 0.0 && r <= 1.0; };
  QCCD_CHECK(in_unit(uzz_offset) && in_unit(leak_per_2q) && in_unit(eps_1q) &&
                 in_unit(eps_mem_per_transport) && in_unit(eps_spam) &&
                 in_unit(eps_meas_crosstalk) && in_unit(eps_reset_crosstalk),
             "noise rates must lie in [0, 1]");
  QCCD_CHECK(uzz_slope >= 0.0 && uzz_slope + uzz_offset <= 1.0,
             "uzz angle model exceeds unit infidelity on [0, pi]");
}

std::vector<int> NoiseModel::crosstalk_neighbors(int q, int n_qubits) const {
  std::vector<int> out;
  for (int d = 1; d <= crosstalk_radius; ++d) {
    if (q - d >= 0) out.push_back(q - d);
    if (q + d < n_qubits) out.push_back(q + d);
  }
  return out;
}

namespace {

// Uniform non-identity two-qubit Pauli: index 1..15 -> (p0, p1), p = i%4, i/4.
void add_2q_pauli(ErrorAction& act, int q0, int q1, std::uint64_t idx) {
  const int p0 = static_cast<int>(idx % 4);
  const int p1 = static_cast<int>(idx / 4);
  if (p0 != 0) act.paulis.emplace_back(q0, p0);
  if (p1 != 0) act.paulis.emplace_back(q1, p1);
}

void add_depolarizing_1q(ErrorAction& act, int q, double eps, Rng& rng) {
  // Average infidelity eps corresponds to total Pauli probability (3/2) eps.
  const double qtot = 1.5 * eps;
  if (qtot > 0.0 && rng.bernoulli(qtot))
    act.paulis.emplace_back(q, 1 + static_cast<int>(rng.uniform_int(3)));
}

}  // namespace

ErrorAction sample_channel(const Operation& op, const NoiseModel& model,
                           int n_qubits, Rng& rng) {
  ErrorAction act;
  switch (op.kind) {
    case OpKind::UZZ: {
      const double eps = model.eps_2q(op.theta());
      // Process fidelity 1-q with q = (5/4) eps for the uniform 2Q
      // stochastic Pauli (average infidelity is (4/5) q).
      const double qtot = 1.25 * eps;
      if (qtot > 0.0 && rng.bernoulli(qtot))
        add_2q_pauli(act, op.qubits[0], op.qubits[1], 1 + rng.uniform_int(15));
      if (model.leak_per_2q > 0.0 && rng.bernoulli(model.leak_per_2q))
        act.leak_qubit = op.qubits[rng.uniform_int(2)];
      break;
    }
    case OpKind::Rot1Q:
      add_depolarizing_1q(act, op.qubits[0], model.eps_1q, rng);
      break;
    case OpKind::Measure: {
      for (int nb : model.crosstalk_neighbors(op.qubits[0], n_qubits))
        add_depolarizing_1q(act, nb, model.eps_meas_crosstalk, rng);
      break;
    }
    case OpKind::Reset: {
      for (int nb : model.crosstalk_neighbors(op.qubits[0], n_qubits))
        add_depolarizing_1q(act, nb, model.eps_reset_crosstalk, rng);
      break;
    }
    default:
      break;
  }
  return act;
}

ErrorAction sample_transport_layer(const NoiseModel& model, int n_qubits,
                                   Rng& rng) {
  ErrorAction act;
  const double p = 1.5 * model.eps_mem_per_transport;
  if (p <= 0.0) return act;
  for (int q = 0; q < n_qubits; ++q)
    if (rng.bernoulli(p)) act.paulis.emplace_back(q, 3);
  return act;
}

}  // namespace qccd
