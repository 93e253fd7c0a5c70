/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/rb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qccd/clifford.hpp"
#include "qccd/haar.hpp"
#include "qccd/kak.hpp"
#include "qccd/layering.hpp"

namespace qccd::rb {

namespace {

/// Uniform n-qubit Pauli; returns per-qubit indices and the bitstring it
/// maps |0...0> to (X and Y components flip bits).
std::uint64_t random_pauli(int n, Rng& rng, std::vector<int>& paulis) {
  paulis.resize(n);
  std::uint64_t target = 0;
  for (int q = 0; q < n; ++q) {
    paulis[q] = static_cast<int>(rng.uniform_int(4));
    if (paulis[q] == 1 || paulis[q] == 2) target |= (std::uint64_t{1} << q);
  }
  return target;
}

void append_pauli_ops(Circuit& c, const std::vector<int>& paulis) {
  for (std::size_t q = 0; q < paulis.size(); ++q)
    if (paulis[q] != 0)
      c.append(Operation::rot1q(static_cast<int>(q),
                                gates::pauli(paulis[q])));
}

}  // namespace

RBSpec RBSpec::defaults(RBKind kind) {
  RBSpec s;
  s.kind = kind;
  switch (kind) {
    case RBKind::Clifford1Q:
      s.lengths = {2, 32, 128, 512};
      s.repetitions = 30;
      s.shots = 100;
      break;
    case RBKind::Clifford2Q:
      s.lengths = {2, 16, 64, 128};
      s.repetitions = 30;
      s.shots = 100;
      break;
    case RBKind::SU4:
      s.lengths = {2, 8, 32, 64};
      s.repetitions = 15;
      s.shots = 100;
      break;
    case RBKind::Direct:
      s.lengths = {4, 50, 100};
      s.repetitions = 10;
      s.shots = 100;
      break;
    case RBKind::Transport1Q:
      s.lengths = {2, 16, 32, 64};
      s.repetitions = 2;
      s.shots = 200;
      break;
  }
  return s;
}

void RBSpec::validate() const {
  QCCD_CHECK(!lengths.empty() && repetitions > 0 && shots > 0,
             "rb spec needs lengths, repetitions and shots");
  QCCD_CHECK(std::is_sorted(lengths.begin(), lengths.end()) &&
                 std::adjacent_find(lengths.begin(), lengths.end()) ==
                     lengths.end(),
             "rb lengths must be strictly increasing");
  QCCD_CHECK(final_random_pauli, "the final random Pauli is always applied");
}

std::vector<RBCircuit> gen_clifford_rb(const RBSpec& spec, std::uint64_t seed) {
  spec.validate();
  QCCD_CHECK(spec.kind == RBKind::Clifford1Q || spec.kind == RBKind::Clifford2Q,
             "gen_clifford_rb handles the Clifford kinds");
  const bool two_qubit = spec.kind == RBKind::Clifford2Q;
  const int n = two_qubit ? 2 : 1;

  std::vector<RBCircuit> out;
  std::uint64_t index = 0;
  for (int length : spec.lengths) {
    for (int rep = 0; rep < spec.repetitions; ++rep, ++index) {
      Rng rng(derive_seed(seed, "rb-circuit", index));
      RBCircuit rc;
      rc.n_qubits_measured = n;
      Circuit& c = rc.circuit;
      c.n_qubits = n;
      c.add_creg("m", n);
      rc.length = length;

      if (two_qubit) {
        Mat4 total = Mat4::Identity();
        for (int i = 0; i < length; ++i) {
          const clifford::Clifford2 el = clifford::sample_c2(rng);
          el.append_ops(c, 0, 1);
          total = el.matrix() * total;
          rc.body_uzz += el.uzz_count();
        }
        const clifford::Clifford2 inv =
            clifford::c2_from_matrix(total.adjoint().eval());
        inv.append_ops(c, 0, 1);
      } else {
        Mat2 total = Mat2::Identity();
        for (int i = 0; i < length; ++i) {
          const int el = clifford::sample_c1(rng);
          c.append(Operation::rot1q(0, clifford::c1_elements()[el]));
          total = clifford::c1_elements()[el] * total;
        }
        c.append(Operation::rot1q(
            0, clifford::c1_elements()[clifford::c1_index_of(
                   total.adjoint().eval())]));
      }

      std::vector<int> paulis;
      rc.target = random_pauli(n, rng, paulis);
      append_pauli_ops(c, paulis);
      for (int q = 0; q < n; ++q) c.append(Operation::measure(q, "m", q));
      out.push_back(std::move(rc));
    }
  }
  return out;
}

std::vector<RBCircuit> gen_su4_rb(const RBSpec& spec, std::uint64_t seed) {
  spec.validate();
  QCCD_CHECK(spec.kind == RBKind::SU4, "gen_su4_rb needs the SU4 kind");
  std::vector<RBCircuit> out;
  std::uint64_t index = 0;
  for (int length : spec.lengths) {
    for (int rep = 0; rep < spec.repetitions; ++rep, ++index) {
      Rng rng(derive_seed(seed, "su4-circuit", index));
      RBCircuit rc;
      rc.n_qubits_measured = 2;
      Circuit& c = rc.circuit;
      c.n_qubits = 2;
      c.add_creg("m", 2);
      rc.length = length;

      Mat4 total = Mat4::Identity();
      for (int i = 0; i < length; ++i) {
        const Mat4 u = sample_haar_4(rng);
        kak_decompose(u).append_ops(c, 0, 1);
        total = u * total;
        rc.body_uzz += 3;
      }
      kak_decompose(total.adjoint().eval()).append_ops(c, 0, 1);

      std::vector<int> paulis;
      rc.target = random_pauli(2, rng, paulis);
      append_pauli_ops(c, paulis);
      c.append(Operation::measure(0, "m", 0));
      c.append(Operation::measure(1, "m", 1));
      out.push_back(std::move(rc));
    }
  }
  return out;
}

std::vector<RBCircuit> gen_direct_rb(double theta, const RBSpec& spec,
                                     std::uint64_t seed) {
  spec.validate();
  QCCD_CHECK(theta >= 0.0 && theta <= M_PI_2 + 1e-12,
             "direct RB angle must lie in [0, pi/2]");
  std::vector<RBCircuit> out;
  std::uint64_t index = 0;
  for (int length : spec.lengths) {
    for (int rep = 0; rep < spec.repetitions; ++rep, ++index) {
      Rng rng(derive_seed(seed, "direct-circuit", index));
      RBCircuit rc;
      rc.n_qubits_measured = 2;
      Circuit& c = rc.circuit;
      c.n_qubits = 2;
      c.add_creg("m", 2);
      rc.length = length;

      Mat4 total = Mat4::Identity();
      for (int i = 0; i < length; ++i) {
        const Mat2 u0 = sample_haar_2(rng);
        const Mat2 u1 = sample_haar_2(rng);
        c.append(Operation::rot1q(0, u0));
        c.append(Operation::rot1q(1, u1));
        c.append(Operation::uzz(0, 1, theta));
        total = gates::uzz(theta) * gates::kron(u1, u0) * total;
        rc.body_uzz += 1;
      }
      // Exact inversion compiled into three UZZ(pi/2) gates.
      kak_decompose(total.adjoint().eval()).append_ops(c, 0, 1);

      std::vector<int> paulis;
      rc.target = random_pauli(2, rng, paulis);
      append_pauli_ops(c, paulis);
      c.append(Operation::measure(0, "m", 0));
      c.append(Operation::measure(1, "m", 1));
      out.push_back(std::move(rc));
    }
  }
  return out;
}

void append_leakage_gadget(Circuit& c, const std::vector<int>& targets,
                           const std::vector<int>& ancillas) {
  QCCD_CHECK(targets.size() == ancillas.size(),
             "one ancilla per gadget target");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t j = 0; j < targets.size(); ++j)
      QCCD_CHECK(targets[i] != ancillas[j], "gadget ancilla collides with target");
  }
  if (!c.cregs.count("leak"))
    c.add_creg("leak", static_cast<int>(targets.size()));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const int q = targets[i], a = ancillas[i];
    c.append(Operation::rot1q(a, gates::pauli_x()));  // ancilla in |1>
    c.append(Operation::barrier({a, q}));
    // Net action X_a (x) I_q; with the 2Q couplings removed, the 1Q gates
    // on the ancilla compose to the identity and the ancilla stays |1>.
    c.append(Operation::rot1q(a, gates::ry(M_PI_2)));
    c.append(Operation::uzz(a, q, M_PI_2));
    c.append(Operation::rot1q(a, gates::pauli_x()));
    c.append(Operation::rot1q(q, gates::pauli_x()));
    c.append(Operation::uzz(a, q, M_PI_2));
    c.append(Operation::rot1q(a, (gates::ry(-M_PI_2) * gates::pauli_x()).eval()));
    c.append(Operation::rot1q(q, gates::pauli_y()));
    c.append(Operation::barrier({a, q}));
    c.append(Operation::measure(a, "leak", static_cast<int>(i)));
  }
}

namespace {

struct PerCircuitRates {
  std::vector<stats::CircuitOutcome> survival;  // x = length
  std::vector<stats::CircuitOutcome> unleaked;  // x = body gate count
};

PerCircuitRates collect_rates(const std::vector<RBCircuit>& circuits,
                              const std::vector<ShotRecords>& records,
                              bool with_gadget) {
  PerCircuitRates out;
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    const auto& rc = circuits[i];
    const auto& rec = records[i];
    int surv = 0, clean = 0;
    for (const auto& s : rec.shots) {
      surv += s.cregs.at("m") == rc.target;
      if (with_gadget) clean += s.cregs.at("leak") == 0;
    }
    out.survival.push_back({static_cast<double>(rc.length),
                            static_cast<double>(surv) / rec.n_shots(),
                            rec.n_shots()});
    if (with_gadget)
      out.unleaked.push_back({static_cast<double>(rc.body_uzz),
                              static_cast<double>(clean) / rec.n_shots(),
                              rec.n_shots()});
  }
  return out;
}

std::vector<stats::DecayPoint> pool_by_length(
    const std::vector<stats::CircuitOutcome>& outcomes) {
  std::map<double, std::pair<double, int>> acc;  // x -> (sum successes, shots)
  for (const auto& c : outcomes) {
    acc[c.x].first += c.rate * c.shots;
    acc[c.x].second += c.shots;
  }
  std::vector<stats::DecayPoint> pts;
  for (const auto& [x, sp] : acc)
    pts.push_back({x, sp.first / sp.second, sp.second});
  return pts;
}

double eps_from_fit(const RBSpec& spec, const stats::DecayFit& fit) {
  switch (spec.kind) {
    case RBKind::Clifford1Q:
    case RBKind::Transport1Q:
      return stats::rb_infidelity(fit, 1);
    case RBKind::Clifford2Q:
      return stats::rb_infidelity(fit, 2, /*per_gate_2q=*/true);
    case RBKind::SU4:
      return stats::rb_infidelity(fit, 2);
    case RBKind::Direct:
      if (fit.model == stats::DecayModel::TwoExp ||
          fit.model == stats::DecayModel::TwoExpTied)
        return stats::irrep_fidelity(fit).avg_infidelity;
      return stats::rb_infidelity(fit, 2);
  }
  throw Error("unknown rb kind");
}

}  // namespace

RBAnalysis run_rb_experiment(const RBSpec& spec,
                             const std::optional<NoiseModel>& noise,
                             std::uint64_t seed, bool with_gadget,
                             const RunOptions& opts) {
  spec.validate();
  std::vector<RBCircuit> circuits;
  switch (spec.kind) {
    case RBKind::Clifford1Q:
    case RBKind::Clifford2Q:
      circuits = gen_clifford_rb(spec, seed);
      break;
    case RBKind::SU4:
      circuits = gen_su4_rb(spec, seed);
      break;
    case RBKind::Direct:
      circuits = gen_direct_rb(spec.theta, spec, seed);
      break;
    case RBKind::Transport1Q:
      throw Error("use run_transport_rb for the transport kind");
  }
  const int nq = circuits.front().n_qubits_measured;
  if (with_gadget) {
    for (auto& rc : circuits) {
      std::vector<int> targets, ancillas;
      for (int q = 0; q < nq; ++q) {
        targets.push_back(q);
        ancillas.push_back(nq + q);
      }
      rc.circuit.n_qubits = 2 * nq;
      append_leakage_gadget(rc.circuit, targets, ancillas);
    }
  }

  std::vector<ShotRecords> records(circuits.size());
  for (std::size_t i = 0; i < circuits.size(); ++i)
    records[i] = run_circuit(circuits[i].circuit, noise,
                             derive_seed(seed, "rb-run", i), spec.shots, opts);
  const PerCircuitRates rates = collect_rates(circuits, records, with_gadget);

  // Model selection: direct RB near theta = 0 is a local twirl whose
  // double-exponential decay feeds the irrep analysis. The survival state
  // is always a basis state, so the two amplitudes are tied 2:1.
  const bool twoexp = spec.kind == RBKind::Direct && spec.theta < 1e-3;
  const auto model =
      twoexp ? stats::DecayModel::TwoExpTied : stats::DecayModel::RB;

  RBAnalysis out;
  out.survival = rates.survival;
  out.fit = stats::fit_decay(pool_by_length(rates.survival), model, nq);
  out.eps = eps_from_fit(spec, out.fit);
  const auto eps_stat = [&](const std::vector<stats::CircuitOutcome>& data) {
    return eps_from_fit(spec, stats::fit_decay(pool_by_length(data), model, nq));
  };
  out.eps_stderr =
      stats::bootstrap(rates.survival, eps_stat, 1000,
                       derive_seed(seed, "rb-boot"))
          .stderr_est;

  if (with_gadget) {
    out.leak_fit = stats::fit_decay(pool_by_length(rates.unleaked),
                                    stats::DecayModel::Leakage, nq);
    out.leak_rate = out.leak_fit->params.at("r_L");
    const auto leak_stat = [&](const std::vector<stats::CircuitOutcome>& data) {
      return stats::fit_decay(pool_by_length(data), stats::DecayModel::Leakage,
                              nq)
          .params.at("r_L");
    };
    out.leak_stderr =
        stats::bootstrap(rates.unleaked, leak_stat, 1000,
                         derive_seed(seed, "leak-boot"))
            .stderr_est;
  }
  return out;
}

CrosstalkResult run_crosstalk_depump(CrosstalkKind kind,
                                     const std::vector<int>& lengths, int shots,
                                     const std::optional<NoiseModel>& noise,
                                     std::uint64_t seed) {
  CrosstalkResult out;
  for (std::size_t li = 0; li < lengths.size(); ++li) {
    CircuitBuilder b(2);
    b.creg("m", 1).creg("scratch", 1);
    b.x(0);  // spectator bright state
    for (int i = 0; i < lengths[li]; ++i) {
      if (kind == CrosstalkKind::Measure)
        b.measure(1, "scratch", 0);
      else
        b.reset(1);
    }
    b.measure(0, "m", 0);
    const auto rec = run_circuit(b.build(), noise,
                                 derive_seed(seed, "xtalk", li), shots);
    out.points.push_back({static_cast<double>(lengths[li]),
                          rec.fraction_equal("m", 1), shots});
  }
  out.fit = stats::fit_decay(out.points,
                             kind == CrosstalkKind::Measure
                                 ? stats::DecayModel::CrosstalkMeas
                                 : stats::DecayModel::CrosstalkReset,
                             1);
  out.eps = stats::crosstalk_infidelity(out.fit);
  return out;
}

std::vector<stats::DecayPoint> synth_depump_points(
    CrosstalkKind kind, double amplitude, double rate,
    const std::vector<int>& lengths, int shots, std::uint64_t seed) {
  const auto model = kind == CrosstalkKind::Measure
                         ? stats::DecayModel::CrosstalkMeas
                         : stats::DecayModel::CrosstalkReset;
  std::vector<stats::DecayPoint> pts;
  for (std::size_t li = 0; li < lengths.size(); ++li) {
    Rng rng(derive_seed(seed, "synth-depump", li));
    const double p =
        stats::eval_decay(model, 1, {amplitude, rate}, lengths[li]);
    int k = 0;
    for (int s = 0; s < shots; ++s) k += rng.bernoulli(p);
    pts.push_back({static_cast<double>(lengths[li]),
                   static_cast<double>(k) / shots, shots});
  }
  return pts;
}

SpamResult spam_experiment(int n_qubits, int shots,
                           const std::optional<NoiseModel>& noise,
                           std::uint64_t seed) {
  SpamResult out;
  double total_flips = 0;
  for (int q = 0; q < n_qubits; ++q) {
    double flips = 0;
    for (int prep = 0; prep < 2; ++prep) {
      CircuitBuilder b(n_qubits);
      b.creg("m", 1);
      if (prep == 1) b.x(q);
      b.measure(q, "m", 0);
      const auto rec =
          run_circuit(b.build(), noise,
                      derive_seed(seed, "spam", 2 * q + prep), shots);
      flips += rec.fraction_equal("m", prep == 0 ? 1 : 0);
    }
    out.per_qubit.push_back(flips / 2.0);
    total_flips += flips / 2.0;
  }
  out.eps = total_flips / n_qubits;
  const int n_total = 2 * shots * n_qubits;
  out.stderr_ = std::sqrt(std::max(out.eps * (1 - out.eps), 1e-12) / n_total);
  return out;
}

RBAnalysis run_transport_rb(int n_qubits, const RBSpec& spec,
                            const std::optional<NoiseModel>& noise,
                            std::uint64_t seed,
                            const sched::TrapLayout& layout) {
  spec.validate();
  QCCD_CHECK(spec.kind == RBKind::Transport1Q,
             "run_transport_rb needs the transport kind");
  QCCD_CHECK(n_qubits % 2 == 0, "transport RB needs an even qubit count");

  // Dummy gates are laser-free: they schedule like 2Q gates but carry no
  // gate or leakage error.
  std::optional<NoiseModel> transport_noise = noise;
  if (transport_noise) {
    transport_noise->uzz_slope = 0.0;
    transport_noise->uzz_offset = 0.0;
    transport_noise->leak_per_2q = 0.0;
  }

  std::vector<stats::CircuitOutcome> survival;
  std::uint64_t index = 0;
  for (int length : spec.lengths) {
    for (int rep = 0; rep < spec.repetitions; ++rep, ++index) {
      Rng rng(derive_seed(seed, "transport-circuit", index));
      Circuit c(n_qubits);
      c.add_creg("m", n_qubits);
      std::vector<Mat2> totals(n_qubits, Mat2::Identity());
      for (int step = 0; step < length; ++step) {
        for (int q = 0; q < n_qubits; ++q) {
          const int el = clifford::sample_c1(rng);
          c.append(Operation::rot1q(q, clifford::c1_elements()[el]));
          totals[q] = clifford::c1_elements()[el] * totals[q];
        }
        // Random perfect pairing for the dummy layer.
        std::vector<int> order(n_qubits);
        std::iota(order.begin(), order.end(), 0);
        for (int i = n_qubits - 1; i > 0; --i)
          std::swap(order[i], order[rng.uniform_int(i + 1)]);
        for (int i = 0; i < n_qubits; i += 2)
          c.append(Operation::uzz(order[i], order[i + 1], 0.0));
      }
      std::uint64_t target = 0;
      for (int q = 0; q < n_qubits; ++q) {
        c.append(Operation::rot1q(
            q, clifford::c1_elements()[clifford::c1_index_of(
                   totals[q].adjoint().eval())]));
        const int pauli = static_cast<int>(rng.uniform_int(4));
        if (pauli != 0) c.append(Operation::rot1q(q, gates::pauli(pauli)));
        if (pauli == 1 || pauli == 2) target |= (std::uint64_t{1} << q);
      }
      for (int q = 0; q < n_qubits; ++q) c.append(Operation::measure(q, "m", q));

      const auto layered = sched::layer_circuit(c);
      const auto plan = sched::schedule(layered, c, layout);
      const Circuit flat = layered.flatten(c);
      RunOptions opts;
      opts.transport_layers_before = plan.transport_layers_before;
      const auto rec = run_circuit(flat, transport_noise,
                                   derive_seed(seed, "transport-run", index),
                                   spec.shots, opts);
      for (int q = 0; q < n_qubits; ++q) {
        int surv = 0;
        for (const auto& s : rec.shots)
          surv += ((s.cregs.at("m") >> q) & 1) ==
                  ((target >> q) & 1);
        survival.push_back({static_cast<double>(length),
                            static_cast<double>(surv) / rec.n_shots(),
                            rec.n_shots()});
      }
    }
  }

  RBAnalysis out;
  out.survival = survival;
  out.fit = stats::fit_decay(pool_by_length(survival), stats::DecayModel::RB, 1);
  out.eps = stats::rb_infidelity(out.fit, 1);
  const auto eps_stat = [&](const std::vector<stats::CircuitOutcome>& data) {
    return stats::rb_infidelity(
        stats::fit_decay(pool_by_length(data), stats::DecayModel::RB, 1), 1);
  };
  out.eps_stderr = stats::bootstrap(survival, eps_stat, 1000,
                                    derive_seed(seed, "transport-boot"))
                       .stderr_est;
  return out;
}

}  // namespace qccd::rb
