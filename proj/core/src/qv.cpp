/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/qv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qccd/haar.hpp"
#include "qccd/kak.hpp"

namespace qccd::sysbench {

std::vector<char> heavy_set(const std::vector<double>& probs, double* mass) {
  const std::size_t dim = probs.size();
  std::vector<std::uint64_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    if (probs[a] != probs[b]) return probs[a] > probs[b];
    return a < b;
  });
  std::vector<char> heavy(dim, 0);
  double m = 0;
  for (std::size_t i = 0; i < dim / 2; ++i) {
    heavy[order[i]] = 1;
    m += probs[order[i]];
  }
  if (mass) *mass = m;
  return heavy;
}

std::vector<QVCircuit> gen_qv(const QVSpec& spec, std::uint64_t seed) {
  QCCD_CHECK(spec.n_qubits >= 2 && spec.circuits > 0, "bad QV spec");
  const int n = spec.n_qubits;
  std::vector<QVCircuit> out;
  for (int rep = 0; rep < spec.circuits; ++rep) {
    Rng rng(derive_seed(seed, "qv-circuit", rep));
    QVCircuit qc;
    Circuit& c = qc.circuit;
    c.n_qubits = n;
    c.add_creg("m", n);
    for (int round = 0; round < n; ++round) {
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.uniform_int(i + 1)]);
      for (int i = 0; i + 1 < n; i += 2)
        kak_decompose(sample_haar_4(rng)).append_ops(c, order[i], order[i + 1]);
    }
    {
      Circuit unitary_part = c;
      unitary_part.ops.erase(
          std::remove_if(unitary_part.ops.begin(), unitary_part.ops.end(),
                         [](const Operation& op) {
                           return op.kind == OpKind::Measure;
                         }),
          unitary_part.ops.end());
      qc.ideal_probs = ideal_probabilities(unitary_part);
    }
    qc.heavy = heavy_set(qc.ideal_probs, &qc.ideal_heavy_mass);
    for (int q = 0; q < n; ++q) c.append(Operation::measure(q, "m", q));
    out.push_back(std::move(qc));
  }
  return out;
}

QVResult analyze_qv(const std::vector<HeavyOutputRecord>& records,
                    int n_qubits, int mean_uzz, std::uint64_t seed,
                    double eps_spam) {
  QCCD_CHECK(!records.empty(), "analyze_qv: no records");
  QVResult out;
  out.records = records;
  out.mean_uzz = mean_uzz;

  std::vector<stats::CircuitOutcome> data;
  for (const auto& r : records)
    data.push_back({0.0, r.observed_fraction, r.shots});
  const auto mean_stat = [](const std::vector<stats::CircuitOutcome>& d) {
    double m = 0;
    for (const auto& c : d) m += c.rate;
    return m / d.size();
  };
  const auto boot = stats::bootstrap(data, mean_stat, 1000,
                                     derive_seed(seed, "qv-boot"));
  out.mean_hop = mean_stat(data);
  out.lo = boot.lo;
  out.hi = boot.hi;
  out.pass = out.lo > 2.0 / 3.0;

  // Fidelity surrogate: a totally decohered sampler returns heavy
  // outputs half the time, an ideal one at the circuit's ideal mass.
  double fsum = 0;
  int fcount = 0;
  for (const auto& r : records) {
    const double denom = r.ideal_heavy_mass - 0.5;
    if (denom < 1e-6) continue;
    fsum += std::clamp((r.observed_fraction - 0.5) / denom, -0.5, 1.5);
    ++fcount;
  }
  if (fcount > 0 && mean_uzz > 0) {
    const double fbar = std::max(fsum / fcount, 1e-6);
    const double spam_term = std::pow(1.0 - eps_spam, n_qubits);
    const double f2q = std::pow(std::min(fbar / spam_term, 1.0),
                                1.0 / mean_uzz);
    out.eps_eff = 0.8 * (1.0 - f2q);  // process -> average infidelity, d = 4
  }
  return out;
}

QVResult run_qv(const QVSpec& spec, const std::optional<NoiseModel>& noise,
                std::uint64_t seed, const RunOptions& opts) {
  const auto circuits = gen_qv(spec, seed);
  std::vector<HeavyOutputRecord> records;
  int total_uzz = 0;
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    const auto rec = run_circuit(circuits[i].circuit, noise,
                                 derive_seed(seed, "qv-run", i), spec.shots,
                                 opts);
    int heavy = 0;
    for (const auto& s : rec.shots)
      heavy += circuits[i].heavy[s.cregs.at("m")];
    records.push_back({static_cast<int>(i), circuits[i].ideal_heavy_mass,
                       static_cast<double>(heavy) / rec.n_shots(),
                       rec.n_shots()});
    total_uzz += circuits[i].circuit.count_uzz();
  }
  const double eps_spam = noise ? noise->eps_spam : 0.0;
  return analyze_qv(records, spec.n_qubits,
                    total_uzz / static_cast<int>(circuits.size()), seed,
                    eps_spam);
}

}  // namespace qccd::sysbench
