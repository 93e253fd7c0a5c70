/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/mirror.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qccd/clifford.hpp"

namespace qccd::sysbench {

namespace {

/// Pauli conjugation through a two-qubit Clifford, sign dropped.
int conjugate_pauli_2q(const Mat4& u, int pauli_idx) {
  const Mat4 p =
      gates::kron(gates::pauli(pauli_idx / 4), gates::pauli(pauli_idx % 4));
  const Mat4 conj = u * p * u.adjoint();
  for (int k = 0; k < 16; ++k) {
    const Mat4 cand = gates::kron(gates::pauli(k / 4), gates::pauli(k % 4));
    if (distance_up_to_phase(conj, cand) < 1e-9) return k;
  }
  throw Error("conjugation left the Pauli group");
}

struct MirrorLayer {
  std::vector<int> cliffords;           // per qubit
  std::vector<std::pair<int, int>> pairing;
  std::vector<int> twirls;              // per pair, Pauli index 0..15
};

void append_forward_layer(Circuit& c, const MirrorLayer& layer) {
  const auto& c1 = clifford::c1_elements();
  for (std::size_t q = 0; q < layer.cliffords.size(); ++q)
    c.append(Operation::rot1q(static_cast<int>(q), c1[layer.cliffords[q]]));
  for (std::size_t g = 0; g < layer.pairing.size(); ++g) {
    const auto [a, b] = layer.pairing[g];
    const int p_in = layer.twirls[g];
    const int p_out = conjugate_pauli_2q(gates::uzz(M_PI_2), p_in);
    if (p_in % 4) c.append(Operation::rot1q(a, gates::pauli(p_in % 4)));
    if (p_in / 4) c.append(Operation::rot1q(b, gates::pauli(p_in / 4)));
    c.append(Operation::uzz(a, b, M_PI_2));
    if (p_out % 4) c.append(Operation::rot1q(a, gates::pauli(p_out % 4)));
    if (p_out / 4) c.append(Operation::rot1q(b, gates::pauli(p_out / 4)));
  }
}

void append_inverse_layer(Circuit& c, const MirrorLayer& layer, Rng& rng) {
  const auto& c1 = clifford::c1_elements();
  for (std::size_t g = 0; g < layer.pairing.size(); ++g) {
    const auto [a, b] = layer.pairing[g];
    const int p_in = static_cast<int>(rng.uniform_int(16));
    const int p_out = conjugate_pauli_2q(gates::uzz(-M_PI_2), p_in);
    if (p_in % 4) c.append(Operation::rot1q(a, gates::pauli(p_in % 4)));
    if (p_in / 4) c.append(Operation::rot1q(b, gates::pauli(p_in / 4)));
    c.append(Operation::uzz(a, b, -M_PI_2));
    if (p_out % 4) c.append(Operation::rot1q(a, gates::pauli(p_out % 4)));
    if (p_out / 4) c.append(Operation::rot1q(b, gates::pauli(p_out / 4)));
  }
  for (std::size_t q = 0; q < layer.cliffords.size(); ++q)
    c.append(Operation::rot1q(
        static_cast<int>(q),
        c1[clifford::c1_inverse(layer.cliffords[q])]));
}

}  // namespace

std::vector<MBCircuit> gen_mb(const MBSpec& spec, std::uint64_t seed) {
  QCCD_CHECK(spec.n_qubits >= 2 && spec.n_qubits % 2 == 0,
             "mirror benchmarking needs an even qubit count");
  QCCD_CHECK(!spec.lengths.empty() && spec.circuits > 0, "empty MB spec");
  const int n = spec.n_qubits;

  std::vector<MBCircuit> out;
  std::uint64_t index = 0;
  for (int length : spec.lengths) {
    for (int rep = 0; rep < spec.circuits; ++rep, ++index) {
      Rng rng(derive_seed(seed, "mb-circuit", index));
      MBCircuit mc;
      mc.length = length;
      Circuit& c = mc.circuit;
      c.n_qubits = n;
      c.add_creg("m", n);

      std::vector<MirrorLayer> layers(length);
      for (auto& layer : layers) {
        layer.cliffords.resize(n);
        for (int q = 0; q < n; ++q)
          layer.cliffords[q] = clifford::sample_c1(rng);
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        for (int i = n - 1; i > 0; --i)
          std::swap(order[i], order[rng.uniform_int(i + 1)]);
        for (int i = 0; i < n; i += 2) {
          layer.pairing.emplace_back(order[i], order[i + 1]);
          layer.twirls.push_back(static_cast<int>(rng.uniform_int(16)));
        }
      }
      for (const auto& layer : layers) append_forward_layer(c, layer);
      for (auto it = layers.rbegin(); it != layers.rend(); ++it)
        append_inverse_layer(c, *it, rng);

      std::uint64_t target = 0;
      for (int q = 0; q < n; ++q) {
        const int pauli = static_cast<int>(rng.uniform_int(4));
        if (pauli != 0) c.append(Operation::rot1q(q, gates::pauli(pauli)));
        if (pauli == 1 || pauli == 2) target |= (std::uint64_t{1} << q);
      }
      mc.target = target;
      for (int q = 0; q < n; ++q) c.append(Operation::measure(q, "m", q));
      out.push_back(std::move(mc));
    }
  }
  return out;
}

double mb_u_analytic(double eps, int n_qubits) {
  const double lambda = 1.0 - (4.0 / 3.0) * eps;
  const double num =
      std::pow((1.0 + 15.0 * lambda * lambda) / 16.0, n_qubits / 2.0);
  const double denom = 1.0 - std::pow(4.0, -n_qubits);
  return (num - std::pow(4.0, -n_qubits)) / denom;
}

double MBCalibration::invert(double u) const {
  QCCD_CHECK(eps_grid.size() >= 2, "empty MB calibration");
  // u decreases with eps; find the bracketing grid cell.
  QCCD_CHECK(u <= u_grid.front() + 1e-9 && u >= u_grid.back() - 1e-9,
             "u outside the calibrated range");
  for (std::size_t i = 1; i < u_grid.size(); ++i) {
    if (u >= u_grid[i] - 1e-12) {
      const double t = (u_grid[i - 1] - u) /
                       std::max(u_grid[i - 1] - u_grid[i], 1e-12);
      return eps_grid[i - 1] + t * (eps_grid[i] - eps_grid[i - 1]);
    }
  }
  return eps_grid.back();
}

std::string MBCalibration::to_json() const {
  nlohmann::json j;
  j["n_qubits"] = n_qubits;
  j["eps_grid"] = eps_grid;
  j["u_grid"] = u_grid;
  j["seed"] = seed;
  j["version"] = version;
  return j.dump(2);
}

MBCalibration MBCalibration::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  MBCalibration c;
  c.n_qubits = j.at("n_qubits");
  c.eps_grid = j.at("eps_grid").get<std::vector<double>>();
  c.u_grid = j.at("u_grid").get<std::vector<double>>();
  c.seed = j.at("seed");
  c.version = j.at("version");
  return c;
}

MBCalibration calibrate_mb_inversion(int n_qubits,
                                     const std::vector<double>& eps_grid,
                                     std::uint64_t seed,
                                     const MBSpec& probe_spec) {
  QCCD_CHECK(std::is_sorted(eps_grid.begin(), eps_grid.end()),
             "calibration grid must be increasing");
  MBCalibration cal;
  cal.n_qubits = n_qubits;
  cal.eps_grid = eps_grid;
  cal.seed = seed;
  MBSpec spec = probe_spec;
  spec.n_qubits = n_qubits;
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    NoiseModel m{};
    m.uzz_slope = 0.0;
    m.uzz_offset = eps_grid[i];
    m.leak_per_2q = m.eps_1q = m.eps_mem_per_transport = 0.0;
    m.eps_spam = m.eps_meas_crosstalk = m.eps_reset_crosstalk = 0.0;
    const MBResult res =
        run_mb(spec, m, derive_seed(seed, "mb-cal", i), nullptr);
    cal.u_grid.push_back(res.u);
  }
  // Enforce monotone decrease (tiny shot-noise wiggles collapse cells).
  for (std::size_t i = 1; i < cal.u_grid.size(); ++i)
    cal.u_grid[i] = std::min(cal.u_grid[i], cal.u_grid[i - 1] - 1e-9);
  return cal;
}

MBResult analyze_mb(const std::vector<stats::CircuitOutcome>& survival,
                    std::uint64_t seed, const MBCalibration* calibration) {
  std::map<double, std::pair<double, int>> acc;
  for (const auto& c : survival) {
    acc[c.x].first += c.rate * c.shots;
    acc[c.x].second += c.shots;
  }
  std::vector<stats::DecayPoint> pts;
  for (const auto& [x, sp] : acc) pts.push_back({x, sp.first / sp.second, sp.second});

  MBResult out;
  out.survival = survival;
  out.fit = stats::fit_decay(pts, stats::DecayModel::MirrorU, 1);
  out.u = out.fit.params.at("u");
  const auto u_stat = [](const std::vector<stats::CircuitOutcome>& data) {
    std::map<double, std::pair<double, int>> a;
    for (const auto& c : data) {
      a[c.x].first += c.rate * c.shots;
      a[c.x].second += c.shots;
    }
    std::vector<stats::DecayPoint> p;
    for (const auto& [x, sp] : a) p.push_back({x, sp.first / sp.second, sp.second});
    return stats::fit_decay(p, stats::DecayModel::MirrorU, 1).params.at("u");
  };
  out.u_stderr = stats::bootstrap(survival, u_stat, 1000,
                                  derive_seed(seed, "mb-boot"))
                     .stderr_est;
  if (calibration) {
    out.eps_eff = calibration->invert(out.u);
    out.eps_valid = true;
  }
  return out;
}

MBResult run_mb(const MBSpec& spec, const std::optional<NoiseModel>& noise,
                std::uint64_t seed, const MBCalibration* calibration,
                const RunOptions& opts) {
  const auto circuits = gen_mb(spec, seed);
  std::vector<stats::CircuitOutcome> survival;
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    const auto rec = run_circuit(circuits[i].circuit, noise,
                                 derive_seed(seed, "mb-run", i), spec.shots,
                                 opts);
    survival.push_back({static_cast<double>(circuits[i].length),
                        rec.fraction_equal("m", circuits[i].target),
                        rec.n_shots()});
  }
  return analyze_mb(survival, seed, calibration);
}

}  // namespace qccd::sysbench
