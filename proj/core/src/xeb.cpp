/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/xeb.hpp"

#include <algorithm>
#include <cmath>

namespace qccd::sysbench {

std::pair<int, int> rcs_grid(int n_qubits) {
  QCCD_CHECK(n_qubits >= 2, "grid needs at least two qubits");
  int best_r = 1;
  for (int r = 1; r * r <= n_qubits; ++r)
    if (n_qubits % r == 0) best_r = r;
  QCCD_CHECK(best_r > 1 || n_qubits <= 3,
             "qubit count must factor into a near-square grid");
  return {best_r, n_qubits / best_r};
}

Mat4 fsim_pi2_pi6() {
  // exp(-i pi/4 (XX + YY)) * diag(1, 1, 1, e^{-i pi/6}).
  Mat4 m = Mat4::Zero();
  const Cplx mi(0.0, -1.0);
  m(0, 0) = 1;
  m(1, 2) = mi;
  m(2, 1) = mi;
  m(3, 3) = std::exp(Cplx(0.0, -M_PI / 6.0));
  return m;
}

void append_fsim(Circuit& c, int q0, int q1) {
  // fSim(pi/2, pi/6) = (Rz(5pi/12) (x) Rz(5pi/12)) SWAP UZZ(-5pi/12)
  //                    (Sdg (x) Sdg) up to global phase; the SWAP is a
  //                    label exchange.
  c.append(Operation::rot1q(q0, gates::sdg_gate()));
  c.append(Operation::rot1q(q1, gates::sdg_gate()));
  c.append(Operation::uzz(q0, q1, -5.0 * M_PI / 12.0));
  c.append(Operation::swap_label(q0, q1));
  c.append(Operation::rot1q(q0, gates::rz(5.0 * M_PI / 12.0)));
  c.append(Operation::rot1q(q1, gates::rz(5.0 * M_PI / 12.0)));
}

namespace {

std::vector<std::pair<int, int>> tiling_edges(int rows, int cols, int which) {
  std::vector<std::pair<int, int>> edges;
  auto id = [&](int r, int c) { return r * cols + c; };
  switch (which) {
    case 0:  // E: horizontal, even column index
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c + 1 < cols; c += 2) edges.emplace_back(id(r, c), id(r, c + 1));
      break;
    case 1:  // F: horizontal, odd column index
      for (int r = 0; r < rows; ++r)
        for (int c = 1; c + 1 < cols; c += 2) edges.emplace_back(id(r, c), id(r, c + 1));
      break;
    case 2:  // G: vertical, even row index
      for (int r = 0; r + 1 < rows; r += 2)
        for (int c = 0; c < cols; ++c) edges.emplace_back(id(r, c), id(r + 1, c));
      break;
    default:  // H: vertical, odd row index
      for (int r = 1; r + 1 < rows; r += 2)
        for (int c = 0; c < cols; ++c) edges.emplace_back(id(r, c), id(r + 1, c));
      break;
  }
  return edges;
}

}  // namespace

std::vector<RCSCircuit> gen_rcs(const RCSSpec& spec, std::uint64_t seed) {
  QCCD_CHECK(spec.depth >= 1, "depth must be at least 1");
  const auto [rows, cols] = rcs_grid(spec.n_qubits);
  const int n = spec.n_qubits;

  static const std::array<Mat2, 3> kOneQ = {gates::sqrt_x(), gates::sqrt_y(),
                                            gates::sqrt_w()};
  std::vector<RCSCircuit> out;
  for (int rep = 0; rep < spec.circuits; ++rep) {
    Rng rng(derive_seed(seed, "rcs-circuit", rep));
    RCSCircuit rc;
    Circuit& c = rc.circuit;
    c.n_qubits = n;
    c.add_creg("m", n);
    // Label swaps permute the physical wires; track the logical-to-wire
    // map so gates address the right operands.
    std::vector<int> wire(n);
    for (int q = 0; q < n; ++q) wire[q] = q;
    std::vector<int> prev_choice(n, -1);

    auto one_q_layer = [&] {
      for (int q = 0; q < n; ++q) {
        int pick = static_cast<int>(rng.uniform_int(prev_choice[q] < 0 ? 3 : 2));
        if (prev_choice[q] >= 0 && pick >= prev_choice[q]) ++pick;
        c.append(Operation::rot1q(wire[q], kOneQ[pick]));
        prev_choice[q] = pick;
      }
    };

    for (int layer = 0; layer < spec.depth; ++layer) {
      one_q_layer();
      for (const auto& [a, b] : tiling_edges(rows, cols, layer % 4)) {
        append_fsim(c, wire[a], wire[b]);
        std::swap(wire[a], wire[b]);
        ++rc.n_fsim;
      }
    }
    one_q_layer();

    {
      // The state is indexed by wires; re-index into the logical order
      // the measurement map below uses.
      const std::vector<double> by_wire = ideal_probabilities(c);
      rc.ideal_probs.assign(by_wire.size(), 0.0);
      for (std::size_t i = 0; i < by_wire.size(); ++i) {
        std::uint64_t logical = 0;
        for (int q = 0; q < n; ++q)
          if ((i >> wire[q]) & 1u) logical |= (std::uint64_t{1} << q);
        rc.ideal_probs[logical] = by_wire[i];
      }
    }
    for (int q = 0; q < n; ++q) c.append(Operation::measure(wire[q], "m", q));
    out.push_back(std::move(rc));
  }
  return out;
}

XEBRecord xeb_of_samples(const std::vector<double>& ideal_probs,
                         const std::vector<std::uint64_t>& samples, int depth) {
  QCCD_CHECK(!samples.empty(), "xeb needs samples");
  const double dim = static_cast<double>(ideal_probs.size());
  double mean = 0, m2 = 0;
  for (std::uint64_t s : samples) {
    const double p = ideal_probs[s];
    mean += p;
    m2 += p * p;
  }
  const double ns = static_cast<double>(samples.size());
  mean /= ns;
  const double var_p = std::max(m2 / ns - mean * mean, 0.0);
  XEBRecord rec;
  rec.n_qubits = static_cast<int>(std::lround(std::log2(dim)));
  rec.depth = depth;
  rec.f_xeb = dim * mean - 1.0;
  rec.variance = dim * dim * var_p / ns;
  return rec;
}

XEBRecord combine_xeb(const std::vector<XEBRecord>& records) {
  QCCD_CHECK(!records.empty(), "combine_xeb: no records");
  // Inverse-variance weighting with the variance pooled across the
  // group's circuits. At desk-scale dimensions a circuit's empirical
  // variance tracks its own fidelity (heavier ideal tails raise both),
  // so per-circuit weights would systematically pull the combination
  // low; pooling keeps the weights fidelity-independent.
  double vbar = 0;
  for (const auto& r : records) {
    QCCD_CHECK(r.n_qubits == records.front().n_qubits,
               "combine_xeb mixes qubit counts");
    QCCD_CHECK(r.variance > 0, "degenerate zero-variance record");
    vbar += r.variance;
  }
  vbar /= static_cast<double>(records.size());
  double wsum = 0, fsum = 0;
  for (const auto& r : records) {
    const double w = 1.0 / vbar;
    wsum += w;
    fsum += w * r.f_xeb;
  }
  XEBRecord out = records.front();
  out.f_xeb = fsum / wsum;
  out.variance = 1.0 / wsum;
  return out;
}

XEBFit fit_xeb_model(const std::vector<XEBRecord>& combined,
                     const std::vector<int>& uzz_counts, double eps_spam) {
  QCCD_CHECK(combined.size() == uzz_counts.size() && !combined.empty(),
             "fit_xeb_model: size mismatch");
  // One-parameter weighted least squares via golden-section search.
  auto sse = [&](double f2q) {
    double s = 0;
    for (std::size_t i = 0; i < combined.size(); ++i) {
      const double model = std::pow(f2q, uzz_counts[i]) *
                           std::pow(1.0 - eps_spam, combined[i].n_qubits);
      const double r = combined[i].f_xeb - model;
      s += r * r / std::max(combined[i].variance, 1e-12);
    }
    return s;
  };
  double lo = 0.9, hi = 1.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  for (int it = 0; it < 200; ++it) {
    if (sse(a) < sse(b)) hi = b; else lo = a;
    a = hi - gr * (hi - lo);
    b = lo + gr * (hi - lo);
  }
  XEBFit fit;
  fit.f2q = (lo + hi) / 2.0;
  fit.eps_2q_avg = 0.8 * (1.0 - fit.f2q);
  fit.eps_spam_held = eps_spam;
  return fit;
}

RCSRunResult run_rcs(const RCSSpec& spec, const std::optional<NoiseModel>& noise,
                     std::uint64_t seed, const RunOptions& opts) {
  const auto circuits = gen_rcs(spec, seed);
  RCSRunResult out;
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    const auto rec = run_circuit(circuits[i].circuit, noise,
                                 derive_seed(seed, "rcs-run", i), spec.shots,
                                 opts);
    std::vector<std::uint64_t> samples;
    samples.reserve(rec.shots.size());
    for (const auto& s : rec.shots) samples.push_back(s.cregs.at("m"));
    out.per_circuit.push_back(
        xeb_of_samples(circuits[i].ideal_probs, samples, spec.depth));
    out.n_fsim = circuits[i].n_fsim;
  }
  out.combined = combine_xeb(out.per_circuit);
  return out;
}

}  // namespace qccd::sysbench
