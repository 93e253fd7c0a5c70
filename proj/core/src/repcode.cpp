/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/repcode.hpp"

#include <algorithm>
#include <cmath>

#include "qccd/simulator.hpp"

namespace qccd::apps {

void RepCodeSpec::validate() const {
  QCCD_CHECK(distance >= 1 && distance % 2 == 1, "distance must be odd");
  QCCD_CHECK(rounds >= 1, "at least one syndrome-extraction round");
  QCCD_CHECK(flip_prob >= 0 && flip_prob <= 1 && meas_flip_prob >= 0 &&
                 meas_flip_prob <= 1,
             "probabilities out of range");
}

RepCodeShots repcode_run(const RepCodeSpec& spec, std::uint64_t seed,
                         int shots) {
  spec.validate();
  const int d = spec.distance;
  const int anc = d;  // data qubits 0..d-1, one reused ancilla
  const bool phase = spec.kind == RepCodeKind::PhaseFlip;

  RepCodeShots out;
  out.spec = spec;
  out.syndromes.resize(shots);
  out.final_data.resize(shots);

  for (int shot = 0; shot < shots; ++shot) {
    Rng rng(derive_seed(seed, "repcode-shot", shot));
    CircuitBuilder b(d + 1);
    b.creg("data", d);
    for (int r = 0; r < spec.rounds; ++r)
      b.creg("s" + std::to_string(r), std::max(d - 1, 1));
    if (phase)
      for (int q = 0; q < d; ++q) b.h(q);

    std::vector<std::uint32_t> noisy_syndromes(spec.rounds, 0);
    for (int round = 0; round < spec.rounds; ++round) {
      const std::string sreg = "s" + std::to_string(round);
      // Injected data errors for this round.
      for (int q = 0; q < d; ++q) {
        if (rng.bernoulli(spec.flip_prob)) {
          if (phase)
            b.z(q);
          else
            b.x(q);
        }
      }
      // Serial extraction with the single reused ancilla.
      for (int i = 0; i + 1 < d; ++i) {
        b.reset(anc);
        if (phase) {
          b.h(anc);
          b.cnot(anc, i);
          b.cnot(anc, i + 1);
          b.h(anc);
        } else {
          b.cnot(i, anc);
          b.cnot(i + 1, anc);
        }
        b.measure(anc, sreg, i);
      }
    }
    if (phase)
      for (int q = 0; q < d; ++q) b.h(q);
    for (int q = 0; q < d; ++q) b.measure(q, "data", q);

    const auto rec = run_circuit(b.build(), std::nullopt,
                                 derive_seed(seed, "repcode-run", shot), 1);
    const auto& sr = rec.shots[0];
    auto flip_bits = [&](std::uint32_t word, int nbits) {
      for (int i = 0; i < nbits; ++i)
        if (rng.bernoulli(spec.meas_flip_prob)) word ^= (1u << i);
      return word;
    };
    for (int r = 0; r < spec.rounds; ++r)
      noisy_syndromes[r] = flip_bits(
          static_cast<std::uint32_t>(sr.cregs.at("s" + std::to_string(r))),
          std::max(d - 1, 1));
    out.syndromes[shot] = std::move(noisy_syndromes);
    out.final_data[shot] =
        flip_bits(static_cast<std::uint32_t>(sr.cregs.at("data")), d);
  }
  return out;
}

namespace {

int boundary_weight(int i, int d) { return std::min(i + 1, d - 1 - i); }

/// Exhaustive minimum-weight matching with boundary nodes.
double match_min(std::vector<std::pair<int, int>>& defects,
                 std::vector<char>& used, int d,
                 std::vector<std::pair<int, int>>& best_pairs,
                 std::vector<std::pair<int, int>>& cur_pairs, double cur,
                 double best) {
  std::size_t first = 0;
  while (first < used.size() && used[first]) ++first;
  if (first == used.size()) {
    if (cur < best) {
      best = cur;
      best_pairs = cur_pairs;
    }
    return best;
  }
  if (cur >= best) return best;
  used[first] = 1;
  // Match to the boundary (encoded as partner -1).
  cur_pairs.emplace_back(static_cast<int>(first), -1);
  best = match_min(defects, used, d, best_pairs, cur_pairs,
                   cur + boundary_weight(defects[first].first, d), best);
  cur_pairs.pop_back();
  // Match to another defect.
  for (std::size_t j = first + 1; j < used.size(); ++j) {
    if (used[j]) continue;
    used[j] = 1;
    const double w = std::abs(defects[first].first - defects[j].first) +
                     std::abs(defects[first].second - defects[j].second);
    cur_pairs.emplace_back(static_cast<int>(first), static_cast<int>(j));
    best = match_min(defects, used, d, best_pairs, cur_pairs, cur + w, best);
    cur_pairs.pop_back();
    used[j] = 0;
  }
  used[first] = 0;
  return best;
}

}  // namespace

std::uint32_t mwpm_correction(const std::vector<std::pair<int, int>>& defects,
                              int distance, int defect_cap) {
  QCCD_CHECK(static_cast<int>(defects.size()) <= defect_cap,
             "defect count exceeds the exact-matching cap");
  if (defects.empty()) return 0;
  std::vector<std::pair<int, int>> mutable_defects = defects;
  std::vector<char> used(defects.size(), 0);
  std::vector<std::pair<int, int>> best_pairs, cur_pairs;
  match_min(mutable_defects, used, distance, best_pairs, cur_pairs, 0.0,
            1e18);

  std::uint32_t correction = 0;
  auto flip_range = [&](int lo, int hi) {  // inclusive data-qubit range
    for (int q = lo; q <= hi; ++q) correction ^= (1u << q);
  };
  for (const auto& [a, b] : best_pairs) {
    const int ia = defects[a].first;
    if (b < 0) {
      // Boundary: flip toward the nearer edge.
      if (ia + 1 <= distance - 1 - ia)
        flip_range(0, ia);
      else
        flip_range(ia + 1, distance - 1);
    } else {
      const int ib = defects[b].first;
      const int lo = std::min(ia, ib), hi = std::max(ia, ib);
      if (lo != hi) flip_range(lo + 1, hi);
    }
  }
  return correction;
}

namespace {

RepCodeResult decode_window(const RepCodeShots& shots, int offset, int d,
                            int defect_cap) {
  const int full_d = shots.spec.distance;
  RepCodeResult out;
  int correct = 0;
  for (std::size_t shot = 0; shot < shots.final_data.size(); ++shot) {
    // Window syndromes: stabilizers offset .. offset + d - 2.
    std::vector<std::uint32_t> syn;
    for (const auto& word : shots.syndromes[shot])
      syn.push_back((word >> offset) & ((1u << (d - 1)) - 1));
    const std::uint32_t data =
        (shots.final_data[shot] >> offset) & ((1u << d) - 1);
    std::uint32_t final_syn = 0;
    for (int i = 0; i + 1 < d; ++i)
      final_syn |= ((((data >> i) ^ (data >> (i + 1))) & 1u) << i);
    syn.push_back(final_syn);

    std::vector<std::pair<int, int>> defects;
    std::uint32_t prev = 0;
    for (std::size_t r = 0; r < syn.size(); ++r) {
      const std::uint32_t diff = syn[r] ^ prev;
      prev = syn[r];
      for (int i = 0; i + 1 < d; ++i)
        if ((diff >> i) & 1u) defects.emplace_back(i, static_cast<int>(r));
    }
    if (static_cast<int>(defects.size()) > defect_cap) {
      out.shots_excluded++;
      continue;
    }
    const std::uint32_t corrected =
        data ^ mwpm_correction(defects, d, defect_cap);
    // A valid correction returns to the codespace; the logical value is
    // the shared bit.
    const bool logical_one = corrected & 1u;
    const bool uniform = corrected == 0 || corrected == ((1u << d) - 1);
    QCCD_CHECK(uniform, "decoder left a nonzero syndrome");
    out.shots_used++;
    correct += !logical_one;
  }
  (void)full_d;
  out.logical_fidelity =
      out.shots_used ? static_cast<double>(correct) / out.shots_used : 0.0;
  out.stderr_est = out.shots_used
                       ? std::sqrt(std::max(out.logical_fidelity *
                                                (1 - out.logical_fidelity),
                                            1e-12) /
                                   out.shots_used)
                       : 0.0;
  return out;
}

}  // namespace

RepCodeResult repcode_decode(const RepCodeShots& shots, int defect_cap) {
  return decode_window(shots, 0, shots.spec.distance, defect_cap);
}

RepCodeResult repcode_subsets(const RepCodeShots& shots, int target_d,
                              int defect_cap) {
  QCCD_CHECK(target_d % 2 == 1 && target_d >= 1, "subset distance must be odd");
  QCCD_CHECK(target_d <= shots.spec.distance,
             "subset distance exceeds the recorded distance");
  const int offset = (shots.spec.distance - target_d) / 2;
  return decode_window(shots, offset, target_d, defect_cap);
}

}  // namespace qccd::apps
