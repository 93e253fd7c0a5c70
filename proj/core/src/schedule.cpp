/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/schedule.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qccd::sched {

namespace {

int ring_dist(int a, int b, int p) {
  const int d = std::abs(a - b) % p;
  return std::min(d, p - d);
}

/// Counts 1Q rotations / SPAM-type ops, descending into conditionals.
void count_ops(const Operation& op, int& n1q, int& nspam) {
  switch (op.kind) {
    case OpKind::Rot1Q: ++n1q; break;
    case OpKind::Measure:
    case OpKind::Reset: ++nspam; break;
    case OpKind::Conditional:
      for (const auto& nested : op.body) count_ops(nested, n1q, nspam);
      break;
    default: break;
  }
}

/// Arrangement orders for all gate layers: pairs first (even-aligned),
/// then idle qubits, each sorted by the barycenter of their positions in
/// the neighboring layer's arrangement. Ten alternating sweeps.
std::vector<std::vector<int>> barycenter_orders(const LayeredCircuit& lc) {
  const int n = lc.n_qubits;
  std::vector<int> gate_layers;
  for (std::size_t l = 0; l < lc.layers.size(); ++l)
    if (!lc.layers[l].gates.empty()) gate_layers.push_back(static_cast<int>(l));

  struct Unit {
    std::vector<int> members;  // size 2 for pairs, 1 for singles
    bool is_pair;
  };
  std::vector<std::vector<Unit>> units(gate_layers.size());
  for (std::size_t gl = 0; gl < gate_layers.size(); ++gl) {
    const auto& layer = lc.layers[gate_layers[gl]];
    std::vector<bool> used(n, false);
    for (const auto& g : layer.gates) {
      units[gl].push_back({{g.q0, g.q1}, true});
      used[g.q0] = used[g.q1] = true;
    }
    for (int q = 0; q < n; ++q)
      if (!used[q]) units[gl].push_back({{q}, false});
  }

  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<std::vector<int>> arr(gate_layers.size(), identity);

  auto rebuild = [&](std::size_t gl, const std::vector<int>& ref) {
    std::vector<int> slot_of(n, 0);
    for (int s = 0; s < n; ++s) slot_of[ref[s]] = s;
    auto& us = units[gl];
    std::stable_sort(us.begin(), us.end(), [&](const Unit& a, const Unit& b) {
      // Pairs come first so gate zones stay even-aligned.
      if (a.is_pair != b.is_pair) return a.is_pair;
      double ba = 0, bb = 0;
      for (int q : a.members) ba += slot_of[q];
      for (int q : b.members) bb += slot_of[q];
      ba /= a.members.size();
      bb /= b.members.size();
      if (ba != bb) return ba < bb;
      return *std::min_element(a.members.begin(), a.members.end()) <
             *std::min_element(b.members.begin(), b.members.end());
    });
    arr[gl].clear();
    for (const auto& u : us)
      for (int q : u.members) arr[gl].push_back(q);
  };

  for (int sweep = 0; sweep < 10; ++sweep) {
    if (gate_layers.empty()) break;
    if (sweep % 2 == 0) {
      for (std::size_t gl = 0; gl < gate_layers.size(); ++gl)
        rebuild(gl, gl == 0 ? identity : arr[gl - 1]);
    } else {
      for (std::size_t gl = gate_layers.size(); gl-- > 1;)
        rebuild(gl - 1, arr[gl]);
    }
  }
  return arr;
}

}  // namespace

void TrapLayout::validate() const {
  QCCD_CHECK(durations.split_combine > 0 && durations.linear_shift > 0 &&
                 durations.physical_swap > 0 && durations.batch_shift > 0 &&
                 durations.sideband_cool > 0 && durations.gate_1q > 0 &&
                 durations.gate_2q > 0 && durations.spam_op > 0,
             "trap layout durations must be positive");
  QCCD_CHECK(n_gate_zones_active >= 1 && n_gate_zones_sort_only >= 0,
             "trap layout needs at least one active gate zone");
}

std::string BudgetSummary::triple() const {
  std::ostringstream os;
  os << std::lround(quantum_pct) << "/" << std::lround(transport_pct) << "/"
     << std::lround(cooling_pct);
  return os.str();
}

std::vector<std::vector<std::pair<int, int>>> oet_sort_rounds(
    std::vector<int> target_of) {
  const int p = static_cast<int>(target_of.size());
  std::vector<std::vector<std::pair<int, int>>> rounds;
  for (int iter = 0; iter < 2 * p + 2; ++iter) {
    if (std::is_sorted(target_of.begin(), target_of.end())) break;
    std::vector<std::pair<int, int>> swaps;
    const int phase = iter % 2;
    for (int i = phase; i + 1 < p; i += 2) {
      if (target_of[i] > target_of[i + 1]) {
        std::swap(target_of[i], target_of[i + 1]);
        swaps.emplace_back(i, i + 1);
      }
    }
    if (!swaps.empty()) rounds.push_back(std::move(swaps));
  }
  QCCD_CHECK(std::is_sorted(target_of.begin(), target_of.end()),
             "odd-even transposition failed to sort");
  return rounds;
}

TransportPlan schedule(const LayeredCircuit& layered, const Circuit& source,
                       const TrapLayout& layout) {
  layout.validate();
  const int n = layered.n_qubits;
  QCCD_CHECK(n <= layout.capacity(), "qubit count exceeds trap capacity");

  TransportPlan plan;
  plan.n_qubits = n;
  plan.layout = layout;
  const auto& dur = layout.durations;
  const int zones = layout.n_gate_zones_active;

  const auto arrangements = barycenter_orders(layered);
  std::size_t arr_index = 0;

  std::vector<int> pos(n);
  std::iota(pos.begin(), pos.end(), 0);
  double t = 0.0;
  // Index into the flattened circuit (pre-ops then gates, per layer);
  // the transport annotation refers to flattened op positions.
  int flat_index = 0;

  auto emit = [&](TransportStep step) {
    step.start = t;
    t += step.duration;
    plan.steps.push_back(std::move(step));
  };

  for (std::size_t l = 0; l < layered.layers.size(); ++l) {
    const Layer& layer = layered.layers[l];
    const int li = static_cast<int>(l);

    // Zero-cost relabelings take effect before anything else in the layer.
    int n1q = 0, nspam = 0;
    for (int idx : layer.pre_ops) {
      const Operation& op = source.ops[idx];
      if (op.kind == OpKind::SwapLabel)
        std::swap(pos[op.qubits[0]], pos[op.qubits[1]]);
      count_ops(op, n1q, nspam);
    }
    if (n1q > 0) {
      TransportStep s{};
      s.kind = StepKind::Gate1Q;
      s.layer = li;
      s.count = n1q;
      s.duration = dur.gate_1q * std::ceil(n1q / double(2 * zones));
      emit(std::move(s));
    }
    if (nspam > 0) {
      TransportStep s{};
      s.kind = StepKind::Spam;
      s.layer = li;
      s.count = nspam;
      s.duration = dur.spam_op * std::ceil(nspam / double(zones));
      emit(std::move(s));
    }
    flat_index += static_cast<int>(layer.pre_ops.size());
    if (layer.gates.empty()) continue;

    // Arrangement: rotate the barycenter order to minimize displacement,
    // then sort with parallel adjacent transpositions.
    const std::vector<int>& order = arrangements[arr_index++];
    int best_rot = 0;
    long best_cost = -1;
    for (int r = 0; r < n; ++r) {
      long cost = 0;
      for (int s = 0; s < n; ++s)
        cost += ring_dist(pos[order[s]], (s + r) % n, n);
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best_rot = r;
      }
    }
    std::vector<int> target_pos(n);
    for (int s = 0; s < n; ++s) target_pos[order[s]] = (s + best_rot) % n;
    std::vector<int> target_of(n);
    for (int q = 0; q < n; ++q) target_of[pos[q]] = target_pos[q];

    for (const auto& round : oet_sort_rounds(target_of)) {
      TransportStep s{};
      s.kind = StepKind::SwapRound;
      s.layer = li;
      s.swaps = round;
      s.duration = dur.physical_swap;
      emit(std::move(s));
    }
    for (int q = 0; q < n; ++q) pos[q] = target_pos[q];
    plan.n_arrangement_rounds += 1;
    plan.transport_layers_before[flat_index] += 1;
    flat_index += static_cast<int>(layer.gates.size());

    // Gate batches rotate through the active zones (positions 0..2z-1).
    // Pairs occupy even-aligned arrangement slots 0..2k-1; work in slot
    // space so a batch never straddles the ring wrap point.
    std::vector<int> slot_of(n, 0);
    for (int s = 0; s < n; ++s) slot_of[order[s]] = s;
    std::vector<GateRef> ordered_gates = layer.gates;
    std::sort(ordered_gates.begin(), ordered_gates.end(),
              [&](const GateRef& a, const GateRef& b) {
                return std::min(slot_of[a.q0], slot_of[a.q1]) <
                       std::min(slot_of[b.q0], slot_of[b.q1]);
              });
    int arc_pos = best_rot;  // current ring position of arrangement slot 0
    for (std::size_t b = 0; b < ordered_gates.size();
         b += static_cast<std::size_t>(zones)) {
      const std::size_t hi = std::min(ordered_gates.size(),
                                      b + static_cast<std::size_t>(zones));
      const int start = (arc_pos + 2 * static_cast<int>(b)) % n;
      const int shift = (n - start) % n;
      if (shift != 0) {
        TransportStep s{};
        s.kind = StepKind::BatchShift;
        s.layer = li;
        s.shift = shift;
        s.duration = dur.batch_shift;
        emit(std::move(s));
        for (int q = 0; q < n; ++q) pos[q] = (pos[q] + shift) % n;
        arc_pos = (arc_pos + shift) % n;
      }
      TransportStep combine{};
      combine.kind = StepKind::SplitCombine;
      combine.layer = li;
      combine.duration = dur.split_combine;
      emit(std::move(combine));
      TransportStep cool{};
      cool.kind = StepKind::SidebandCool;
      cool.layer = li;
      cool.duration = dur.sideband_cool;
      emit(std::move(cool));
      TransportStep round{};
      round.kind = StepKind::Gate2Q;
      round.layer = li;
      round.gates.assign(ordered_gates.begin() + b, ordered_gates.begin() + hi);
      round.duration = dur.gate_2q;
      emit(std::move(round));
      plan.n_gate_rounds += 1;
      TransportStep split{};
      split.kind = StepKind::SplitCombine;
      split.layer = li;
      split.duration = dur.split_combine;
      emit(std::move(split));
    }
  }

  plan.total_time = t;
  plan.budget = budget(plan);
  return plan;
}

BudgetSummary budget(const TransportPlan& plan) {
  QCCD_CHECK(!plan.steps.empty(), "budget of an empty plan");
  double quantum = 0, transport = 0, cooling = 0;
  for (const auto& s : plan.steps) {
    switch (s.kind) {
      case StepKind::Gate1Q:
      case StepKind::Gate2Q:
      case StepKind::Spam:
        quantum += s.duration;
        break;
      case StepKind::SwapRound:
      case StepKind::BatchShift:
      case StepKind::SplitCombine:
        transport += s.duration;
        break;
      case StepKind::SidebandCool:
        cooling += s.duration;
        break;
    }
  }
  const double total = quantum + transport + cooling;
  BudgetSummary out;
  out.shot_time = total;
  if (total > 0) {
    out.quantum_pct = 100.0 * quantum / total;
    out.transport_pct = 100.0 * transport / total;
    out.cooling_pct = 100.0 * cooling / total;
  }
  return out;
}

void verify_transport_plan(const TransportPlan& plan,
                           const LayeredCircuit& layered,
                           const Circuit& source) {
  const int n = plan.n_qubits;
  std::vector<int> pos(n);
  std::iota(pos.begin(), pos.end(), 0);
  std::vector<int> occupant(n);
  std::iota(occupant.begin(), occupant.end(), 0);
  auto sync = [&] {
    for (int p = 0; p < n; ++p) pos[occupant[p]] = p;
  };
  // Zero-cost relabelings take effect when their layer begins.
  int relabeled_through = -1;
  auto apply_relabels_through = [&](int layer) {
    while (relabeled_through < layer) {
      ++relabeled_through;
      if (relabeled_through >= static_cast<int>(layered.layers.size())) break;
      for (int idx : layered.layers[relabeled_through].pre_ops) {
        const Operation& op = source.ops[idx];
        if (op.kind == OpKind::SwapLabel) {
          std::swap(pos[op.qubits[0]], pos[op.qubits[1]]);
          std::swap(occupant[pos[op.qubits[0]]], occupant[pos[op.qubits[1]]]);
        }
      }
    }
  };
  const int zones = plan.layout.n_gate_zones_active;
  double t = 0.0;
  for (const auto& s : plan.steps) {
    apply_relabels_through(s.layer);
    QCCD_CHECK(s.start >= t - 1e-12, "plan steps overlap in time");
    t = s.start + s.duration;
    switch (s.kind) {
      case StepKind::SwapRound:
        for (const auto& [a, b] : s.swaps) {
          QCCD_CHECK(std::abs(a - b) == 1 || std::abs(a - b) == n - 1,
                     "swap of non-adjacent positions");
          std::swap(occupant[a], occupant[b]);
        }
        sync();
        break;
      case StepKind::BatchShift: {
        std::vector<int> next(n);
        for (int p = 0; p < n; ++p) next[(p + s.shift) % n] = occupant[p];
        occupant = std::move(next);
        sync();
        break;
      }
      case StepKind::Gate2Q: {
        QCCD_CHECK(static_cast<int>(s.gates.size()) <= zones,
                   "gate round exceeds active zones");
        for (const auto& g : s.gates) {
          const int pa = pos[g.q0], pb = pos[g.q1];
          QCCD_CHECK((pa ^ pb) == 1, "gated pair is not colocated");
          QCCD_CHECK(std::min(pa, pb) / 2 < zones,
                     "gate scheduled outside the active zones");
        }
        break;
      }
      default:
        break;
    }
  }
}

std::string write_plan_json(const TransportPlan& plan) {
  nlohmann::json j;
  j["n_qubits"] = plan.n_qubits;
  j["total_time"] = plan.total_time;
  j["n_arrangement_rounds"] = plan.n_arrangement_rounds;
  j["n_gate_rounds"] = plan.n_gate_rounds;
  j["budget"] = {{"quantum_pct", plan.budget.quantum_pct},
                 {"transport_pct", plan.budget.transport_pct},
                 {"cooling_pct", plan.budget.cooling_pct},
                 {"shot_time", plan.budget.shot_time},
                 {"triple", plan.budget.triple()}};
  nlohmann::json steps = nlohmann::json::array();
  static const char* kNames[] = {"swap_round", "batch_shift", "split_combine",
                                 "sideband_cool", "gate_2q", "gate_1q", "spam"};
  for (const auto& s : plan.steps) {
    nlohmann::json js;
    js["kind"] = kNames[static_cast<int>(s.kind)];
    js["start"] = s.start;
    js["duration"] = s.duration;
    js["layer"] = s.layer;
    if (!s.swaps.empty()) js["swaps"] = s.swaps;
    if (s.shift) js["shift"] = s.shift;
    if (s.count) js["count"] = s.count;
    if (!s.gates.empty()) {
      nlohmann::json gs = nlohmann::json::array();
      for (const auto& g : s.gates) gs.push_back({g.q0, g.q1});
      js["gates"] = gs;
    }
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  return j.dump(2);
}

}  // namespace qccd::sched
