/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace qccd {

double ShotRecords::fraction_equal(const std::string& creg,
                                   std::uint64_t value) const {
  if (shots.empty()) return 0.0;
  int n = 0;
  for (const auto& s : shots)
    if (s.cregs.at(creg) == value) ++n;
  return static_cast<double>(n) / static_cast<double>(shots.size());
}

double ShotRecords::mean_bit(const std::string& creg, int bit) const {
  if (shots.empty()) return 0.0;
  int n = 0;
  for (const auto& s : shots)
    if ((s.cregs.at(creg) >> bit) & 1u) ++n;
  return static_cast<double>(n) / static_cast<double>(shots.size());
}

std::map<std::uint64_t, int> ShotRecords::counts(const std::string& creg) const {
  std::map<std::uint64_t, int> out;
  for (const auto& s : shots) out[s.cregs.at(creg)]++;
  return out;
}

namespace {

struct Event {
  int op_index;
  bool before;  // transport layers apply before their op, channels after
  ErrorAction action;
};

/// Op-by-op walker with deferred single-qubit fusion: pending 2x2
/// matrices accumulate per qubit and merge into the next two-qubit gate
/// touching that qubit, so a layer of 1Q gates costs no extra sweep.
class Executor {
 public:
  Executor(QuantumState& st, const Circuit& circuit, const NoiseModel* noise,
           const RunOptions& opts, Rng& rng, bool live)
      : st_(st), circuit_(circuit), noise_(noise), opts_(opts), rng_(rng),
        live_(live) {
    pending_.assign(st.n_qubits(), Mat2::Identity());
    has_pending_.assign(st.n_qubits(), 0);
  }

  /// Executes ops[begin, end). In live mode noise is sampled as ops run;
  /// in replay mode the pre-sampled `events` are applied instead
  /// (measurement outcomes and readout flips always draw live).
  void run_range(std::size_t begin, std::size_t end,
                 const std::vector<Event>* events) {
    std::size_t e = 0;
    if (events) {
      while (e < events->size() &&
             static_cast<std::size_t>((*events)[e].op_index) < begin)
        ++e;
    }
    for (std::size_t i = begin; i < end; ++i) {
      if (live_) {
        apply_transport_before(static_cast<int>(i));
      } else if (events) {
        while (e < events->size() &&
               static_cast<std::size_t>((*events)[e].op_index) == i &&
               (*events)[e].before) {
          apply_action((*events)[e].action);
          ++e;
        }
      }
      exec_op(circuit_.ops[i]);
      if (!live_ && events) {
        while (e < events->size() &&
               static_cast<std::size_t>((*events)[e].op_index) == i &&
               !(*events)[e].before) {
          apply_action((*events)[e].action);
          ++e;
        }
      }
    }
  }

  void flush_all() {
    for (int q = 0; q < st_.n_qubits(); ++q) flush(q);
  }

 private:
  void flush(int q) {
    if (!has_pending_[q]) return;
    if (!st_.leaked(q)) st_.apply_1q(q, pending_[q]);
    pending_[q] = Mat2::Identity();
    has_pending_[q] = 0;
  }

  void compose_pending(int q, const Mat2& u) {
    if (st_.leaked(q)) return;  // frozen qubit
    pending_[q] = u * pending_[q];
    has_pending_[q] = 1;
  }

  void apply_action(const ErrorAction& act) {
    for (const auto& [q, p] : act.paulis) compose_pending(q, gates::pauli(p));
    if (act.leak_qubit >= 0) {
      flush(act.leak_qubit);
      st_.mark_leaked(act.leak_qubit, rng_);
    }
  }

  void apply_transport_before(int op_index) {
    if (!noise_) return;
    auto it = opts_.transport_layers_before.find(op_index);
    if (it == opts_.transport_layers_before.end()) return;
    for (int k = 0; k < it->second; ++k)
      apply_action(sample_transport_layer(*noise_, st_.n_qubits(), rng_));
  }

  void exec_op(const Operation& op) {
    switch (op.kind) {
      case OpKind::Rot1Q:
        compose_pending(op.qubits[0], gates::from_euler_zyz(op.euler[0],
                                                            op.euler[1],
                                                            op.euler[2]));
        break;
      case OpKind::UZZ: {
        const int a = op.qubits[0], b = op.qubits[1];
        if (st_.leaked(a) || st_.leaked(b)) break;  // no logical effect
        const Mat4 m =
            gates::uzz(op.theta()) * gates::kron(pending_[b], pending_[a]);
        st_.apply_2q(a, b, m);
        pending_[a] = Mat2::Identity();
        pending_[b] = Mat2::Identity();
        has_pending_[a] = has_pending_[b] = 0;
        break;
      }
      case OpKind::Measure: {
        const int q = op.qubits[0];
        flush(q);
        int bit = st_.leaked(q) ? (opts_.leaked_reads_one ? 1 : 0)
                                : st_.measure(q, rng_);
        if (noise_ && noise_->eps_spam > 0.0 && rng_.bernoulli(noise_->eps_spam))
          bit ^= 1;
        st_.set_creg_bit(op.creg, op.creg_bit, bit != 0);
        break;
      }
      case OpKind::Reset: {
        const int q = op.qubits[0];
        flush(q);
        st_.reset(q, rng_);
        break;
      }
      case OpKind::Barrier:
        break;
      case OpKind::Conditional: {
        if (op.pred.evaluate(st_.creg_value(op.pred.creg))) {
          for (const auto& nested : op.body) {
            exec_op(nested);
            if (live_ && noise_)
              apply_action(sample_channel(nested, *noise_, st_.n_qubits(), rng_));
          }
        }
        return;  // nested ops drew their own channels
      }
      case OpKind::SwapLabel: {
        const int a = op.qubits[0], b = op.qubits[1];
        st_.apply_swap_label(a, b);
        std::swap(pending_[a], pending_[b]);
        std::swap(has_pending_[a], has_pending_[b]);
        break;
      }
    }
    if (live_ && noise_)
      apply_action(sample_channel(op, *noise_, st_.n_qubits(), rng_));
  }

  QuantumState& st_;
  const Circuit& circuit_;
  const NoiseModel* noise_;
  const RunOptions& opts_;
  Rng& rng_;
  bool live_;
  std::vector<Mat2> pending_;
  std::vector<char> has_pending_;
};

/// A circuit is "static" when every op before a trailing run of
/// measurements is unitary (no reset / feed-forward / mid-circuit
/// measurement). Such circuits admit the trajectory fast path.
bool is_static_circuit(const Circuit& c, std::size_t& first_measure) {
  first_measure = c.ops.size();
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    switch (c.ops[i].kind) {
      case OpKind::Measure:
        if (first_measure == c.ops.size()) first_measure = i;
        break;
      case OpKind::Reset:
      case OpKind::Conditional:
        return false;
      default:
        if (first_measure != c.ops.size()) return false;
        break;
    }
  }
  return true;
}

void check_cap(const Circuit& c, const RunOptions& opts) {
  QCCD_CHECK(c.n_qubits <= opts.max_qubits,
             "circuit exceeds the configured qubit cap");
}

QuantumState fresh_state(const Circuit& c) {
  QuantumState st(c.n_qubits);
  for (const auto& [name, width] : c.cregs) st.declare_creg(name, width);
  return st;
}

ShotRecord extract_record(const QuantumState& st) {
  ShotRecord rec;
  rec.cregs = st.cregs();
  rec.leak_mask = st.leak_mask();
  return rec;
}

/// Pre-samples one shot's noise events without evolving any state. Draw
/// order matches run order: per op, transport layers first, then the
/// op's channel. Readout flips are drawn later, at measurement time.
std::vector<Event> sample_shot_events(const Circuit& c, const NoiseModel& noise,
                                      const RunOptions& opts, Rng& rng) {
  std::vector<Event> events;
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    auto it = opts.transport_layers_before.find(static_cast<int>(i));
    if (it != opts.transport_layers_before.end()) {
      for (int k = 0; k < it->second; ++k) {
        ErrorAction act = sample_transport_layer(noise, c.n_qubits, rng);
        if (!act.identity())
          events.push_back({static_cast<int>(i), true, std::move(act)});
      }
    }
    ErrorAction act = sample_channel(c.ops[i], noise, c.n_qubits, rng);
    if (!act.identity())
      events.push_back({static_cast<int>(i), false, std::move(act)});
  }
  return events;
}

struct Checkpoint {
  std::size_t next_op = 0;  // execution resumes at this op index
  std::vector<Cplx> amps;
};

struct StaticPlan {
  std::size_t first_measure;
  std::vector<Checkpoint> ckpts;  // ascending next_op, first at 0
  std::vector<double> cdf;        // inclusive prefix sums of ideal probs
  std::vector<Cplx> ideal_amps;   // pre-measurement ideal state
};

StaticPlan build_static_plan(const Circuit& c, const RunOptions& opts,
                             std::size_t first_measure) {
  StaticPlan plan;
  plan.first_measure = first_measure;

  const std::size_t state_bytes = (std::size_t{1} << c.n_qubits) * sizeof(Cplx);
  std::size_t max_ckpts =
      std::max<std::size_t>(1, opts.checkpoint_bytes / state_bytes);
  max_ckpts = std::min<std::size_t>(max_ckpts, 32);
  int n_heavy = 0;
  for (std::size_t i = 0; i < first_measure; ++i)
    if (c.ops[i].kind == OpKind::UZZ) ++n_heavy;
  const int ckpt_every =
      std::max(1, (n_heavy + static_cast<int>(max_ckpts) - 1) /
                      std::max(1, static_cast<int>(max_ckpts)));

  std::vector<std::size_t> positions{0};
  int heavy_seen = 0;
  for (std::size_t i = 0; i < first_measure; ++i) {
    if (c.ops[i].kind == OpKind::UZZ) {
      if (heavy_seen > 0 && heavy_seen % ckpt_every == 0 &&
          positions.back() != i)
        positions.push_back(i);
      ++heavy_seen;
    }
  }

  QuantumState st = fresh_state(c);
  Rng dummy(0);
  Executor ex(st, c, nullptr, opts, dummy, /*live=*/false);
  std::size_t pos = 0;
  for (std::size_t target : positions) {
    ex.run_range(pos, target, nullptr);
    ex.flush_all();
    pos = target;
    plan.ckpts.push_back({target, st.amplitudes()});
  }
  ex.run_range(pos, first_measure, nullptr);
  ex.flush_all();
  st.check_normalized(1e-9);
  plan.ideal_amps = st.amplitudes();
  // The pre-measurement ideal state doubles as the last checkpoint, so a
  // shot whose only events are readout crosstalk skips the whole prefix.
  plan.ckpts.push_back({first_measure, plan.ideal_amps});

  plan.cdf.resize(plan.ideal_amps.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < plan.ideal_amps.size(); ++i) {
    acc += std::norm(plan.ideal_amps[i]);
    plan.cdf[i] = acc;
  }
  return plan;
}

void readout_from_bits(const Circuit& c, std::size_t first_measure,
                       std::uint64_t basis, std::uint32_t leak_mask,
                       const NoiseModel* noise, const RunOptions& opts,
                       Rng& rng, ShotRecord& rec) {
  for (std::size_t i = first_measure; i < c.ops.size(); ++i) {
    const auto& op = c.ops[i];
    const int q = op.qubits[0];
    int bit;
    if ((leak_mask >> q) & 1u)
      bit = opts.leaked_reads_one ? 1 : 0;
    else
      bit = static_cast<int>((basis >> q) & 1u);
    if (noise && noise->eps_spam > 0.0 && rng.bernoulli(noise->eps_spam))
      bit ^= 1;
    auto& reg = rec.cregs[op.creg];
    if (bit)
      reg |= (std::uint64_t{1} << op.creg_bit);
    else
      reg &= ~(std::uint64_t{1} << op.creg_bit);
  }
}

void run_static_shot(const Circuit& c, const NoiseModel* noise,
                     const RunOptions& opts, const StaticPlan& plan,
                     std::uint64_t seed, int k, QuantumState& scratch,
                     ShotRecord& rec) {
  Rng rng(derive_seed(seed, "shot", static_cast<std::uint64_t>(k)));
  for (const auto& [name, width] : c.cregs) rec.cregs[name] = 0;
  rec.leak_mask = 0;

  std::vector<Event> events;
  if (noise) events = sample_shot_events(c, *noise, opts, rng);

  if (events.empty()) {
    // Ideal trajectory: one CDF lookup instead of a state evolution.
    const double u = rng.uniform();
    const auto it = std::upper_bound(plan.cdf.begin(), plan.cdf.end(), u);
    const std::uint64_t basis = static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - plan.cdf.begin(),
                                 static_cast<std::ptrdiff_t>(plan.cdf.size()) - 1));
    readout_from_bits(c, plan.first_measure, basis, 0, noise, opts, rng, rec);
    return;
  }

  // Resume from the last checkpoint at or before the first event.
  const std::size_t first_idx = static_cast<std::size_t>(events[0].op_index);
  std::size_t ck = 0;
  for (std::size_t j = 0; j < plan.ckpts.size(); ++j)
    if (plan.ckpts[j].next_op <= first_idx) ck = j;
  scratch.amplitudes() = plan.ckpts[ck].amps;
  for (int q = 0; q < scratch.n_qubits(); ++q) scratch.clear_leak(q);

  Executor ex(scratch, c, noise, opts, rng, /*live=*/false);
  ex.run_range(plan.ckpts[ck].next_op, plan.first_measure, &events);
  ex.flush_all();

  const bool suffix_events =
      !events.empty() &&
      static_cast<std::size_t>(events.back().op_index) >= plan.first_measure;
  if (!suffix_events) {
    const std::uint64_t basis = scratch.sample_basis_index(rng);
    readout_from_bits(c, plan.first_measure, basis, scratch.leak_mask(), noise,
                      opts, rng, rec);
    rec.leak_mask = scratch.leak_mask();
    return;
  }
  // Rare: crosstalk fired inside the measurement suffix; measure
  // sequentially so the event ordering is honored.
  ex.run_range(plan.first_measure, c.ops.size(), &events);
  ex.flush_all();
  const ShotRecord full = extract_record(scratch);
  rec = full;
}

}  // namespace

ShotRecords run_circuit(const Circuit& circuit,
                        const std::optional<NoiseModel>& noise,
                        std::uint64_t seed, int shots, const RunOptions& opts) {
  circuit.validate();
  check_cap(circuit, opts);
  if (noise) noise->validate();
  QCCD_CHECK(shots >= 0, "negative shot count");

  ShotRecords out;
  out.n_qubits = circuit.n_qubits;
  out.creg_widths = circuit.cregs;
  out.shots.resize(shots);
  if (shots == 0) return out;
  const NoiseModel* nm = noise ? &*noise : nullptr;

  std::size_t first_measure = 0;
  const bool fast = is_static_circuit(circuit, first_measure);

  int threads = opts.threads;
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, shots));

  if (fast) {
    const StaticPlan plan = build_static_plan(circuit, opts, first_measure);
    auto worker = [&](int t) {
      QuantumState scratch = fresh_state(circuit);
      for (int k = t; k < shots; k += threads)
        run_static_shot(circuit, nm, opts, plan, seed, k, scratch,
                        out.shots[k]);
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
      for (auto& th : pool) th.join();
    }
    return out;
  }

  auto worker = [&](int t) {
    for (int k = t; k < shots; k += threads) {
      Rng rng(derive_seed(seed, "shot", static_cast<std::uint64_t>(k)));
      QuantumState st = fresh_state(circuit);
      Executor ex(st, circuit, nm, opts, rng, /*live=*/true);
      ex.run_range(0, circuit.ops.size(), nullptr);
      ex.flush_all();
      st.check_normalized(1e-9);
      out.shots[k] = extract_record(st);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::vector<double> ideal_probabilities(const Circuit& circuit,
                                        const RunOptions& opts) {
  QuantumState st = ideal_state(circuit, opts);
  std::vector<double> probs(st.dim());
  const auto& amps = st.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) probs[i] = std::norm(amps[i]);
  return probs;
}

QuantumState ideal_state(const Circuit& circuit, const RunOptions& opts) {
  circuit.validate();
  check_cap(circuit, opts);
  QCCD_CHECK(!circuit.has_nonunitary_ops(),
             "ideal simulation requires a unitary circuit");
  QuantumState st = fresh_state(circuit);
  Rng dummy(0);
  Executor ex(st, circuit, nullptr, opts, dummy, /*live=*/false);
  ex.run_range(0, circuit.ops.size(), nullptr);
  ex.flush_all();
  st.check_normalized(1e-10);
  return st;
}

namespace {

void enumerate_branches(const Circuit& c, QuantumState st, double prob,
                        std::size_t op_index,
                        std::map<std::vector<std::uint64_t>, double>& dist,
                        int depth_guard);

void enumerate_op(const Circuit& c, QuantumState& st, double prob,
                  const Operation& op, std::size_t next_index,
                  std::map<std::vector<std::uint64_t>, double>& dist,
                  int depth_guard, bool& branched) {
  constexpr double kTol = 1e-14;
  switch (op.kind) {
    case OpKind::Rot1Q:
      st.apply_1q(op.qubits[0], gates::from_euler_zyz(op.euler[0], op.euler[1],
                                                      op.euler[2]));
      break;
    case OpKind::UZZ:
      st.apply_uzz(op.qubits[0], op.qubits[1], op.theta());
      break;
    case OpKind::SwapLabel:
      st.apply_swap_label(op.qubits[0], op.qubits[1]);
      break;
    case OpKind::Barrier:
      break;
    case OpKind::Measure: {
      const int q = op.qubits[0];
      const double p1 = st.prob_one(q);
      branched = true;
      for (int outcome = 0; outcome < 2; ++outcome) {
        const double p = outcome ? p1 : 1.0 - p1;
        if (p < kTol) continue;
        QuantumState next = st;
        const std::size_t m = std::size_t{1} << q;
        auto& amps = next.amplitudes();
        const double scale = 1.0 / std::sqrt(p);
        for (std::size_t i = 0; i < amps.size(); ++i) {
          const bool b = (i & m) != 0;
          if (static_cast<int>(b) == outcome)
            amps[i] *= scale;
          else
            amps[i] = Cplx(0, 0);
        }
        next.set_creg_bit(op.creg, op.creg_bit, outcome != 0);
        enumerate_branches(c, std::move(next), prob * p, next_index, dist,
                           depth_guard - 1);
      }
      break;
    }
    case OpKind::Reset: {
      const int q = op.qubits[0];
      const double p1 = st.prob_one(q);
      branched = true;
      for (int outcome = 0; outcome < 2; ++outcome) {
        const double p = outcome ? p1 : 1.0 - p1;
        if (p < kTol) continue;
        QuantumState next = st;
        const std::size_t m = std::size_t{1} << q;
        auto& amps = next.amplitudes();
        const double scale = 1.0 / std::sqrt(p);
        for (std::size_t i = 0; i < amps.size(); ++i) {
          const bool b = (i & m) != 0;
          if (static_cast<int>(b) == outcome)
            amps[i] *= scale;
          else
            amps[i] = Cplx(0, 0);
        }
        if (outcome == 1) next.apply_1q(q, gates::pauli_x());
        enumerate_branches(c, std::move(next), prob * p, next_index, dist,
                           depth_guard - 1);
      }
      break;
    }
    case OpKind::Conditional: {
      if (op.pred.evaluate(st.creg_value(op.pred.creg))) {
        for (std::size_t j = 0; j < op.body.size(); ++j) {
          bool sub_branched = false;
          // Nested measurement inside a conditional would need
          // continuation tracking across the body; not supported.
          QCCD_CHECK(op.body[j].kind != OpKind::Measure &&
                         op.body[j].kind != OpKind::Reset,
                     "exact distribution: measurement inside conditional");
          enumerate_op(c, st, prob, op.body[j], next_index, dist, depth_guard,
                       sub_branched);
        }
      }
      break;
    }
  }
}

void enumerate_branches(const Circuit& c, QuantumState st, double prob,
                        std::size_t op_index,
                        std::map<std::vector<std::uint64_t>, double>& dist,
                        int depth_guard) {
  QCCD_CHECK(depth_guard > 0, "exact distribution: too many branches");
  for (std::size_t i = op_index; i < c.ops.size(); ++i) {
    bool branched = false;
    enumerate_op(c, st, prob, c.ops[i], i + 1, dist, depth_guard, branched);
    if (branched) return;  // recursion continued the walk
  }
  std::vector<std::uint64_t> key;
  key.reserve(c.cregs.size());
  for (const auto& [name, width] : c.cregs) {
    (void)width;
    key.push_back(st.creg_value(name));
  }
  dist[key] += prob;
}

}  // namespace

std::map<std::vector<std::uint64_t>, double> exact_creg_distribution(
    const Circuit& circuit, const RunOptions& opts) {
  circuit.validate();
  check_cap(circuit, opts);
  std::map<std::vector<std::uint64_t>, double> dist;
  enumerate_branches(circuit, fresh_state(circuit), 1.0, 0, dist, 64);
  return dist;
}

}  // namespace qccd
