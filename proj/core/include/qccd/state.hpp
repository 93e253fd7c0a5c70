/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qccd/circuit.hpp"
#include "qccd/seed.hpp"

namespace qccd {

/// Dense state vector over n qubits with per-qubit leak flags and named
/// classical registers. Qubit 0 is the least-significant bit of a basis
/// index. A leaked qubit is frozen: gates touching it are skipped (a
/// two-qubit gate's partner is untouched), measurement returns a
/// configurable fixed outcome, and reset clears the flag.
class QuantumState {
 public:
  explicit QuantumState(int n_qubits);

  int n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Cplx>& amplitudes() const { return amps_; }
  std::vector<Cplx>& amplitudes() { return amps_; }

  void declare_creg(const std::string& name, int width);
  std::uint64_t creg_value(const std::string& name) const;
  void set_creg_bit(const std::string& name, int bit, bool value);
  const std::map<std::string, std::uint64_t>& cregs() const { return cregs_; }

  bool leaked(int q) const { return (leak_mask_ >> q) & 1u; }
  std::uint32_t leak_mask() const { return leak_mask_; }
  /// Marks q as leaked. The qubit is first collapsed by a projective
  /// measurement (leakage is incoherent), then frozen.
  void mark_leaked(int q, Rng& rng);
  void clear_leak(int q) { leak_mask_ &= ~(1u << q); }

  void apply_1q(int q, const Mat2& u);
  void apply_2q(int q0, int q1, const Mat4& u);  // q0 = LSB of the 4x4 index
  void apply_uzz(int q0, int q1, double theta);
  void apply_swap_label(int q0, int q1);

  /// Probability of reading 1 on qubit q.
  double prob_one(int q) const;
  /// Projective measurement; collapses and renormalizes.
  int measure(int q, Rng& rng);
  /// Measure + conditional flip; clears the leak flag.
  void reset(int q, Rng& rng);
  /// Samples a full basis index from |amplitude|^2 without collapsing.
  std::uint64_t sample_basis_index(Rng& rng) const;

  double norm() const;
  /// Throws if |norm - 1| exceeds tol.
  void check_normalized(double tol = 1e-10) const;

  /// Reduced density matrix of a single qubit.
  Mat2 reduced_density(int q) const;

 private:
  int n_;
  std::vector<Cplx> amps_;
  std::uint32_t leak_mask_ = 0;
  std::map<std::string, std::uint64_t> cregs_;
  std::map<std::string, int> creg_widths_;

  void project(int q, int outcome, double prob);
};

}  // namespace qccd
