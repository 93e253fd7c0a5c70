/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/state.hpp"

#include <cmath>

namespace qccd {

QuantumState::QuantumState(int n_qubits) : n_(n_qubits) {
  QCCD_CHECK(n_qubits > 0 && n_qubits <= 30, "unsupported qubit count");
  amps_.assign(std::size_t{1} << n_qubits, Cplx(0.0, 0.0));
  amps_[0] = Cplx(1.0, 0.0);
}

void QuantumState::declare_creg(const std::string& name, int width) {
  creg_widths_[name] = width;
  cregs_[name] = 0;
}

std::uint64_t QuantumState::creg_value(const std::string& name) const {
  auto it = cregs_.find(name);
  QCCD_CHECK(it != cregs_.end(), "unknown creg: " + name);
  return it->second;
}

void QuantumState::set_creg_bit(const std::string& name, int bit, bool value) {
  auto it = cregs_.find(name);
  QCCD_CHECK(it != cregs_.end(), "unknown creg: " + name);
  if (value)
    it->second |= (std::uint64_t{1} << bit);
  else
    it->second &= ~(std::uint64_t{1} << bit);
}

void QuantumState::mark_leaked(int q, Rng& rng) {
  if (leaked(q)) return;
  measure(q, rng);
  leak_mask_ |= (1u << q);
}

void QuantumState::apply_1q(int q, const Mat2& u) {
  if (leaked(q)) return;  // gates on a leaked qubit have no logical effect
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t dim = amps_.size();
  const Cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Cplx a0 = amps_[i];
      const Cplx a1 = amps_[i + stride];
      amps_[i] = u00 * a0 + u01 * a1;
      amps_[i + stride] = u10 * a0 + u11 * a1;
    }
  }
}

void QuantumState::apply_2q(int q0, int q1, const Mat4& u) {
  QCCD_CHECK(q0 != q1, "apply_2q: qubits must be distinct");
  if (leaked(q0) || leaked(q1)) return;
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = std::size_t{1} << q1;
  const std::size_t dim = amps_.size();
  Cplx m[4][4];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[r][c] = u(r, c);
  // Iterate over indices with both target bits clear.
  const std::size_t lo = std::min(m0, m1), hi = std::max(m0, m1);
  for (std::size_t a = 0; a < dim; a += 2 * hi) {
    for (std::size_t b = a; b < a + hi; b += 2 * lo) {
      for (std::size_t i = b; i < b + lo; ++i) {
        const Cplx a00 = amps_[i];
        const Cplx a01 = amps_[i + m0];
        const Cplx a10 = amps_[i + m1];
        const Cplx a11 = amps_[i + m0 + m1];
        amps_[i] = m[0][0] * a00 + m[0][1] * a01 + m[0][2] * a10 + m[0][3] * a11;
        amps_[i + m0] = m[1][0] * a00 + m[1][1] * a01 + m[1][2] * a10 + m[1][3] * a11;
        amps_[i + m1] = m[2][0] * a00 + m[2][1] * a01 + m[2][2] * a10 + m[2][3] * a11;
        amps_[i + m0 + m1] = m[3][0] * a00 + m[3][1] * a01 + m[3][2] * a10 + m[3][3] * a11;
      }
    }
  }
}

void QuantumState::apply_uzz(int q0, int q1, double theta) {
  if (leaked(q0) || leaked(q1)) return;
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = std::size_t{1} << q1;
  const Cplx same = std::exp(Cplx(0.0, -theta / 2.0));
  const Cplx diff = std::exp(Cplx(0.0, theta / 2.0));
  const std::size_t dim = amps_.size();
  for (std::size_t i = 0; i < dim; ++i) {
    const bool b0 = (i & m0) != 0, b1 = (i & m1) != 0;
    amps_[i] *= (b0 == b1) ? same : diff;
  }
}

void QuantumState::apply_swap_label(int q0, int q1) {
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = std::size_t{1} << q1;
  const std::size_t dim = amps_.size();
  for (std::size_t i = 0; i < dim; ++i) {
    const bool b0 = (i & m0) != 0, b1 = (i & m1) != 0;
    if (b0 && !b1) std::swap(amps_[i], (amps_[i ^ m0 ^ m1]));
  }
  // Leak flags travel with the labels.
  const bool l0 = leaked(q0), l1 = leaked(q1);
  leak_mask_ &= ~((1u << q0) | (1u << q1));
  if (l0) leak_mask_ |= (1u << q1);
  if (l1) leak_mask_ |= (1u << q0);
}

double QuantumState::prob_one(int q) const {
  const std::size_t m = std::size_t{1} << q;
  double p = 0.0;
  const std::size_t dim = amps_.size();
  for (std::size_t i = 0; i < dim; ++i)
    if (i & m) p += std::norm(amps_[i]);
  return p;
}

void QuantumState::project(int q, int outcome, double prob) {
  const std::size_t m = std::size_t{1} << q;
  const double scale = 1.0 / std::sqrt(prob);
  const std::size_t dim = amps_.size();
  for (std::size_t i = 0; i < dim; ++i) {
    const bool b = (i & m) != 0;
    if (static_cast<int>(b) == outcome)
      amps_[i] *= scale;
    else
      amps_[i] = Cplx(0.0, 0.0);
  }
}

int QuantumState::measure(int q, Rng& rng) {
  const double p1 = prob_one(q);
  const int outcome = rng.uniform() < p1 ? 1 : 0;
  const double prob = outcome ? p1 : 1.0 - p1;
  QCCD_CHECK(prob > 1e-300, "measurement projected onto zero-norm branch");
  project(q, outcome, prob);
  return outcome;
}

void QuantumState::reset(int q, Rng& rng) {
  clear_leak(q);
  const int outcome = measure(q, rng);
  if (outcome == 1) apply_1q(q, gates::pauli_x());
}

std::uint64_t QuantumState::sample_basis_index(Rng& rng) const {
  const double u = rng.uniform();
  double acc = 0.0;
  const std::size_t dim = amps_.size();
  for (std::size_t i = 0; i < dim; ++i) {
    acc += std::norm(amps_[i]);
    if (u < acc) return i;
  }
  return dim - 1;
}

double QuantumState::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void QuantumState::check_normalized(double tol) const {
  QCCD_CHECK(std::abs(norm() - 1.0) < tol, "state norm drifted from 1");
}

Mat2 QuantumState::reduced_density(int q) const {
  const std::size_t m = std::size_t{1} << q;
  Mat2 rho = Mat2::Zero();
  const std::size_t dim = amps_.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & m) continue;
    const Cplx a0 = amps_[i];
    const Cplx a1 = amps_[i | m];
    rho(0, 0) += a0 * std::conj(a0);
    rho(0, 1) += a0 * std::conj(a1);
    rho(1, 0) += a1 * std::conj(a0);
    rho(1, 1) += a1 * std::conj(a1);
  }
  return rho;
}

}  // namespace qccd
