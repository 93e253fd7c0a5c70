/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qccd/circuit.hpp"
#include "qccd/gates.hpp"

namespace testutil {

/// Three-sigma binomial tolerance for a rate estimated from n samples.
inline double binom3sigma(double p, int n) {
  return 3.0 * std::sqrt(std::max(p * (1.0 - p), 1e-12) / n);
}

/// Kolmogorov-Smirnov test statistic against a uniform CDF on [lo, hi].
inline double ks_uniform(std::vector<double> samples, double lo, double hi) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = (samples[i] - lo) / (hi - lo);
    d = std::max(d, std::abs(cdf - (i + 1) / n));
    d = std::max(d, std::abs(cdf - i / n));
  }
  return d;
}

/// KS critical value at the 1% level (asymptotic).
inline double ks_critical_1pct(std::size_t n) {
  return 1.628 / std::sqrt(static_cast<double>(n));
}

/// Builds a CNOT out of native ops (control, target).
inline void add_cnot(qccd::Circuit& c, int control, int target) {
  qccd::CircuitBuilder b(c.n_qubits);
  b.cnot(control, target);
  for (auto& op : b.circuit().ops) c.ops.push_back(op);
}

/// Bell-pair circuit on qubits (0, 1) with measurement.
inline qccd::Circuit bell_circuit() {
  qccd::CircuitBuilder b(2);
  b.creg("c", 2).h(0).cnot(0, 1).measure(0, "c", 0).measure(1, "c", 1);
  return b.build();
}

/// Total-variation distance between two distributions.
inline double tv_distance(const std::vector<double>& p,
                          const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s / 2.0;
}

}  // namespace testutil
