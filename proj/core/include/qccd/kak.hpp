/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <array>

#include "qccd/circuit.hpp"
#include "qccd/gates.hpp"

namespace qccd {

/// Cartan (Weyl) form of a two-qubit unitary:
///   U ~ (K1_1 (x) K1_0) * exp(i (a XX + b YY + c ZZ)) * (K2_1 (x) K2_0)
/// up to global phase.
struct WeylDecomposition {
  Mat2 k1_q0, k1_q1;  // left local layer
  Mat2 k2_q0, k2_q1;  // right local layer
  double a = 0, b = 0, c = 0;

  Mat4 canonical() const;    // exp(i (a XX + b YY + c ZZ))
  Mat4 reconstruct() const;  // up to global phase
};

WeylDecomposition weyl_decompose(const Mat4& u);

/// Fixed-depth compilation of an arbitrary two-qubit unitary into three
/// UZZ(pi/2) gates separated by four single-qubit layers:
///   U ~ L3 * UZZ(pi/2) * L2 * UZZ(pi/2) * L1 * UZZ(pi/2) * L0
/// with Lk = lk_q1 (x) lk_q0, up to global phase.
struct KakDecomposition {
  std::array<std::array<Mat2, 2>, 4> layers;  // [layer][qubit]; layer 0 first

  Mat4 reconstruct() const;
  /// Appends the gate sequence acting on circuit qubits (q0, q1).
  void append_ops(Circuit& c, int q0, int q1) const;
  int uzz_count() const { return 3; }
};

/// Requires u unitary within 1e-8.
KakDecomposition kak_decompose(const Mat4& u);

/// Splits a tensor-product unitary v ~ b (x) a (qubit 0 factor `a`) via a
/// rank-one rearrangement. Exact up to global phase when v is a product.
void split_kron(const Mat4& v, Mat2& a_q0, Mat2& b_q1);

}  // namespace qccd
