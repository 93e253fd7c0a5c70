/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <vector>

#include "qccd/circuit.hpp"
#include "qccd/seed.hpp"

namespace qccd::clifford {

/// The 24 single-qubit Cliffords (canonical matrices, fixed order).
const std::vector<Mat2>& c1_elements();
/// Index of a matrix in c1_elements, compared up to global phase.
int c1_index_of(const Mat2& u);
int c1_inverse(int index);
int sample_c1(Rng& rng);

/// Two-qubit Clifford in coset form
///   (L1 (x) L0) * M * (S1 (x) S0)
/// where L are 1Q Cliffords, M in {I, CNOT, iSWAP, SWAP} and S in the
/// order-3 axis-cycling subgroup {I, V, V^2}. The four classes have sizes
/// 576 / 5184 / 5184 / 576 (total 11520) and native costs 0/1/2/3
/// UZZ(pi/2) gates, averaging 1.5 per Clifford.
struct Clifford2 {
  int l_q0 = 0, l_q1 = 0;  // 1Q Clifford indices
  int cls = 0;             // 0 = local, 1 = CNOT, 2 = iSWAP, 3 = SWAP
  int s_q0 = 0, s_q1 = 0;  // S3 exponents (0..2), used by cls 1 and 2

  Mat4 matrix() const;
  int uzz_count() const { return cls; }
  /// Appends the canonical native-gate realization on (q0, q1).
  void append_ops(Circuit& c, int q0, int q1) const;
};

Clifford2 sample_c2(Rng& rng);
/// Group-table lookup (up to global phase); throws for non-Cliffords.
Clifford2 c2_from_matrix(const Mat4& u);
/// Number of distinct group elements (sanity hook for tests).
std::size_t c2_order();

/// The axis-cycling generator V with V X V^-1 = Z, V Z V^-1 = Y.
Mat2 s3_element(int exponent);

}  // namespace qccd::clifford
