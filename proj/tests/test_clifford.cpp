/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qccd/clifford.hpp"
#include "qccd/simulator.hpp"
#include "test_util.hpp"

using namespace qccd;
using namespace qccd::clifford;

namespace {

Mat4 ops_to_matrix(const Circuit& c) {
  Mat4 u;
  for (int col = 0; col < 4; ++col) {
    QuantumState st(2);
    st.amplitudes().assign(4, Cplx(0, 0));
    st.amplitudes()[col] = Cplx(1, 0);
    for (const auto& op : c.ops) {
      if (op.kind == OpKind::Rot1Q)
        st.apply_1q(op.qubits[0],
                    gates::from_euler_zyz(op.euler[0], op.euler[1], op.euler[2]));
      else if (op.kind == OpKind::UZZ)
        st.apply_uzz(op.qubits[0], op.qubits[1], op.theta());
    }
    for (int r = 0; r < 4; ++r) u(r, col) = st.amplitudes()[r];
  }
  return u;
}

}  // namespace

TEST_CASE("there are exactly 24 single-qubit cliffords") {
  CHECK(c1_elements().size() == 24);
  for (const auto& m : c1_elements()) CHECK(is_unitary(m, 1e-12));
}

TEST_CASE("c1 inverse lookup closes the group") {
  for (int i = 0; i < 24; ++i) {
    const Mat2 prod = c1_elements()[i] * c1_elements()[c1_inverse(i)];
    CHECK(distance_up_to_phase(prod, Mat2::Identity()) < 1e-10);
  }
}

TEST_CASE("c1 sampling is uniform (chi-squared at 1%)") {
  Rng rng(11);
  std::vector<int> counts(24, 0);
  const int n = 10000;
  for (int i = 0; i < n; ++i) counts[sample_c1(rng)]++;
  double chi2 = 0.0;
  const double expect = n / 24.0;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  // 23 dof, 1% critical value.
  CHECK(chi2 < 41.64);
}

TEST_CASE("two-qubit clifford group has order 11520") {
  CHECK(c2_order() == 11520);
}

TEST_CASE("c2 canonical ops match the coset matrix") {
  Rng rng(13);
  for (int i = 0; i < 40; ++i) {
    const Clifford2 c = sample_c2(rng);
    Circuit circ(2);
    c.append_ops(circ, 0, 1);
    CHECK(circ.count_uzz() == c.uzz_count());
    CHECK(distance_up_to_phase(ops_to_matrix(circ), c.matrix()) < 1e-10);
  }
}

TEST_CASE("mean uzz count per 2Q clifford is 1.5") {
  Rng rng(17);
  double acc = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) acc += sample_c2(rng).uzz_count();
  CHECK(acc / n == doctest::Approx(1.5).epsilon(0.015));
}

TEST_CASE("c2 matrix lookup inverts sampling") {
  Rng rng(19);
  for (int i = 0; i < 25; ++i) {
    const Clifford2 c = sample_c2(rng);
    const Clifford2 back = c2_from_matrix(c.matrix());
    CHECK(distance_up_to_phase(back.matrix(), c.matrix()) < 1e-10);
  }
  // Inverse element lookup (used for RB inversion).
  for (int i = 0; i < 25; ++i) {
    const Clifford2 c = sample_c2(rng);
    const Clifford2 inv = c2_from_matrix(c.matrix().adjoint().eval());
    CHECK(distance_up_to_phase((inv.matrix() * c.matrix()).eval(),
                               Mat4::Identity()) < 1e-10);
  }
}

TEST_CASE("non-clifford lookup throws") {
  CHECK_THROWS_AS(c2_from_matrix(gates::uzz(0.3)), Error);
}
