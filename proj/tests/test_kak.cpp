/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qccd/haar.hpp"
#include "qccd/kak.hpp"
#include "qccd/simulator.hpp"
#include "test_util.hpp"

using namespace qccd;

TEST_CASE("haar samples are unitary") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(is_unitary(sample_haar_2(rng), 1e-10));
    if (i < 200) CHECK(is_unitary(sample_haar_4(rng), 1e-10));
  }
  CHECK_THROWS_AS(sample_haar(3, rng), Error);
}

TEST_CASE("haar first-moment |U00|^2 averages 1/dim") {
  Rng rng(2);
  double acc = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) acc += std::norm(sample_haar_2(rng)(0, 0));
  CHECK(acc / n == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("haar eigenphases are uniform (KS at 1%)") {
  Rng rng(3);
  std::vector<double> phases;
  for (int i = 0; i < 2000; ++i) {
    const Mat2 u = sample_haar_2(rng);
    Eigen::ComplexEigenSolver<Mat2> es(u);
    phases.push_back(std::arg(es.eigenvalues()(0)));
    phases.push_back(std::arg(es.eigenvalues()(1)));
  }
  const double d = testutil::ks_uniform(phases, -M_PI, M_PI);
  CHECK(d < testutil::ks_critical_1pct(phases.size()));
}

TEST_CASE("kak of identity reconstructs and has three pi/2 gates") {
  const auto kak = kak_decompose(Mat4::Identity());
  CHECK(distance_up_to_phase(kak.reconstruct(), Mat4::Identity()) < 1e-10);
  CHECK(kak.uzz_count() == 3);
}

TEST_CASE("kak of uzz(pi/2) itself") {
  const Mat4 u = gates::uzz(M_PI_2);
  const auto kak = kak_decompose(u);
  CHECK(distance_up_to_phase(kak.reconstruct(), u) < 1e-10);
}

TEST_CASE("kak of named entanglers") {
  for (const Mat4& u : {gates::cnot(), gates::swap(), gates::iswap(), gates::cz()}) {
    const auto kak = kak_decompose(u);
    CHECK(distance_up_to_phase(kak.reconstruct(), u) < 1e-9);
  }
}

TEST_CASE("kak of 100 haar-random SU(4) elements") {
  Rng rng(5);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Mat4 u = sample_haar_4(rng);
    const auto kak = kak_decompose(u);
    worst = std::max(worst, distance_up_to_phase(kak.reconstruct(), u));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("kak rejects non-unitary input") {
  Mat4 bad = Mat4::Identity();
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(kak_decompose(bad), Error);
}

TEST_CASE("kak ops reproduce the matrix through the simulator") {
  Rng rng(6);
  const Mat4 u = sample_haar_4(rng);
  const auto kak = kak_decompose(u);
  Circuit c(2);
  kak.append_ops(c, 0, 1);
  CHECK(c.count_uzz() == 3);
  // Column-by-column comparison via basis-state evolution.
  for (int col = 0; col < 4; ++col) {
    QuantumState st(2);
    st.amplitudes().assign(4, Cplx(0, 0));
    st.amplitudes()[col] = Cplx(1, 0);
    for (const auto& op : c.ops) {
      if (op.kind == OpKind::Rot1Q)
        st.apply_1q(op.qubits[0],
                    gates::from_euler_zyz(op.euler[0], op.euler[1], op.euler[2]));
      else
        st.apply_uzz(op.qubits[0], op.qubits[1], op.theta());
    }
    // Align phase using the largest entry of the target column.
    int big = 0;
    for (int r = 1; r < 4; ++r)
      if (std::abs(u(r, col)) > std::abs(u(big, col))) big = r;
    const Cplx phase = st.amplitudes()[big] / u(big, col);
    for (int r = 0; r < 4; ++r)
      CHECK(std::abs(st.amplitudes()[r] - phase * u(r, col)) < 1e-8);
  }
}

TEST_CASE("weyl coordinates of the canonical gates") {
  // UZZ(theta) has pure ZZ content theta/2 modulo local frames.
  const auto w = weyl_decompose(gates::uzz(0.8));
  const Mat4 rebuilt = w.reconstruct();
  CHECK(distance_up_to_phase(rebuilt, gates::uzz(0.8)) < 1e-9);
}

TEST_CASE("split_kron recovers tensor factors") {
  Rng rng(7);
  const Mat2 a = sample_haar_2(rng), b = sample_haar_2(rng);
  Mat2 ra, rb;
  split_kron(gates::kron(b, a), ra, rb);
  CHECK(distance_up_to_phase(gates::kron(rb, ra), gates::kron(b, a)) < 1e-10);
}
