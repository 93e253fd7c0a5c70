/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/gates.hpp"

#include <cmath>

namespace qccd {

namespace gates {

namespace {
const Cplx kI(0.0, 1.0);
}

Mat2 identity2() { return Mat2::Identity(); }

Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 pauli_y() {
  Mat2 m;
  m << 0, -kI, kI, 0;
  return m;
}

Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 hadamard() {
  Mat2 m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Mat2 s_gate() {
  Mat2 m;
  m << 1, 0, 0, kI;
  return m;
}

Mat2 sdg_gate() { return s_gate().adjoint(); }

Mat2 t_gate() {
  Mat2 m;
  m << 1, 0, 0, std::exp(kI * (M_PI / 4.0));
  return m;
}

Mat2 tdg_gate() { return t_gate().adjoint(); }

Mat2 rx(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Mat2 m;
  m << c, -kI * s, -kI * s, c;
  return m;
}

Mat2 ry(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}

Mat2 rz(double theta) {
  Mat2 m;
  m << std::exp(-kI * (theta / 2.0)), 0, 0, std::exp(kI * (theta / 2.0));
  return m;
}

namespace {
// Principal square root of a single-qubit unitary: rotation by half the
// angle about the same axis, phase chosen to match the usual sqrt gates.
Mat2 sqrt_of(const Mat2& u) {
  Eigen::ComplexEigenSolver<Mat2> es(u);
  Mat2 d = Mat2::Zero();
  d(0, 0) = std::sqrt(es.eigenvalues()(0));
  d(1, 1) = std::sqrt(es.eigenvalues()(1));
  const Mat2 v = es.eigenvectors();
  return v * d * v.inverse();
}
}  // namespace

Mat2 sqrt_x() { return sqrt_of(pauli_x()); }
Mat2 sqrt_y() { return sqrt_of(pauli_y()); }
Mat2 sqrt_w() { return sqrt_of(((pauli_x() + pauli_y()) / std::sqrt(2.0)).eval()); }

Mat2 pauli(int index) {
  switch (index) {
    case 0: return identity2();
    case 1: return pauli_x();
    case 2: return pauli_y();
    case 3: return pauli_z();
    default: throw Error("pauli index out of range");
  }
}

Mat2 from_euler_zyz(double alpha, double beta, double gamma) {
  return rz(alpha) * ry(beta) * rz(gamma);
}

std::array<double, 3> to_euler_zyz(const Mat2& u) {
  QCCD_CHECK(is_unitary(u, 1e-8), "to_euler_zyz: matrix is not unitary");
  // Remove global phase by making det(u) = 1.
  Mat2 su = u / std::sqrt(u.determinant());
  const double beta = 2.0 * std::atan2(std::abs(su(1, 0)), std::abs(su(0, 0)));
  double alpha = 0.0, gamma = 0.0;
  if (std::abs(su(0, 0)) > 1e-12 && std::abs(su(1, 0)) > 1e-12) {
    const double a00 = std::arg(su(0, 0));
    const double a10 = std::arg(su(1, 0));
    alpha = a10 - a00;
    gamma = -(a10 + a00);
  } else if (std::abs(su(0, 0)) > 1e-12) {
    // beta ~ 0: only alpha + gamma matters.
    alpha = -2.0 * std::arg(su(0, 0));
    gamma = 0.0;
  } else {
    // beta ~ pi: only alpha - gamma matters.
    alpha = 2.0 * std::arg(su(1, 0));
    gamma = 0.0;
  }
  return {alpha, beta, gamma};
}

Mat4 uzz(double theta) {
  Mat4 m = Mat4::Zero();
  const Cplx same = std::exp(-kI * (theta / 2.0));
  const Cplx diff = std::exp(kI * (theta / 2.0));
  m(0, 0) = same;
  m(1, 1) = diff;
  m(2, 2) = diff;
  m(3, 3) = same;
  return m;
}

Mat4 cnot() {
  // Control = qubit 1 (second-least-significant bit), target = qubit 0.
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

Mat4 swap() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

Mat4 iswap() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1;
  m(1, 2) = kI;
  m(2, 1) = kI;
  m(3, 3) = 1;
  return m;
}

Mat4 cz() {
  Mat4 m = Mat4::Identity();
  m(3, 3) = -1;
  return m;
}

Mat4 kron(const Mat2& b_q1, const Mat2& a_q0) {
  Mat4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m.block<2, 2>(2 * i, 2 * j) = b_q1(i, j) * a_q0;
  return m;
}

}  // namespace gates

namespace {

template <typename M>
double phase_distance(const M& a, const M& b) {
  // Align phases using the largest-magnitude entry of b.
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (std::abs(b(i, j)) > best) {
        best = std::abs(b(i, j));
        bi = i;
        bj = j;
      }
  if (best < 1e-14) return (a - b).cwiseAbs().maxCoeff();
  Cplx phase = a(bi, bj) / b(bi, bj);
  const double mag = std::abs(phase);
  if (mag < 1e-14) return (a - b).cwiseAbs().maxCoeff();
  phase /= mag;
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace

double distance_up_to_phase(const Mat4& a, const Mat4& b) {
  return phase_distance(a, b);
}

double distance_up_to_phase(const Mat2& a, const Mat2& b) {
  return phase_distance(a, b);
}

bool is_unitary(const Mat2& u, double tol) {
  return ((u.adjoint() * u) - Mat2::Identity()).cwiseAbs().maxCoeff() < tol;
}

bool is_unitary(const Mat4& u, double tol) {
  return ((u.adjoint() * u) - Mat4::Identity()).cwiseAbs().maxCoeff() < tol;
}

double normalize_angle(double theta) {
  double t = std::fmod(theta + M_PI, 2.0 * M_PI);
  if (t < 0) t += 2.0 * M_PI;
  return t - M_PI;
}

}  // namespace qccd
