/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace qccd {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Cplx = std::complex<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define QCCD_CHECK(cond, msg)            \
  do {                                   \
    if (!(cond)) throw ::qccd::Error(msg); \
  } while (0)

namespace gates {

Mat2 identity2();
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 hadamard();
Mat2 s_gate();
Mat2 sdg_gate();
Mat2 t_gate();
Mat2 tdg_gate();
Mat2 rx(double theta);
Mat2 ry(double theta);
Mat2 rz(double theta);
/// sqrt(X), sqrt(Y) and sqrt(W) with W = (X + Y)/sqrt(2).
Mat2 sqrt_x();
Mat2 sqrt_y();
Mat2 sqrt_w();
/// Single-qubit Pauli by index 0..3 = I, X, Y, Z.
Mat2 pauli(int index);

/// Z-Y-Z Euler composition Rz(alpha) * Ry(beta) * Rz(gamma).
Mat2 from_euler_zyz(double alpha, double beta, double gamma);
/// Inverse of from_euler_zyz up to global phase.
std::array<double, 3> to_euler_zyz(const Mat2& u);

/// Native entangler exp(-i theta ZZ / 2) as a 4x4 matrix (qubit 0 = LSB).
Mat4 uzz(double theta);
Mat4 cnot();  // control = qubit 1, target = qubit 0
Mat4 swap();
Mat4 iswap();
Mat4 cz();

/// kron(a, b) with qubit 0 = LSB convention: `b` acts on qubit 0.
Mat4 kron(const Mat2& b_q1, const Mat2& a_q0);

}  // namespace gates

/// Maximum |.| entry of a - b after aligning global phase, i.e. the
/// distance min_phi max_ij |a_ij - e^{i phi} b_ij|.
double distance_up_to_phase(const Mat4& a, const Mat4& b);
double distance_up_to_phase(const Mat2& a, const Mat2& b);

bool is_unitary(const Mat2& u, double tol = 1e-10);
bool is_unitary(const Mat4& u, double tol = 1e-10);

/// Wrap an angle into the canonical range [-pi, pi).
double normalize_angle(double theta);

}  // namespace qccd
