/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/kak.hpp"

#include <cmath>
#include <vector>

namespace qccd {

namespace {

const Cplx kI(0.0, 1.0);

Mat4 xx() { return gates::kron(gates::pauli_x(), gates::pauli_x()); }
Mat4 yy() { return gates::kron(gates::pauli_y(), gates::pauli_y()); }
Mat4 zz() { return gates::kron(gates::pauli_z(), gates::pauli_z()); }

Mat4 canonical_gate(double a, double b, double c) {
  // XX, YY, ZZ commute; exponentiate factor by factor.
  auto expfac = [](const Mat4& p, double t) {
    return (std::cos(t) * Mat4::Identity() + kI * std::sin(t) * p).eval();
  };
  return expfac(xx(), a) * expfac(yy(), b) * expfac(zz(), c);
}

/// Magic basis: columns are the Bell-type states in which local unitaries
/// become real orthogonal matrices and XX/YY/ZZ are simultaneously
/// diagonal.
Mat4 magic_basis() {
  Mat4 q;
  q << 1, 0, 0, kI,
       0, kI, 1, 0,
       0, kI, -1, 0,
       1, 0, 0, -kI;
  return q / std::sqrt(2.0);
}

/// Real orthogonal diagonalization of a commuting pair of real symmetric
/// matrices (given as re + i*im of a unitary complex symmetric matrix).
Eigen::Matrix4d simdiag(const Eigen::Matrix4d& re, const Eigen::Matrix4d& im) {
  // Group the eigenspaces of `re`, then diagonalize `im` inside each group.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(re);
  Eigen::Matrix4d p = es.eigenvectors();
  const Eigen::Vector4d ev = es.eigenvalues();
  int start = 0;
  while (start < 4) {
    int end = start + 1;
    while (end < 4 && std::abs(ev(end) - ev(start)) < 1e-7) ++end;
    if (end - start > 1) {
      const auto block =
          (p.middleCols(start, end - start).transpose() * im *
           p.middleCols(start, end - start)).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bs(block);
      p.middleCols(start, end - start) =
          p.middleCols(start, end - start) * bs.eigenvectors();
    }
    start = end;
  }
  return p;
}

}  // namespace

Mat4 WeylDecomposition::canonical() const { return canonical_gate(a, b, c); }

Mat4 WeylDecomposition::reconstruct() const {
  return gates::kron(k1_q1, k1_q0) * canonical() * gates::kron(k2_q1, k2_q0);
}

void split_kron(const Mat4& v, Mat2& a_q0, Mat2& b_q1) {
  // Rearrange v[(r1 r0), (c1 c0)] into m[(r1 c1), (r0 c0)]; a Kronecker
  // product becomes rank one and the factors are the singular vectors.
  Eigen::Matrix4cd m;
  for (int r1 = 0; r1 < 2; ++r1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int r0 = 0; r0 < 2; ++r0)
        for (int c0 = 0; c0 < 2; ++c0)
          m(2 * r1 + c1, 2 * r0 + c0) = v(2 * r1 + r0, 2 * c1 + c0);
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s0 = svd.singularValues()(0);
  const Eigen::Vector4cd u = svd.matrixU().col(0) * std::sqrt(s0);
  const Eigen::Vector4cd w = svd.matrixV().col(0).conjugate() * std::sqrt(s0);
  b_q1 << u(0), u(1), u(2), u(3);
  a_q0 << w(0), w(1), w(2), w(3);
  // Push phases so both factors are special unitary (up to +-1).
  const Cplx db = b_q1.determinant();
  const Cplx da = a_q0.determinant();
  b_q1 /= std::sqrt(db);
  a_q0 /= std::sqrt(da);
}

WeylDecomposition weyl_decompose(const Mat4& u) {
  QCCD_CHECK(is_unitary(u, 1e-8), "weyl_decompose: input is not unitary");
  Mat4 su = u;
  const Cplx det = su.determinant();
  su *= std::pow(det, -0.25);

  const Mat4 q = magic_basis();
  const Mat4 m = q.adjoint() * su * q;
  const Mat4 m2 = m.transpose() * m;

  const Eigen::Matrix4d p = simdiag(m2.real(), m2.imag());
  Eigen::Vector4d theta;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector4cd col = p.col(k).cast<Cplx>();
    const Cplx d = col.transpose() * m2 * col;
    theta(k) = std::arg(d) / 2.0;
  }
  // Verify the diagonalization actually worked.
  {
    const Mat4 d = p.transpose().cast<Cplx>() * m2 * p.cast<Cplx>();
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) off = std::max(off, std::abs(d(i, j)));
    QCCD_CHECK(off < 1e-7, "weyl_decompose: eigenbasis failed to diagonalize");
  }

  Eigen::Matrix4d pfixed = p;
  if (pfixed.determinant() < 0) pfixed.col(3) *= -1.0;
  // Make det(exp(-i Theta) * M * P) real positive so O lands in SO(4).
  Mat4 s_inv = Mat4::Zero();
  for (int k = 0; k < 4; ++k) s_inv(k, k) = std::exp(-kI * theta(k));
  Mat4 o = m * pfixed.cast<Cplx>() * s_inv;
  if (o.determinant().real() < 0) {
    theta(0) += M_PI;
    s_inv(0, 0) = std::exp(-kI * theta(0));
    o = m * pfixed.cast<Cplx>() * s_inv;
  }
  QCCD_CHECK(o.imag().cwiseAbs().maxCoeff() < 1e-6,
             "weyl_decompose: left factor is not real orthogonal");

  // Extract the canonical coefficients from the magic-basis phases.
  // theta_k = a x_k + b y_k + c z_k + phi with x/y/z the (real, +-1)
  // diagonals of XX/YY/ZZ in the magic basis.
  Eigen::Matrix4d coeff;
  const Mat4 dx = q.adjoint() * xx() * q;
  const Mat4 dy = q.adjoint() * yy() * q;
  const Mat4 dz = q.adjoint() * zz() * q;
  for (int k = 0; k < 4; ++k) {
    coeff(k, 0) = dx(k, k).real();
    coeff(k, 1) = dy(k, k).real();
    coeff(k, 2) = dz(k, k).real();
    coeff(k, 3) = 1.0;
  }
  const Eigen::Vector4d abc_phi = coeff.colPivHouseholderQr().solve(theta);

  WeylDecomposition out;
  out.a = abc_phi(0);
  out.b = abc_phi(1);
  out.c = abc_phi(2);
  const Mat4 k1 = q * o * q.adjoint();
  const Mat4 k2 = q * pfixed.transpose().cast<Cplx>() * q.adjoint();
  split_kron(k1, out.k1_q0, out.k1_q1);
  split_kron(k2, out.k2_q0, out.k2_q1);
  return out;
}

namespace {

/// Builds sequences of [local layer | uzz] items in application order and
/// merges adjacent local layers.
class Seq {
 public:
  void local(const Mat2& on_q0, const Mat2& on_q1) {
    if (!items_.empty() && items_.back().is_local) {
      items_.back().q0 = on_q0 * items_.back().q0;
      items_.back().q1 = on_q1 * items_.back().q1;
    } else {
      items_.push_back({true, on_q0, on_q1, 0.0});
    }
  }

  void uzz(double theta) {
    // Normalize to +pi/2: UZZ(-pi/2) = phase * (Z (x) Z) * UZZ(pi/2).
    if (theta < 0) {
      items_.push_back({false, Mat2(), Mat2(), M_PI_2});
      local(gates::pauli_z(), gates::pauli_z());
    } else {
      items_.push_back({false, Mat2(), Mat2(), theta});
    }
  }

  /// CNOT with control q1, target q0, up to global phase.
  void cnot() {
    local(gates::hadamard(), Mat2::Identity());
    uzz(-M_PI_2);
    local(gates::hadamard(), Mat2::Identity());
    local(gates::rx(M_PI_2), gates::rz(M_PI_2));
  }

  KakDecomposition finish() const {
    KakDecomposition kak;
    for (auto& layer : kak.layers) layer = {Mat2::Identity(), Mat2::Identity()};
    int layer = 0;
    for (const auto& it : items_) {
      if (it.is_local) {
        kak.layers[layer][0] = it.q0 * kak.layers[layer][0];
        kak.layers[layer][1] = it.q1 * kak.layers[layer][1];
      } else {
        QCCD_CHECK(layer < 3 && std::abs(it.theta - M_PI_2) < 1e-12,
                   "kak sequence must contain exactly three UZZ(pi/2)");
        ++layer;
      }
    }
    QCCD_CHECK(layer == 3, "kak sequence must contain exactly three UZZ(pi/2)");
    return kak;
  }

 private:
  struct Item {
    bool is_local;
    Mat2 q0, q1;
    double theta;
  };
  std::vector<Item> items_;
};

}  // namespace

Mat4 KakDecomposition::reconstruct() const {
  Mat4 u = gates::kron(layers[0][1], layers[0][0]);
  for (int k = 1; k < 4; ++k)
    u = gates::kron(layers[k][1], layers[k][0]) * gates::uzz(M_PI_2) * u;
  return u;
}

void KakDecomposition::append_ops(Circuit& c, int q0, int q1) const {
  for (int k = 0; k < 4; ++k) {
    c.append(Operation::rot1q(q0, layers[k][0]));
    c.append(Operation::rot1q(q1, layers[k][1]));
    if (k < 3) c.append(Operation::uzz(q0, q1, M_PI_2));
  }
}

KakDecomposition kak_decompose(const Mat4& u) {
  const WeylDecomposition w = weyl_decompose(u);

  // Canonical gate as three CNOT-conjugated rotations:
  //   N(a,b,c) = e^{i b YY} . C . (Rz(-2c) q0, Rx(-2a) q1) . C
  // with C the CNOT (control q1), using
  //   C (Rz(alpha) target, Rx(beta) control) C = e^{-i alpha/2 ZZ} e^{-i beta/2 XX},
  // and e^{i b YY} folded into the last CNOT through the local basis
  // change (w1, w0): Z -> Y on both, X -> Z on q1, X -> X on q0.
  Seq seq;
  seq.cnot();
  seq.local(gates::rz(-2.0 * w.c), gates::rx(-2.0 * w.a));
  seq.local(gates::rx(M_PI_2), gates::rz(M_PI_2));
  const Mat2 w0 = gates::rx(-M_PI_2);
  const Mat2 w1 = gates::s_gate() * gates::hadamard();
  seq.local(w0.adjoint(), w1.adjoint());
  seq.cnot();
  seq.local(gates::rz(-2.0 * w.b), gates::rx(-M_PI_2));
  seq.cnot();
  seq.local(w0, w1);

  KakDecomposition kak = seq.finish();
  // Fold the Weyl local layers into the outermost 1Q layers.
  kak.layers[0][0] = kak.layers[0][0] * w.k2_q0;
  kak.layers[0][1] = kak.layers[0][1] * w.k2_q1;
  kak.layers[3][0] = w.k1_q0 * kak.layers[3][0];
  kak.layers[3][1] = w.k1_q1 * kak.layers[3][1];

  QCCD_CHECK(distance_up_to_phase(kak.reconstruct(), u) < 1e-8,
             "kak_decompose: reconstruction check failed");
  return kak;
}

}  // namespace qccd
