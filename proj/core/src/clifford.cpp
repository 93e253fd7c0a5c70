/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/clifford.hpp"

#include <cstdio>
#include <mutex>
#include <unordered_map>

namespace qccd::clifford {

namespace {

template <typename M>
std::string phase_key(const M& u) {
  // Fix the global phase against the first row-major entry whose
  // magnitude ties the maximum (ties are exact in Clifford matrices, so
  // the pick is stable), then print on a coarse grid. Clifford entries
  // are well separated and 1e-4 rounding cannot collide distinct ones.
  double best = 0.0;
  for (int i = 0; i < u.rows(); ++i)
    for (int j = 0; j < u.cols(); ++j) best = std::max(best, std::abs(u(i, j)));
  int bi = 0, bj = 0;
  [&] {
    for (int i = 0; i < u.rows(); ++i)
      for (int j = 0; j < u.cols(); ++j)
        if (std::abs(u(i, j)) > best - 1e-6) {
          bi = i;
          bj = j;
          return;
        }
  }();
  const Cplx phase = std::conj(u(bi, bj)) / std::abs(u(bi, bj));
  std::string key;
  key.reserve(u.rows() * u.cols() * 18);
  char buf[40];
  auto grid = [](double x) { return std::round(x * 1e4) / 1e4 + 0.0; };
  for (int i = 0; i < u.rows(); ++i)
    for (int j = 0; j < u.cols(); ++j) {
      const Cplx v = u(i, j) * phase;
      std::snprintf(buf, sizeof buf, "%.4f,%.4f;", grid(v.real()),
                    grid(v.imag()));
      key += buf;
    }
  return key;
}

struct C1Table {
  std::vector<Mat2> elements;
  std::unordered_map<std::string, int> index;
  std::vector<int> inverse;
};

const C1Table& c1_table() {
  static C1Table table = [] {
    C1Table t;
    auto try_add = [&](const Mat2& m) {
      const std::string key = phase_key(m);
      if (t.index.count(key)) return false;
      t.index[key] = static_cast<int>(t.elements.size());
      t.elements.push_back(m);
      return true;
    };
    try_add(Mat2::Identity());
    const std::array<Mat2, 2> gens = {gates::hadamard(), gates::s_gate()};
    // Closure under the generators.
    for (std::size_t i = 0; i < t.elements.size(); ++i) {
      for (const auto& g : gens) {
        try_add((g * t.elements[i]).eval());
        try_add((t.elements[i] * g).eval());
      }
    }
    QCCD_CHECK(t.elements.size() == 24, "1Q Clifford closure is not 24");
    t.inverse.resize(24);
    for (int i = 0; i < 24; ++i) {
      const auto it = t.index.find(phase_key(t.elements[i].adjoint().eval()));
      QCCD_CHECK(it != t.index.end(), "1Q Clifford inverse missing");
      t.inverse[i] = it->second;
    }
    return t;
  }();
  return table;
}

Mat4 class_matrix(int cls) {
  switch (cls) {
    case 0: return Mat4::Identity();
    case 1: return gates::cnot();
    case 2: return gates::iswap();
    case 3: return gates::swap();
    default: throw Error("bad 2Q Clifford class");
  }
}

struct C2Key {
  int l_q0, l_q1, cls, s_q0, s_q1;
};

struct C2Table {
  std::unordered_map<std::string, Clifford2> index;
};

const C2Table& c2_table() {
  static C2Table table = [] {
    C2Table t;
    for (int cls = 0; cls < 4; ++cls) {
      const int s_range = (cls == 1 || cls == 2) ? 3 : 1;
      for (int l0 = 0; l0 < 24; ++l0)
        for (int l1 = 0; l1 < 24; ++l1)
          for (int s0 = 0; s0 < s_range; ++s0)
            for (int s1 = 0; s1 < s_range; ++s1) {
              Clifford2 c{l0, l1, cls, s0, s1};
              const std::string key = phase_key(c.matrix());
              QCCD_CHECK(!t.index.count(key),
                         "2Q Clifford coset form is not a bijection");
              t.index.emplace(key, c);
            }
    }
    QCCD_CHECK(t.index.size() == 11520, "2Q Clifford group is not 11520");
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<Mat2>& c1_elements() { return c1_table().elements; }

int c1_index_of(const Mat2& u) {
  const auto& t = c1_table();
  const auto it = t.index.find(phase_key(u));
  QCCD_CHECK(it != t.index.end(), "matrix is not a 1Q Clifford");
  return it->second;
}

int c1_inverse(int index) { return c1_table().inverse.at(index); }

int sample_c1(Rng& rng) { return static_cast<int>(rng.uniform_int(24)); }

Mat2 s3_element(int exponent) {
  const Mat2 v = gates::s_gate() * gates::hadamard();
  Mat2 m = Mat2::Identity();
  for (int k = 0; k < exponent % 3; ++k) m = v * m;
  return m;
}

Mat4 Clifford2::matrix() const {
  const auto& c1 = c1_elements();
  const Mat4 left = gates::kron(c1[l_q1], c1[l_q0]);
  const Mat4 right = gates::kron(s3_element(s_q1), s3_element(s_q0));
  return left * class_matrix(cls) * right;
}

void Clifford2::append_ops(Circuit& c, int q0, int q1) const {
  const auto& c1 = c1_elements();
  if (cls == 1 || cls == 2) {
    c.append(Operation::rot1q(q0, s3_element(s_q0)));
    c.append(Operation::rot1q(q1, s3_element(s_q1)));
  }
  switch (cls) {
    case 0:
      break;
    case 1: {
      // CNOT (control q1): Hadamard-conjugated UZZ plus frame rotations.
      c.append(Operation::rot1q(q0, gates::hadamard()));
      c.append(Operation::uzz(q0, q1, -M_PI_2));
      c.append(Operation::rot1q(q0, (gates::rx(M_PI_2) * gates::hadamard()).eval()));
      c.append(Operation::rot1q(q1, gates::rz(M_PI_2)));
      break;
    }
    case 2: {
      // iSWAP = exp(i pi/4 YY) * exp(i pi/4 XX), each one UZZ.
      const Mat2 v = gates::rx(-M_PI_2);  // Z -> Y
      c.append(Operation::rot1q(q0, v.adjoint().eval()));
      c.append(Operation::rot1q(q1, v.adjoint().eval()));
      c.append(Operation::uzz(q0, q1, -M_PI_2));
      c.append(Operation::rot1q(q0, (gates::hadamard() * v).eval()));
      c.append(Operation::rot1q(q1, (gates::hadamard() * v).eval()));
      c.append(Operation::uzz(q0, q1, -M_PI_2));
      c.append(Operation::rot1q(q0, gates::hadamard()));
      c.append(Operation::rot1q(q1, gates::hadamard()));
      break;
    }
    case 3: {
      // SWAP needs three native gates; alternate CNOT directions.
      auto cnot_ops = [&](int ctrl, int tgt) {
        c.append(Operation::rot1q(tgt, gates::hadamard()));
        c.append(Operation::uzz(tgt, ctrl, -M_PI_2));
        c.append(Operation::rot1q(tgt, (gates::rx(M_PI_2) * gates::hadamard()).eval()));
        c.append(Operation::rot1q(ctrl, gates::rz(M_PI_2)));
      };
      cnot_ops(q1, q0);
      cnot_ops(q0, q1);
      cnot_ops(q1, q0);
      break;
    }
    default:
      throw Error("bad 2Q Clifford class");
  }
  c.append(Operation::rot1q(q0, c1[l_q0]));
  c.append(Operation::rot1q(q1, c1[l_q1]));
}

Clifford2 sample_c2(Rng& rng) {
  Clifford2 c;
  c.l_q0 = sample_c1(rng);
  c.l_q1 = sample_c1(rng);
  // Class weights 1 : 9 : 9 : 1 give the uniform distribution over the
  // 11520-element group.
  const std::uint64_t u = rng.uniform_int(20);
  if (u == 0) {
    c.cls = 0;
  } else if (u <= 9) {
    c.cls = 1;
    c.s_q0 = static_cast<int>((u - 1) % 3);
    c.s_q1 = static_cast<int>((u - 1) / 3);
  } else if (u <= 18) {
    c.cls = 2;
    c.s_q0 = static_cast<int>((u - 10) % 3);
    c.s_q1 = static_cast<int>((u - 10) / 3);
  } else {
    c.cls = 3;
  }
  return c;
}

Clifford2 c2_from_matrix(const Mat4& u) {
  const auto& t = c2_table();
  const auto it = t.index.find(phase_key(u));
  QCCD_CHECK(it != t.index.end(), "matrix is not a 2Q Clifford");
  return it->second;
}

std::size_t c2_order() { return c2_table().index.size(); }

}  // namespace qccd::clifford
