/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/circuit.hpp"

#include <bit>
#include <cstring>
#include <functional>
#include <sstream>

namespace qccd {

bool Predicate::evaluate(std::uint64_t reg_value) const {
  switch (kind) {
    case Kind::BitEquals:
      return ((reg_value & mask) != 0 ? 1u : 0u) == value;
    case Kind::RegEquals:
      return reg_value == value;
    case Kind::ParityEquals:
      return (std::popcount(reg_value & mask) & 1u) == value;
  }
  return false;
}

Operation Operation::rot1q(int q, double alpha, double beta, double gamma) {
  Operation op;
  op.kind = OpKind::Rot1Q;
  op.qubits = {q};
  op.euler = {alpha, beta, gamma};
  return op;
}

Operation Operation::rot1q(int q, const Mat2& u) {
  const auto e = gates::to_euler_zyz(u);
  return rot1q(q, e[0], e[1], e[2]);
}

Operation Operation::uzz(int q0, int q1, double theta) {
  QCCD_CHECK(q0 != q1, "uzz: qubits must be distinct");
  Operation op;
  op.kind = OpKind::UZZ;
  op.qubits = {q0, q1};
  op.euler[0] = normalize_angle(theta);
  return op;
}

Operation Operation::measure(int q, std::string creg, int bit) {
  Operation op;
  op.kind = OpKind::Measure;
  op.qubits = {q};
  op.creg = std::move(creg);
  op.creg_bit = bit;
  return op;
}

Operation Operation::reset(int q) {
  Operation op;
  op.kind = OpKind::Reset;
  op.qubits = {q};
  return op;
}

Operation Operation::barrier(std::vector<int> qubits) {
  Operation op;
  op.kind = OpKind::Barrier;
  op.qubits = std::move(qubits);
  return op;
}

Operation Operation::conditional(Predicate pred, std::vector<Operation> body) {
  Operation op;
  op.kind = OpKind::Conditional;
  op.pred = std::move(pred);
  op.body = std::move(body);
  return op;
}

Operation Operation::swap_label(int q0, int q1) {
  QCCD_CHECK(q0 != q1, "swap_label: qubits must be distinct");
  Operation op;
  op.kind = OpKind::SwapLabel;
  op.qubits = {q0, q1};
  return op;
}

void Circuit::add_creg(const std::string& name, int width) {
  QCCD_CHECK(width > 0 && width <= 64, "creg width must be in [1, 64]");
  QCCD_CHECK(!cregs.count(name), "creg already declared: " + name);
  cregs[name] = width;
}

namespace {

void validate_op(const Operation& op, const Circuit& c) {
  for (int q : op.qubits) {
    QCCD_CHECK(q >= 0 && q < c.n_qubits,
               "qubit index out of range: " + std::to_string(q));
  }
  switch (op.kind) {
    case OpKind::Measure: {
      auto it = c.cregs.find(op.creg);
      QCCD_CHECK(it != c.cregs.end(), "measure into undeclared creg: " + op.creg);
      QCCD_CHECK(op.creg_bit >= 0 && op.creg_bit < it->second,
                 "creg bit out of range");
      break;
    }
    case OpKind::Conditional: {
      auto it = c.cregs.find(op.pred.creg);
      QCCD_CHECK(it != c.cregs.end(),
                 "conditional reads undeclared creg: " + op.pred.creg);
      for (const auto& nested : op.body) validate_op(nested, c);
      break;
    }
    default:
      break;
  }
}

void count_uzz_rec(const Operation& op, int& n) {
  if (op.kind == OpKind::UZZ) ++n;
  for (const auto& nested : op.body) count_uzz_rec(nested, n);
}

}  // namespace

void Circuit::validate() const {
  QCCD_CHECK(n_qubits > 0, "circuit has no qubits");
  for (const auto& op : ops) validate_op(op, *this);
}

int Circuit::count_uzz() const {
  int n = 0;
  for (const auto& op : ops) count_uzz_rec(op, n);
  return n;
}

bool Circuit::has_nonunitary_ops() const {
  for (const auto& op : ops) {
    if (op.kind == OpKind::Measure || op.kind == OpKind::Reset ||
        op.kind == OpKind::Conditional)
      return true;
  }
  return false;
}

CircuitBuilder& CircuitBuilder::creg(const std::string& name, int width) {
  circuit_.add_creg(name, width);
  return *this;
}

CircuitBuilder& CircuitBuilder::gate(int q, const Mat2& u) {
  circuit_.append(Operation::rot1q(q, u));
  return *this;
}

CircuitBuilder& CircuitBuilder::h(int q) { return gate(q, gates::hadamard()); }
CircuitBuilder& CircuitBuilder::x(int q) { return gate(q, gates::pauli_x()); }
CircuitBuilder& CircuitBuilder::y(int q) { return gate(q, gates::pauli_y()); }
CircuitBuilder& CircuitBuilder::z(int q) { return gate(q, gates::pauli_z()); }
CircuitBuilder& CircuitBuilder::s(int q) { return gate(q, gates::s_gate()); }
CircuitBuilder& CircuitBuilder::sdg(int q) { return gate(q, gates::sdg_gate()); }

CircuitBuilder& CircuitBuilder::rx(int q, double theta) {
  circuit_.append(Operation::rot1q(q, gates::rx(theta)));
  return *this;
}

CircuitBuilder& CircuitBuilder::ry(int q, double theta) {
  circuit_.append(Operation::rot1q(q, gates::ry(theta)));
  return *this;
}

CircuitBuilder& CircuitBuilder::rz(int q, double theta) {
  circuit_.append(Operation::rot1q(q, theta, 0.0, 0.0));
  return *this;
}

CircuitBuilder& CircuitBuilder::uzz(int q0, int q1, double theta) {
  circuit_.append(Operation::uzz(q0, q1, theta));
  return *this;
}

CircuitBuilder& CircuitBuilder::cnot(int control, int target) {
  // CNOT = (Rz(pi/2) on control) (Rx(pi/2) on target) exp(i pi/4 Z X),
  // with the ZX factor realized by Hadamards around UZZ(-pi/2).
  h(target);
  uzz(control, target, -M_PI_2);
  h(target);
  rz(control, M_PI_2);
  rx(target, M_PI_2);
  return *this;
}

CircuitBuilder& CircuitBuilder::measure(int q, const std::string& creg, int bit) {
  circuit_.append(Operation::measure(q, creg, bit));
  return *this;
}

CircuitBuilder& CircuitBuilder::reset(int q) {
  circuit_.append(Operation::reset(q));
  return *this;
}

CircuitBuilder& CircuitBuilder::barrier(std::vector<int> qubits) {
  circuit_.append(Operation::barrier(std::move(qubits)));
  return *this;
}

CircuitBuilder& CircuitBuilder::swap_label(int q0, int q1) {
  circuit_.append(Operation::swap_label(q0, q1));
  return *this;
}

CircuitBuilder& CircuitBuilder::conditional(Predicate pred,
                                            std::vector<Operation> body) {
  circuit_.append(Operation::conditional(std::move(pred), std::move(body)));
  return *this;
}

namespace {

void hash_combine(std::uint64_t& h, std::uint64_t v) {
  h ^= v;
  h *= 0x100000001b3ull;
}

std::uint64_t double_bits(double d) {
  std::uint64_t u;
  static_assert(sizeof(u) == sizeof(d));
  std::memcpy(&u, &d, sizeof(u));
  return u;
}

void hash_op(std::uint64_t& h, const Operation& op) {
  hash_combine(h, static_cast<std::uint64_t>(op.kind));
  for (int q : op.qubits) hash_combine(h, static_cast<std::uint64_t>(q) + 1);
  for (double e : op.euler) hash_combine(h, double_bits(e));
  for (char c : op.creg) hash_combine(h, static_cast<unsigned char>(c));
  hash_combine(h, static_cast<std::uint64_t>(op.creg_bit));
  hash_combine(h, static_cast<std::uint64_t>(op.pred.kind));
  for (char c : op.pred.creg) hash_combine(h, static_cast<unsigned char>(c));
  hash_combine(h, op.pred.mask);
  hash_combine(h, op.pred.value);
  for (const auto& nested : op.body) hash_op(h, nested);
}

}  // namespace

std::uint64_t circuit_hash(const Circuit& c) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  hash_combine(h, static_cast<std::uint64_t>(c.n_qubits));
  for (const auto& [name, width] : c.cregs) {
    for (char ch : name) hash_combine(h, static_cast<unsigned char>(ch));
    hash_combine(h, static_cast<std::uint64_t>(width));
  }
  for (const auto& op : c.ops) hash_op(h, op);
  for (const auto& [k, v] : c.metadata) {
    for (char ch : k) hash_combine(h, static_cast<unsigned char>(ch));
    for (char ch : v) hash_combine(h, static_cast<unsigned char>(ch));
  }
  return h;
}

}  // namespace qccd
