/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qccd/gates.hpp"

namespace qccd {

/// Predicate over classical registers used by feed-forward operations.
struct Predicate {
  enum class Kind { BitEquals, RegEquals, ParityEquals };
  Kind kind = Kind::BitEquals;
  std::string creg;
  /// For BitEquals the bit index; for ParityEquals a bit mask.
  std::uint64_t mask = 0;
  std::uint64_t value = 0;

  bool evaluate(std::uint64_t reg_value) const;
  bool operator==(const Predicate&) const = default;
};

struct Operation;

enum class OpKind : std::uint8_t {
  Rot1Q,      // general single-qubit rotation, Z-Y-Z Euler angles
  UZZ,        // exp(-i theta ZZ / 2)
  Measure,    // projective Z measurement into a classical bit
  Reset,      // measure + conditional flip, clears the leak flag
  Barrier,    // scheduling fence over a qubit set
  Conditional,// classically controlled op list
  SwapLabel,  // zero-cost relabeling of two qubits
};

struct Operation {
  OpKind kind = OpKind::Barrier;
  // Qubit operands. Rot1Q/Measure/Reset use qubits[0]; UZZ/SwapLabel use
  // qubits[0..1]; Barrier uses the full list (empty = all qubits).
  std::vector<int> qubits;
  // Rot1Q: euler[0..2] = (alpha, beta, gamma); UZZ: euler[0] = theta.
  std::array<double, 3> euler{0.0, 0.0, 0.0};
  // Measure: destination register/bit.
  std::string creg;
  int creg_bit = 0;
  // Conditional payload.
  Predicate pred;
  std::vector<Operation> body;

  double theta() const { return euler[0]; }
  bool operator==(const Operation&) const = default;

  static Operation rot1q(int q, double alpha, double beta, double gamma);
  static Operation rot1q(int q, const Mat2& u);  // via ZYZ extraction
  static Operation uzz(int q0, int q1, double theta);
  static Operation measure(int q, std::string creg, int bit);
  static Operation reset(int q);
  static Operation barrier(std::vector<int> qubits = {});
  static Operation conditional(Predicate pred, std::vector<Operation> body);
  static Operation swap_label(int q0, int q1);
};

/// An ordered program over n_qubits plus named classical registers.
struct Circuit {
  int n_qubits = 0;
  std::map<std::string, int> cregs;  // name -> width in bits
  std::vector<Operation> ops;
  std::map<std::string, std::string> metadata;

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(n) {}

  void add_creg(const std::string& name, int width);
  void append(Operation op) { ops.push_back(std::move(op)); }

  /// Throws if any op references an out-of-range qubit or an undeclared
  /// classical register.
  void validate() const;

  /// Number of UZZ gates, descending into conditionals.
  int count_uzz() const;
  /// True if the circuit contains measure/reset/conditional ops.
  bool has_nonunitary_ops() const;

  bool operator==(const Circuit&) const = default;
};

/// Convenience layer used by the benchmark generators. Named gates are
/// lowered to Rot1Q/UZZ ops immediately.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(int n_qubits) : circuit_(n_qubits) {}

  CircuitBuilder& creg(const std::string& name, int width);
  CircuitBuilder& gate(int q, const Mat2& u);
  CircuitBuilder& h(int q);
  CircuitBuilder& x(int q);
  CircuitBuilder& y(int q);
  CircuitBuilder& z(int q);
  CircuitBuilder& s(int q);
  CircuitBuilder& sdg(int q);
  CircuitBuilder& rx(int q, double theta);
  CircuitBuilder& ry(int q, double theta);
  CircuitBuilder& rz(int q, double theta);
  CircuitBuilder& uzz(int q0, int q1, double theta);
  /// CNOT compiled to the native gate set (1Q layers + one UZZ(pi/2)).
  CircuitBuilder& cnot(int control, int target);
  CircuitBuilder& measure(int q, const std::string& creg, int bit);
  CircuitBuilder& reset(int q);
  CircuitBuilder& barrier(std::vector<int> qubits = {});
  CircuitBuilder& swap_label(int q0, int q1);
  CircuitBuilder& conditional(Predicate pred, std::vector<Operation> body);

  Circuit build() const { return circuit_; }
  Circuit& circuit() { return circuit_; }

 private:
  Circuit circuit_;
};

/// FNV-1a hash of a canonical serialization; stable across runs.
std::uint64_t circuit_hash(const Circuit& c);

}  // namespace qccd
