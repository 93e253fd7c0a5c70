/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <iosfwd>
#include <string>

#include "qccd/circuit.hpp"
#include "qccd/noise.hpp"

namespace qccd {

/// Line-oriented circuit text format. One op per line:
///
///   # comment
///   qubits 4
///   creg c 4
///   r1q q1 0.1 0.2 0.3          (Rz(a) Ry(b) Rz(g); named 1Q gates such
///   h q0                         as h/x/y/z/s/sdg/t/tdg/sx/rx/ry/rz are
///   rz q0 1.5708                 accepted and lowered to r1q)
///   uzz q0 q1 0.7854
///   swaplabel q0 q1
///   barrier q0 q1                (no operands = all qubits)
///   measure q0 -> c[3]
///   reset q0
///   if c[3]==1: x q0; z q1
///   if c==5: x q0
///   if parity(c)==1: x q0
///   if parity(c[0:3])==0: z q2   (bits 0,1,2)
///
/// Writing always emits canonical forms (named gates are not preserved),
/// so parse(write(parse(text))) == parse(text).
std::string write_circuit_text(const Circuit& c);
Circuit parse_circuit_text(const std::string& text);

/// Structured (JSON) equivalent; round-trips losslessly.
std::string write_circuit_json(const Circuit& c);
Circuit parse_circuit_json(const std::string& text);

/// Noise config as JSON key/value pairs mirroring NoiseModel fields.
/// Omitted fields keep their defaults.
std::string write_noise_json(const NoiseModel& m);
NoiseModel parse_noise_json(const std::string& text);

Circuit load_circuit_file(const std::string& path);  // by extension
void save_circuit_file(const Circuit& c, const std::string& path);
NoiseModel load_noise_file(const std::string& path);

}  // namespace qccd
