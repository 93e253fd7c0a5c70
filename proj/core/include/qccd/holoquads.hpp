/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <map>
#include <optional>

#include "qccd/noise.hpp"
#include "qccd/simulator.hpp"

namespace qccd::apps {

/// Kicked-Ising dynamics on a bond-dimension-2 matrix product state,
/// executed with mid-circuit measurement and qubit reuse inside a fixed
/// physical budget.
struct HoloSpec {
  int chain_length = 8;  // L (even)
  int layers = 2;        // t brickwork layers
  int n_bond = 1;        // chi = 2
  int n_max = 0;         // physical qubits; 0 = maximally serial
  double kx = 0.3, ky = 0.5, kz = 1.25;  // MPS pair-generation couplings
  double h_kick = 0.05;

  int min_width() const { return n_bond + layers + 2; }
  int max_width() const { return n_bond + chain_length; }
  void validate() const;
};

/// Brickwork gate (u+ (x) u-) exp(-i pi/4 (XX + YY)) (v- (x) v+) with
/// u+ = e^{-ihZ} e^{i pi/4 X} e^{-i pi/4 Y}, u- = e^{i pi/4 X} e^{-i pi/4 Y},
/// v- = e^{i pi/4 Y} e^{-ihZ}, v+ = e^{i pi/4 Y}; first factor acts on
/// the left site.
Mat4 sdki_gate(double h_kick);

/// Pair-generation unitary W = exp(-i (Kx XX + Ky YY + Kz ZZ)) acting on
/// (bond, site), bond = qubit 0 of the 4x4 index.
Mat4 mps_w_gate(double kx, double ky, double kz);

/// Space-time reshuffle unitarity test: U~[(c,a),(d,b)] = U[(a,b),(c,d)].
bool is_dual_unitary(const Mat4& u, double tol = 1e-10);

struct HoloCircuit {
  Circuit circuit;
  int max_alive = 0;              // peak physical-qubit usage
  bool leak_gadget = false;       // bond gadget attached ("leak" creg)
  // Site s's X-basis outcome lands in creg "x" bit s; bond in creg "b".
};

/// Builds the full sequence: per pair, a Bell pair plus W against the
/// bond; then t staggered brickwork layers of the kicked-Ising gate, one
/// UZZ per gate plus a label swap; sites measured in the X basis as soon
/// as their causal cone closes, freeing their physical qubit.
HoloCircuit build_holoquads(const HoloSpec& spec, bool with_leak_gadget);

struct HoloResult {
  std::map<int, double> cxx;       // r -> smoothed correlator
  std::map<int, double> cxx_err;   // standard error of the mean
  int shots_kept = 0;
  int shots_discarded = 0;  // bond flagged as leaked
};

/// Estimates C^xx(r, t) = (1/2L) sum_j sum_{delta=0,1} <X_j X_{j+r+delta}>
/// (site indices mod L) from X-basis shots. Shots whose bond leak flag
/// reads 1 are discarded.
HoloResult run_holoquads(const HoloSpec& spec,
                         const std::optional<NoiseModel>& noise,
                         std::uint64_t seed, int shots,
                         const std::vector<int>& r_values,
                         const RunOptions& opts = {});

}  // namespace qccd::apps
