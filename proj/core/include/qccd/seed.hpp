/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <string_view>

namespace qccd {

/// Counter-based seed derivation. A single master seed fans out to
/// independent streams identified by a domain string and an index
/// (circuit number, shot number, bootstrap resample, ...). The same
/// (master, domain, index) triple always yields the same stream, so
/// work can be distributed across threads without changing results.
std::uint64_t derive_seed(std::uint64_t master, std::string_view domain,
                          std::uint64_t index = 0);

/// Deterministic PRNG (xoshiro256** core seeded via splitmix64).
/// All distributions are implemented in-house so that sampled values do
/// not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform double in [0, 1).
  double uniform();
  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t uniform_int(std::uint64_t n);
  bool bernoulli(double p);
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace qccd
