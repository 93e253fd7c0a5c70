/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "qccd/gates.hpp"
#include "qccd/seed.hpp"

namespace qccd {

/// Haar-random unitaries via QR of a complex Ginibre matrix with the
/// phase correction that makes the distribution unitarily invariant.
Mat2 sample_haar_2(Rng& rng);
Mat4 sample_haar_4(Rng& rng);

/// dim must be 2 or 4; wraps the fixed-size samplers.
Eigen::MatrixXcd sample_haar(int dim, Rng& rng);

}  // namespace qccd
