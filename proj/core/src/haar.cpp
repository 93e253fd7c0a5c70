/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/haar.hpp"

namespace qccd {

namespace {

Eigen::MatrixXcd haar_impl(int dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Cplx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so Q is Haar rather than QR-biased.
  for (int j = 0; j < dim; ++j) {
    const Cplx d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0 ? d / a : Cplx(1, 0));
  }
  return q;
}

}  // namespace

Mat2 sample_haar_2(Rng& rng) { return haar_impl(2, rng); }

Mat4 sample_haar_4(Rng& rng) { return haar_impl(4, rng); }

Eigen::MatrixXcd sample_haar(int dim, Rng& rng) {
  QCCD_CHECK(dim == 2 || dim == 4, "sample_haar supports dim 2 or 4");
  return haar_impl(dim, rng);
}

}  // namespace qccd
