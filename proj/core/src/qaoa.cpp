/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/qaoa.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>

#include "qccd/stats.hpp"

namespace qccd::apps {

void QAOASpec::validate() const {
  QCCD_CHECK(n_vertices >= 4, "graph too small");
  QCCD_CHECK(gammas.size() == betas.size(), "one gamma and beta per layer");
  std::vector<int> degree(n_vertices, 0);
  for (const auto& [a, b] : edges) {
    QCCD_CHECK(a >= 0 && a < n_vertices && b >= 0 && b < n_vertices && a != b,
               "bad edge");
    degree[a]++;
    degree[b]++;
  }
  for (int d : degree) QCCD_CHECK(d == 3, "graph must be 3-regular");
}

std::vector<std::pair<int, int>> cube_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < 8; ++v)
    for (int bit = 0; bit < 3; ++bit) {
      const int u = v ^ (1 << bit);
      if (v < u) edges.emplace_back(v, u);
    }
  return edges;
}

Circuit qaoa_circuit(const QAOASpec& spec) {
  spec.validate();
  Circuit c(spec.n_vertices);
  for (int q = 0; q < spec.n_vertices; ++q)
    c.append(Operation::rot1q(q, gates::hadamard()));
  for (int layer = 0; layer < spec.layers(); ++layer) {
    for (const auto& [a, b] : spec.edges)
      c.append(Operation::uzz(a, b, -spec.gammas[layer]));
    for (int q = 0; q < spec.n_vertices; ++q)
      c.append(Operation::rot1q(q, gates::rx(2.0 * spec.betas[layer])));
  }
  return c;
}

namespace {

int cut_of(std::uint64_t bits, const std::vector<std::pair<int, int>>& edges) {
  int cut = 0;
  for (const auto& [a, b] : edges)
    cut += ((bits >> a) & 1) != ((bits >> b) & 1);
  return cut;
}

}  // namespace

double qaoa_exact_energy(const QAOASpec& spec) {
  const auto probs = ideal_probabilities(qaoa_circuit(spec));
  double energy = 0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (probs[i] > 0) energy += probs[i] * cut_of(i, spec.edges);
  return energy;
}

EnergyEstimate qaoa_energy(const QAOASpec& spec,
                           const std::optional<NoiseModel>& noise,
                           std::uint64_t seed, const RunOptions& opts) {
  Circuit c = qaoa_circuit(spec);
  c.add_creg("m", spec.n_vertices);
  for (int q = 0; q < spec.n_vertices; ++q)
    c.append(Operation::measure(q, "m", q));
  const auto rec = run_circuit(c, noise, seed, spec.shots, opts);

  EnergyEstimate out;
  const double n_edges = static_cast<double>(spec.edges.size());
  std::vector<stats::CircuitOutcome> cuts;
  for (const auto& s : rec.shots) {
    const int cut = cut_of(s.cregs.at("m"), spec.edges);
    out.best_cut = std::max(out.best_cut, cut);
    out.mean += cut;
    // Express each shot as a rate in [0, 1] so the bootstrap's binomial
    // redraw stays meaningful.
    cuts.push_back({0.0, cut / n_edges, 0});
  }
  out.mean /= rec.n_shots();
  const auto stat = [&](const std::vector<stats::CircuitOutcome>& d) {
    double m = 0;
    for (const auto& c2 : d) m += c2.rate;
    return m / d.size() * n_edges;
  };
  const auto boot =
      stats::bootstrap(cuts, stat, 1000, derive_seed(seed, "qaoa-boot"),
                       stats::BootstrapMethod::ReversePercentile);
  out.lo = boot.lo;
  out.hi = boot.hi;
  out.stderr_est = boot.stderr_est;
  return out;
}

namespace {

double objective(const QAOASpec& spec_template, const std::vector<double>& p,
                 const std::optional<NoiseModel>& noise, std::uint64_t seed,
                 std::uint64_t eval_index) {
  QAOASpec spec = spec_template;
  const int layers = static_cast<int>(p.size()) / 2;
  spec.gammas.assign(p.begin(), p.begin() + layers);
  spec.betas.assign(p.begin() + layers, p.end());
  if (spec.shots == 0) {
    QCCD_CHECK(!noise, "exact objective is noiseless; give a shot budget");
    return qaoa_exact_energy(spec);
  }
  return qaoa_energy(spec, noise, derive_seed(seed, "qaoa-eval", eval_index))
      .mean;
}

}  // namespace

OptimizerTrace qaoa_optimize(const QAOASpec& spec_template,
                             const OptimizerConfig& config,
                             const std::optional<NoiseModel>& noise,
                             std::uint64_t seed,
                             std::vector<double> initial_params) {
  const int layers = spec_template.layers();
  QCCD_CHECK(layers >= 1, "optimizer needs at least one layer");
  const int dim = 2 * layers;
  if (initial_params.empty()) {
    // Small nonzero angles; the landscape is periodic.
    initial_params.assign(dim, 0.0);
    for (int i = 0; i < layers; ++i) initial_params[i] = 0.4;
    for (int i = layers; i < dim; ++i) initial_params[i] = 0.2;
  }
  QCCD_CHECK(static_cast<int>(initial_params.size()) == dim,
             "initial parameter size mismatch");

  OptimizerTrace trace;
  std::uint64_t eval_index = 0;
  auto f = [&](const std::vector<double>& p) {
    const double e =
        objective(spec_template, p, noise, seed, eval_index++);
    trace.evals.emplace_back(p, e);
    return e;
  };

  std::vector<double> center = initial_params;
  double fc = f(center);
  double radius = config.initial_radius;

  while (radius > config.param_tol &&
         static_cast<int>(trace.evals.size()) < config.max_evals) {
    // Full quadratic interpolation set: axis points and pair points.
    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    pts.push_back(center);
    vals.push_back(fc);
    for (int i = 0; i < dim; ++i) {
      for (double sgn : {1.0, -1.0}) {
        auto p = center;
        p[i] += sgn * radius;
        pts.push_back(p);
        vals.push_back(f(p));
      }
    }
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        auto p = center;
        p[i] += radius;
        p[j] += radius;
        pts.push_back(p);
        vals.push_back(f(p));
      }

    // Least-squares quadratic model in the shifted coordinates.
    const int n_terms = 1 + dim + dim * (dim + 1) / 2;
    Eigen::MatrixXd design(pts.size(), n_terms);
    Eigen::VectorXd y(pts.size());
    for (std::size_t r = 0; r < pts.size(); ++r) {
      std::vector<double> d(dim);
      for (int i = 0; i < dim; ++i) d[i] = pts[r][i] - center[i];
      int col = 0;
      design(r, col++) = 1.0;
      for (int i = 0; i < dim; ++i) design(r, col++) = d[i];
      for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
          design(r, col++) = d[i] * d[j];
      y(r) = vals[r];
    }
    const Eigen::VectorXd coef =
        design.colPivHouseholderQr().solve(y);

    // Maximize the model over the trust box by projected Newton ascent.
    Eigen::VectorXd g(dim);
    Eigen::MatrixXd hess(dim, dim);
    {
      int col = 1;
      for (int i = 0; i < dim; ++i) g(i) = coef(col++);
      for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
          const double v = coef(col++);
          hess(i, j) = (i == j) ? 2.0 * v : v;
          hess(j, i) = hess(i, j);
        }
    }
    Eigen::VectorXd step = Eigen::VectorXd::Zero(dim);
    for (int it = 0; it < 60; ++it) {
      const Eigen::VectorXd grad = g + hess * step;
      step += 0.2 * radius * grad / std::max(grad.norm(), 1e-12);
      for (int i = 0; i < dim; ++i)
        step(i) = std::clamp(step(i), -radius, radius);
    }
    const double predicted =
        (g.dot(step) + 0.5 * step.dot(hess * step));

    std::vector<double> cand(center);
    for (int i = 0; i < dim; ++i) cand[i] += step(i);
    const double fcand = f(cand);
    const double actual = fcand - fc;
    if (actual > 0) {
      center = cand;
      fc = fcand;
      if (predicted > 0 && actual > 0.75 * predicted)
        radius = std::min(radius * 1.6, 1.5);
      else if (actual < 0.1 * std::max(predicted, 1e-12))
        radius *= 0.6;
    } else {
      radius *= 0.5;
    }
  }

  trace.converged = radius <= config.param_tol;
  trace.best_params = center;
  trace.best_energy = fc;
  return trace;
}

}  // namespace qccd::apps
