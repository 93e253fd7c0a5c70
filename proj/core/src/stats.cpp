/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "qccd/gates.hpp"

namespace qccd::stats {

namespace {

struct ModelSpec {
  int n_params;
  std::vector<std::string> names;
  std::vector<std::pair<double, double>> bounds;
};

ModelSpec model_spec(DecayModel model) {
  switch (model) {
    case DecayModel::RB:
      return {2, {"A", "r"}, {{0.0, 2.0}, {0.0, 1.0}}};
    case DecayModel::Leakage:
      return {2, {"A", "r_L"}, {{0.0, 2.0}, {0.0, 1.0}}};
    case DecayModel::CrosstalkMeas:
      return {2, {"A_M", "r_M"}, {{0.0, 1.0}, {0.0, 1.0}}};
    case DecayModel::CrosstalkReset:
      return {2, {"A_R", "r_R"}, {{0.0, 1.0}, {0.0, 1.0}}};
    case DecayModel::TwoExp:
      return {4,
              {"A1", "A2", "r1", "r2"},
              {{-1.0, 2.0}, {-1.0, 2.0}, {0.0, 1.0}, {0.0, 1.0}}};
    case DecayModel::TwoExpTied:
      return {3, {"s", "r1", "r2"}, {{0.0, 1.5}, {0.0, 1.0}, {0.0, 1.0}}};
    case DecayModel::MirrorU:
      return {2, {"A", "u"}, {{0.0, 2.0}, {0.0, 1.0}}};
  }
  throw Error("unknown decay model");
}

}  // namespace

double eval_decay(DecayModel model, int n_qubits, const std::vector<double>& p,
                  double l) {
  switch (model) {
    case DecayModel::RB:
      return p[0] * std::pow(p[1], l) + 1.0 / std::pow(2.0, n_qubits);
    case DecayModel::Leakage:
      return p[0] * std::pow(1.0 - p[1], l);
    case DecayModel::CrosstalkMeas:
      return (2.0 - p[0] + (4.0 * p[0] - 2.0) * std::exp(-3.0 * p[1] * l)) / 3.0;
    case DecayModel::CrosstalkReset:
      return 1.0 - p[0] + (std::exp(-5.0 * p[1] * l) *
                           (2.0 + std::exp(3.0 * p[1] * l)) * (2.0 * p[0] - 1.0)) /
                              3.0;
    case DecayModel::TwoExp:
      return p[0] * std::pow(p[2], l) + p[1] * std::pow(p[3], l) + 0.25;
    case DecayModel::TwoExpTied:
      return p[0] * (std::pow(p[1], l) / 2.0 + std::pow(p[2], l) / 4.0) + 0.25;
    case DecayModel::MirrorU:
      return p[0] * std::pow(p[1], l - 1.0);
  }
  throw Error("unknown decay model");
}

std::vector<std::string> param_names(DecayModel model) {
  return model_spec(model).names;
}

namespace {

double chi2_of(const std::vector<DecayPoint>& pts, DecayModel model, int nq,
               const std::vector<double>& p, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r = pts[i].success - eval_decay(model, nq, p, pts[i].length);
    s += w[i] * r * r;
  }
  return s;
}

/// Damped Gauss-Newton with box projection.
bool gauss_newton(const std::vector<DecayPoint>& pts, DecayModel model, int nq,
                  const std::vector<std::pair<double, double>>& bounds,
                  const std::vector<double>& w, std::vector<double>& p,
                  double& chi2) {
  const int np = static_cast<int>(p.size());
  const int m = static_cast<int>(pts.size());
  double lambda = 1e-6;
  chi2 = chi2_of(pts, model, nq, p, w);
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::MatrixXd jac(m, np);
    Eigen::VectorXd res(m);
    for (int i = 0; i < m; ++i) {
      const double sw = std::sqrt(w[i]);
      res(i) = sw * (pts[i].success - eval_decay(model, nq, p, pts[i].length));
      for (int j = 0; j < np; ++j) {
        const double h = std::max(1e-8, 1e-7 * std::abs(p[j]));
        std::vector<double> pp = p, pm = p;
        pp[j] += h;
        pm[j] -= h;
        jac(i, j) = sw *
                    (eval_decay(model, nq, pp, pts[i].length) -
                     eval_decay(model, nq, pm, pts[i].length)) /
                    (2.0 * h);
      }
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * res;
    bool improved = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      for (int j = 0; j < np; ++j)
        damped(j, j) += lambda * std::max(jtj(j, j), 1e-12);
      const Eigen::VectorXd step = damped.ldlt().solve(jtr);
      std::vector<double> cand(p);
      for (int j = 0; j < np; ++j) {
        cand[j] = std::clamp(p[j] + step(j), bounds[j].first, bounds[j].second);
      }
      const double c2 = chi2_of(pts, model, nq, cand, w);
      if (c2 <= chi2 + 1e-15) {
        const double rel = (chi2 - c2) / std::max(chi2, 1e-30);
        p = cand;
        chi2 = c2;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        if (rel < 1e-12) return true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) return iter > 0;
  }
  return true;
}

std::vector<std::vector<double>> starting_points(
    const std::vector<DecayPoint>& pts, DecayModel model, int nq) {
  // Crude rate estimate from the first/last points above the asymptote.
  double asym = 0.0;
  if (model == DecayModel::RB) asym = 1.0 / std::pow(2.0, nq);
  if (model == DecayModel::TwoExp || model == DecayModel::TwoExpTied)
    asym = 0.25;
  const auto& first = pts.front();
  const auto& last = pts.back();
  const double y0 = std::max(first.success - asym, 1e-6);
  const double y1 = std::max(last.success - asym, 1e-6);
  double r_est = std::pow(y1 / y0, 1.0 / std::max(last.length - first.length, 1.0));
  r_est = std::clamp(r_est, 1e-6, 1.0);
  const double a_est = std::clamp(y0 / std::pow(r_est, first.length), 0.01, 1.999);

  switch (model) {
    case DecayModel::RB:
    case DecayModel::MirrorU:
      return {{a_est, r_est}, {a_est, std::min(1.0, 0.5 + r_est / 2.0)},
              {1.0 - asym, 1.0}};
    case DecayModel::Leakage:
      return {{a_est, std::clamp(1.0 - r_est, 0.0, 1.0)}, {1.0, 1e-4}, {1.0, 0.0}};
    case DecayModel::CrosstalkMeas:
    case DecayModel::CrosstalkReset: {
      // Map the exponential estimate onto the model's rate scale.
      const double k = model == DecayModel::CrosstalkMeas ? 3.0 : 2.0;
      const double r0 = std::clamp(-std::log(r_est) / k, 0.0, 1.0);
      return {{0.99, r0}, {0.9, 1e-5}, {1.0, 1e-6}};
    }
    case DecayModel::TwoExp:
      return {{a_est / 2.0, a_est / 2.0, r_est, r_est},
              {a_est / 2.0, a_est / 2.0, std::min(1.0, r_est * 1.02),
               r_est * 0.9},
              {0.375, 0.375, 1.0, 1.0}};
    case DecayModel::TwoExpTied:
      return {{std::clamp(a_est / 0.75, 0.0, 1.5), r_est, r_est},
              {1.0, std::min(1.0, r_est * 1.02), r_est * 0.9},
              {1.0, 1.0, 1.0}};
  }
  throw Error("unknown decay model");
}

}  // namespace

DecayFit fit_decay(const std::vector<DecayPoint>& points, DecayModel model,
                   int n_qubits) {
  const ModelSpec spec = model_spec(model);
  std::set<double> lengths;
  for (const auto& p : points) lengths.insert(p.length);
  std::size_t min_lengths = 3;
  if (model == DecayModel::TwoExp) min_lengths = 5;
  if (model == DecayModel::TwoExpTied) min_lengths = 4;
  QCCD_CHECK(lengths.size() >= min_lengths,
             "fit_decay: not enough distinct lengths for this model");

  // Binomial variance weights with clamped rates.
  std::vector<double> w(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int shots = std::max(points[i].shots, 1);
    const double p = std::clamp(points[i].success, 0.25 / shots, 1.0 - 0.25 / shots);
    w[i] = shots / (p * (1.0 - p));
  }

  std::vector<double> best;
  double best_chi2 = 0.0;
  bool best_ok = false;
  for (auto start : starting_points(points, model, n_qubits)) {
    std::vector<double> p = start;
    for (int j = 0; j < spec.n_params; ++j)
      p[j] = std::clamp(p[j], spec.bounds[j].first, spec.bounds[j].second);
    double chi2 = 0.0;
    const bool ok = gauss_newton(points, model, n_qubits, spec.bounds, w, p, chi2);
    if (!best_ok || (ok && chi2 < best_chi2)) {
      best = p;
      best_chi2 = chi2;
      best_ok = ok;
    }
  }
  QCCD_CHECK(best_ok, "fit_decay failed to converge (chi2 " +
                          std::to_string(best_chi2) + ")");

  // Label-exchange symmetry of the double exponential: keep r1 >= r2.
  if (model == DecayModel::TwoExp && best[2] < best[3]) {
    std::swap(best[2], best[3]);
    std::swap(best[0], best[1]);
  }

  // Parameter covariance from the weighted normal equations.
  Eigen::MatrixXd jtj = Eigen::MatrixXd::Zero(spec.n_params, spec.n_params);
  for (std::size_t i = 0; i < points.size(); ++i) {
    Eigen::VectorXd g(spec.n_params);
    for (int j = 0; j < spec.n_params; ++j) {
      const double h = std::max(1e-8, 1e-7 * std::abs(best[j]));
      std::vector<double> pp = best, pm = best;
      pp[j] += h;
      pm[j] -= h;
      g(j) = (eval_decay(model, n_qubits, pp, points[i].length) -
              eval_decay(model, n_qubits, pm, points[i].length)) /
             (2.0 * h);
    }
    jtj += w[i] * g * g.transpose();
  }
  Eigen::MatrixXd cov =
      (jtj + 1e-12 * Eigen::MatrixXd::Identity(spec.n_params, spec.n_params))
          .ldlt()
          .solve(Eigen::MatrixXd::Identity(spec.n_params, spec.n_params));

  DecayFit fit;
  fit.model = model;
  fit.n_qubits = n_qubits;
  fit.chi2 = best_chi2;
  fit.n_points = static_cast<int>(points.size());
  for (int j = 0; j < spec.n_params; ++j) {
    fit.params[spec.names[j]] = best[j];
    fit.stderrs[spec.names[j]] = std::sqrt(std::max(cov(j, j), 0.0));
  }
  return fit;
}

double rb_infidelity(const DecayFit& fit, int n_qubits, bool per_gate_2q) {
  QCCD_CHECK(fit.model == DecayModel::RB, "rb_infidelity needs an RB fit");
  const double d = std::pow(2.0, n_qubits);
  double eps = (d - 1.0) / d * (1.0 - fit.params.at("r"));
  if (per_gate_2q) eps /= 1.5;  // average UZZ(pi/2) count per 2Q Clifford
  return eps;
}

double crosstalk_infidelity(const DecayFit& fit) {
  if (fit.model == DecayModel::CrosstalkMeas)
    return 5.0 * fit.params.at("r_M") / 6.0;
  if (fit.model == DecayModel::CrosstalkReset)
    return 5.0 * fit.params.at("r_R") / 3.0;
  throw Error("crosstalk_infidelity needs a crosstalk fit");
}

IrrepFidelity irrep_fidelity(const DecayFit& fit) {
  QCCD_CHECK(fit.model == DecayModel::TwoExp ||
                 fit.model == DecayModel::TwoExpTied,
             "irrep_fidelity needs a two-exponential fit");
  const double f =
      (1.0 + 6.0 * fit.params.at("r1") + 9.0 * fit.params.at("r2")) / 16.0;
  return {f, 4.0 / 5.0 * (1.0 - f)};
}

BootstrapResult bootstrap(
    const std::vector<CircuitOutcome>& data,
    const std::function<double(const std::vector<CircuitOutcome>&)>& statistic,
    int resamples, std::uint64_t seed, BootstrapMethod method) {
  QCCD_CHECK(!data.empty(), "bootstrap: empty data");
  QCCD_CHECK(resamples >= 100, "bootstrap: need at least 100 resamples");

  // Strata of circuit indices sharing a covariate.
  std::map<double, std::vector<int>> strata;
  for (std::size_t i = 0; i < data.size(); ++i)
    strata[data[i].x].push_back(static_cast<int>(i));

  const double point = statistic(data);
  std::vector<double> stats(resamples);
  for (int b = 0; b < resamples; ++b) {
    Rng rng(derive_seed(seed, "bootstrap", static_cast<std::uint64_t>(b)));
    std::vector<CircuitOutcome> resampled;
    resampled.reserve(data.size());
    for (const auto& [x, idxs] : strata) {
      (void)x;
      for (std::size_t k = 0; k < idxs.size(); ++k) {
        const int pick = idxs[rng.uniform_int(idxs.size())];
        CircuitOutcome c = data[pick];
        // Parametric second level: re-draw the shots at the observed rate.
        if (c.shots > 0) {
          int successes = 0;
          for (int s = 0; s < c.shots; ++s)
            if (rng.bernoulli(c.rate)) ++successes;
          c.rate = static_cast<double>(successes) / c.shots;
        }
        resampled.push_back(c);
      }
    }
    stats[b] = statistic(resampled);
  }

  double mean = 0.0;
  for (double s : stats) mean += s;
  mean /= resamples;
  double var = 0.0;
  for (double s : stats) var += (s - mean) * (s - mean);
  var /= std::max(resamples - 1, 1);
  const double sd = std::sqrt(var);

  BootstrapResult out;
  out.mean = mean;
  out.stderr_est = sd;
  if (method == BootstrapMethod::NormalTwoSigma) {
    out.lo = point - 2.0 * sd;
    out.hi = point + 2.0 * sd;
  } else {
    // Reverse percentile: [2 t - q_hi, 2 t - q_lo] at the 2-sigma quantiles.
    std::vector<double> sorted = stats;
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double q) {
      const double pos = q * (sorted.size() - 1);
      const std::size_t lo = static_cast<std::size_t>(pos);
      const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
      const double frac = pos - lo;
      return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
    };
    const double alpha = 0.02275;  // one-sided two-sigma tail
    out.lo = 2.0 * point - quantile(1.0 - alpha);
    out.hi = 2.0 * point - quantile(alpha);
  }
  return out;
}

}  // namespace qccd::stats
