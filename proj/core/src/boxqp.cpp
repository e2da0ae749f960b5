/*
 * Copyright 2026 The stopt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "stopt/boxqp.hpp"

#include <cmath>
#include <stdexcept>

namespace stopt {

namespace {
constexpr int kMaxIterations = 100;
constexpr double kGradTol = 1e-9;
constexpr double kArmijo = 0.1;
constexpr double kStepDecrease = 0.6;
constexpr double kMinStep = 1e-20;
}  // namespace

BoxQpResult box_qp(const Eigen::MatrixXd& Quu, const Eigen::VectorXd& Qu,
                   const Eigen::VectorXd& u_ref, const Eigen::VectorXd& lower,
                   const Eigen::VectorXd& upper) {
  const Eigen::Index n = Qu.size();
  if (Quu.rows() != n || Quu.cols() != n || u_ref.size() != n || lower.size() != n ||
      upper.size() != n) {
    throw std::invalid_argument("box_qp: dimension mismatch");
  }
  if (((u_ref - lower).array() < -1e-12).any() || ((upper - u_ref).array() < -1e-12).any()) {
    throw std::invalid_argument("box_qp: u_ref must lie within the bounds");
  }

  // Work in the shifted variable du with bounds [lower - u_ref, upper - u_ref].
  const Eigen::VectorXd lo = lower - u_ref;
  const Eigen::VectorXd hi = upper - u_ref;

  BoxQpResult res;
  res.clamped.assign(n, false);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n).cwiseMax(lo).cwiseMin(hi);
  double value = x.dot(0.5 * (Quu * x) + Qu);

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    res.iterations = iter + 1;
    const Eigen::VectorXd grad = Qu + Quu * x;

    res.free_indices.clear();
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool at_lower = x[i] <= lo[i];
      const bool at_upper = x[i] >= hi[i];
      res.clamped[i] = (at_lower && grad[i] > 0.0) || (at_upper && grad[i] < 0.0);
      if (!res.clamped[i]) {
        res.free_indices.push_back(static_cast<int>(i));
      }
    }

    if (res.free_indices.empty()) {
      res.converged = true;
      break;
    }

    // Factor the free block first so the returned factorization always
    // matches the final free set.
    const int nf = static_cast<int>(res.free_indices.size());
    Eigen::MatrixXd h_ff(nf, nf);
    Eigen::VectorXd g_f(nf);
    for (int a = 0; a < nf; ++a) {
      const int ia = res.free_indices[a];
      // gradient on the free set with clamped coordinates held fixed
      g_f[a] = Qu[ia];
      for (Eigen::Index j = 0; j < n; ++j) {
        if (res.clamped[j]) {
          g_f[a] += Quu(ia, j) * x[j];
        }
      }
      for (int b = 0; b < nf; ++b) {
        h_ff(a, b) = Quu(ia, res.free_indices[b]);
      }
    }
    res.llt_free.compute(h_ff);
    if (res.llt_free.info() != Eigen::Success) {
      res.converged = false;
      return res;
    }

    double gnorm = 0.0;
    for (const int i : res.free_indices) {
      gnorm = std::max(gnorm, std::abs(grad[i]));
    }
    if (gnorm < kGradTol) {
      res.converged = true;
      break;
    }
    const Eigen::VectorXd newton_f = -res.llt_free.solve(g_f);

    Eigen::VectorXd search = Eigen::VectorXd::Zero(n);
    double sdotg = 0.0;
    for (int a = 0; a < nf; ++a) {
      const int ia = res.free_indices[a];
      search[ia] = newton_f[a] - x[ia];
      sdotg += search[ia] * grad[ia];
    }
    if (sdotg >= 0.0) {
      // No descent along the Newton direction; the projected gradient test
      // above will terminate on the next pass once clamping settles.
      res.converged = true;
      break;
    }

    double step = 1.0;
    bool accepted = false;
    while (step > kMinStep) {
      const Eigen::VectorXd xc = (x + step * search).cwiseMax(lo).cwiseMin(hi);
      const double vc = xc.dot(0.5 * (Quu * xc) + Qu);
      if (vc - value <= kArmijo * step * sdotg) {
        x = xc;
        value = vc;
        accepted = true;
        break;
      }
      step *= kStepDecrease;
    }
    if (!accepted) {
      res.converged = false;
      break;
    }
  }

  res.delta_u = x;
  return res;
}

}  // namespace stopt
