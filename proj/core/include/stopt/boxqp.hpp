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

#ifndef STOPT_BOXQP_HPP_
#define STOPT_BOXQP_HPP_

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <vector>

namespace stopt {

struct BoxQpResult {
  bool converged = false;
  int iterations = 0;
  Eigen::VectorXd delta_u;          // argmin of the shifted QP
  std::vector<bool> clamped;        // per coordinate
  std::vector<int> free_indices;
  Eigen::LLT<Eigen::MatrixXd> llt_free;  // factorization of H on the free set

  int free_count() const { return static_cast<int>(free_indices.size()); }
};

/// Minimize 0.5 du^T Quu du + Qu^T du subject to
/// lower <= u_ref + du <= upper, via projected Newton with free-set
/// refactorization. Quu must be positive definite and u_ref feasible.
/// Stops when the projected gradient infinity-norm falls below 1e-9;
/// returns converged = false if 100 iterations pass first. A coordinate
/// sitting exactly on a bound with an inward-pointing descent direction is
/// classified free.
BoxQpResult box_qp(const Eigen::MatrixXd& Quu, const Eigen::VectorXd& Qu,
                   const Eigen::VectorXd& u_ref, const Eigen::VectorXd& lower,
                   const Eigen::VectorXd& upper);

}  // namespace stopt

#endif  // STOPT_BOXQP_HPP_
