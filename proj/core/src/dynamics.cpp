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

#include "stopt/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace stopt {

namespace {

// Scale-aware central-difference step.
double fd_step(double value) { return 1e-6 * std::max(1.0, std::abs(value)); }

}  // namespace

StepJacobians SystemModel::finite_diff_jacobians(const Eigen::VectorXd& x,
                                                 const Eigen::VectorXd& u) const {
  check_dimensions(x, u);
  StepJacobians jac;
  jac.fx.resize(ndx(), ndx());
  jac.fu.resize(ndx(), nu());

  Eigen::VectorXd dx = Eigen::VectorXd::Zero(ndx());
  for (int i = 0; i < ndx(); ++i) {
    // Tangent coordinates have no absolute value of their own; when the
    // state is Euclidean the matching state entry sets the scale.
    const double h = ndx() == nx() ? fd_step(x[i]) : 1e-6;
    dx[i] = h;
    const Eigen::VectorXd xp = step(integrate(x, dx), u);
    dx[i] = -h;
    const Eigen::VectorXd xm = step(integrate(x, dx), u);
    dx[i] = 0.0;
    jac.fx.col(i) = state_diff(xp, xm) / (2.0 * h);
  }

  Eigen::VectorXd du = u;
  for (int i = 0; i < nu(); ++i) {
    const double h = fd_step(u[i]);
    du[i] = u[i] + h;
    const Eigen::VectorXd xp = step(x, du);
    du[i] = u[i] - h;
    const Eigen::VectorXd xm = step(x, du);
    du[i] = u[i];
    jac.fu.col(i) = state_diff(xp, xm) / (2.0 * h);
  }
  return jac;
}

Eigen::VectorXd SystemModel::random_state(std::mt19937& rng) const {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXd x(nx());
  for (int i = 0; i < nx(); ++i) {
    x[i] = dist(rng);
  }
  return x;
}

void SystemModel::add_dynamics_hessian_terms(const Eigen::VectorXd&, const Eigen::VectorXd&,
                                             const Eigen::VectorXd&, Eigen::MatrixXd&,
                                             Eigen::MatrixXd&, Eigen::MatrixXd&) const {
  throw std::logic_error("model does not provide second-order dynamics terms");
}

void SystemModel::check_dimensions(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  if (x.size() != nx()) {
    throw std::invalid_argument("state dimension mismatch: expected " + std::to_string(nx()) +
                                ", got " + std::to_string(x.size()));
  }
  if (u.size() != nu()) {
    throw std::invalid_argument("control dimension mismatch: expected " + std::to_string(nu()) +
                                ", got " + std::to_string(u.size()));
  }
}

Eigen::VectorXd clamp_control(const SystemModel& model, const Eigen::VectorXd& u) {
  return u.cwiseMax(model.control_lower()).cwiseMin(model.control_upper());
}

}  // namespace stopt
