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

#include "stopt/arm.hpp"

#include <cmath>
#include <stdexcept>

namespace stopt {

ArmModel::ArmModel(const ArmParams& params) : params_(params) {
  if (params_.n_joints <= 0) {
    throw std::invalid_argument("arm: n_joints must be > 0");
  }
  if (params_.link_lengths.empty()) {
    params_.link_lengths.assign(params_.n_joints, 0.3);
  }
  if (static_cast<int>(params_.link_lengths.size()) != params_.n_joints) {
    throw std::invalid_argument("arm: link_lengths size must equal n_joints");
  }
  lower_ = Eigen::VectorXd::Constant(params_.n_joints, -params_.accel_limit);
  upper_ = Eigen::VectorXd::Constant(params_.n_joints, params_.accel_limit);
}

Eigen::VectorXd ArmModel::step(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  check_dimensions(x, u);
  const int n = params_.n_joints;
  const double h = params_.dt;
  Eigen::VectorXd out(2 * n);
  out.tail(n) = x.tail(n) + h * u;
  out.head(n) = x.head(n) + h * out.tail(n);
  return out;
}

StepJacobians ArmModel::jacobians(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  check_dimensions(x, u);
  const int n = params_.n_joints;
  const double h = params_.dt;
  StepJacobians jac;
  jac.fx = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  jac.fx.topRightCorner(n, n) = h * Eigen::MatrixXd::Identity(n, n);
  jac.fu = Eigen::MatrixXd::Zero(2 * n, n);
  jac.fu.topRows(n) = h * h * Eigen::MatrixXd::Identity(n, n);
  jac.fu.bottomRows(n) = h * Eigen::MatrixXd::Identity(n, n);
  return jac;
}

Eigen::Vector2d ArmModel::forward_kinematics(const Eigen::VectorXd& q) const {
  if (q.size() != params_.n_joints) {
    throw std::invalid_argument("arm: joint vector dimension mismatch");
  }
  Eigen::Vector2d p = Eigen::Vector2d::Zero();
  double angle = 0.0;
  for (int i = 0; i < params_.n_joints; ++i) {
    angle += q[i];
    p.x() += params_.link_lengths[i] * std::cos(angle);
    p.y() += params_.link_lengths[i] * std::sin(angle);
  }
  return p;
}

Eigen::MatrixXd ArmModel::fk_jacobian(const Eigen::VectorXd& q) const {
  if (q.size() != params_.n_joints) {
    throw std::invalid_argument("arm: joint vector dimension mismatch");
  }
  const int n = params_.n_joints;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2, n);
  double angle = 0.0;
  // Column k accumulates the contributions of every link at or past k.
  std::vector<double> sx(n), sy(n);
  for (int i = 0; i < n; ++i) {
    angle += q[i];
    sx[i] = -params_.link_lengths[i] * std::sin(angle);
    sy[i] = params_.link_lengths[i] * std::cos(angle);
  }
  double accx = 0.0, accy = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    accx += sx[k];
    accy += sy[k];
    jac(0, k) = accx;
    jac(1, k) = accy;
  }
  return jac;
}

void ArmModel::add_dynamics_hessian_terms(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                          const Eigen::VectorXd& vx, Eigen::MatrixXd& qxx,
                                          Eigen::MatrixXd& qux, Eigen::MatrixXd& quu) const {
  check_dimensions(x, u);
  (void)vx;
  (void)qxx;
  (void)qux;
  (void)quu;
  // f_xx, f_uu and f_ux are identically zero for a linear system.
}

}  // namespace stopt
