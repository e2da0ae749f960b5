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

#ifndef STOPT_ARM_HPP_
#define STOPT_ARM_HPP_

#include <vector>

#include "stopt/dynamics.hpp"

namespace stopt {

struct ArmParams {
  int n_joints = 6;
  std::vector<double> link_lengths;  // m; defaults to 0.3 per link
  double dt = 0.1;                   // s
  double accel_limit = 10.0;         // rad/s^2, bounds [-limit, limit]
};

/// Planar n-link arm with acceleration controls. Dynamics are exactly
/// linear (one double integrator per joint); the kinematic chain only
/// matters to task costs, which query forward_kinematics(). State is
/// (joint positions, joint velocities).
class ArmModel : public SystemModel {
 public:
  explicit ArmModel(const ArmParams& params = {});

  int nx() const override { return 2 * params_.n_joints; }
  int ndx() const override { return 2 * params_.n_joints; }
  int nu() const override { return params_.n_joints; }
  double dt() const override { return params_.dt; }

  const Eigen::VectorXd& control_lower() const override { return lower_; }
  const Eigen::VectorXd& control_upper() const override { return upper_; }

  Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;
  StepJacobians jacobians(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;

  /// End-effector position for joint angles q (size n_joints).
  Eigen::Vector2d forward_kinematics(const Eigen::VectorXd& q) const;
  /// 2 x n Jacobian of forward_kinematics.
  Eigen::MatrixXd fk_jacobian(const Eigen::VectorXd& q) const;

  // The dynamics are linear, so all second-order terms vanish exactly.
  bool has_dynamics_hessians() const override { return true; }
  void add_dynamics_hessian_terms(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& vx, Eigen::MatrixXd& qxx,
                                  Eigen::MatrixXd& qux, Eigen::MatrixXd& quu) const override;

  const ArmParams& params() const { return params_; }

 private:
  ArmParams params_;
  Eigen::VectorXd lower_, upper_;
};

}  // namespace stopt

#endif  // STOPT_ARM_HPP_
