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

#ifndef STOPT_CARTPOLE_HPP_
#define STOPT_CARTPOLE_HPP_

#include "stopt/dynamics.hpp"

namespace stopt {

struct CartpoleParams {
  double cart_mass = 1.0;    // kg
  double pole_mass = 0.5;    // kg
  double pole_length = 0.5;  // m, pivot to point mass
  double gravity = 9.81;     // m/s^2
  double dt = 0.01;          // s
  double force_limit = 30.0; // N, bounds are [-limit, limit]
};

/// Cart on a frictionless track with a point-mass pendulum. State is
/// (cart position, pole angle, cart velocity, pole rate); angle 0 is pole
/// down, pi is upright. The single control is a horizontal force on the
/// cart.
class CartpoleModel : public SystemModel {
 public:
  explicit CartpoleModel(const CartpoleParams& params = {});

  int nx() const override { return 4; }
  int ndx() const override { return 4; }
  int nu() const override { return 1; }
  double dt() const override { return params_.dt; }

  const Eigen::VectorXd& control_lower() const override { return lower_; }
  const Eigen::VectorXd& control_upper() const override { return upper_; }

  Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;
  StepJacobians jacobians(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;

  /// Accelerations (xdd, thetadd) from the equations of motion.
  Eigen::Vector2d accelerations(const Eigen::VectorXd& x, double force) const;

  /// Kinetic + potential energy, zero level at the pole-down rest pose.
  double total_energy(const Eigen::VectorXd& x) const;

  const CartpoleParams& params() const { return params_; }

 private:
  CartpoleParams params_;
  Eigen::VectorXd lower_, upper_;
};

}  // namespace stopt

#endif  // STOPT_CARTPOLE_HPP_
