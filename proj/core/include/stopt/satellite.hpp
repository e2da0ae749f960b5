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

#ifndef STOPT_SATELLITE_HPP_
#define STOPT_SATELLITE_HPP_

#include <vector>

#include "stopt/dynamics.hpp"

namespace stopt {

/// One unilateral thruster: body-frame application point, unit force
/// direction (force applied to the body) and force limit in newtons.
struct Thruster {
  Eigen::Vector3d point;
  Eigen::Vector3d direction;
  double max_force = 0.0;
};

/// Fixed thruster layout plus its wrench map: force_map * u is the total
/// body-frame force, torque_map * u the total body-frame torque about the
/// center of mass.
struct ThrusterTable {
  std::vector<Thruster> thrusters;
  Eigen::Matrix<double, 3, Eigen::Dynamic> force_map;
  Eigen::Matrix<double, 3, Eigen::Dynamic> torque_map;
};

/// Standard 18-thruster layout for a box-shaped body: one inward primary
/// on each of the +-X faces and four inward thrusters at the corners of
/// each of the +-Y and +-Z faces.
ThrusterTable build_thruster_table(const Eigen::Vector3d& half_extents = {1.0, 1.0, 1.0},
                                   double primary_limit = 200.0, double side_limit = 50.0);

struct SatelliteParams {
  double mass = 1000.0;                        // kg
  Eigen::Vector3d half_extents = {1.0, 1.0, 1.0};  // m
  Eigen::Vector3d inertia_diag = Eigen::Vector3d::Zero();  // kg m^2; zero => box inertia
  double dt = 0.1;                             // s
  double primary_thrust_limit = 200.0;         // N
  double side_thrust_limit = 50.0;             // N
};

/// Free rigid body in SE(3) actuated by the 18-thruster table. State is
/// [position (world), unit quaternion (scalar first), linear velocity
/// (world), angular velocity (body)], nx = 13; tangent vectors are
/// [dp, dphi, dv, domega], ndx = 12, with the rotation block a body-frame
/// rotation vector (right perturbation q * exp(dphi)).
class SatelliteModel : public SystemModel {
 public:
  explicit SatelliteModel(const SatelliteParams& params = {});

  int nx() const override { return 13; }
  int ndx() const override { return 12; }
  int nu() const override { return 18; }
  double dt() const override { return params_.dt; }

  const Eigen::VectorXd& control_lower() const override { return lower_; }
  const Eigen::VectorXd& control_upper() const override { return upper_; }

  Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;
  StepJacobians jacobians(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;

  Eigen::VectorXd state_diff(const Eigen::VectorXd& x1, const Eigen::VectorXd& x0) const override;
  Eigen::VectorXd integrate(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) const override;
  Eigen::MatrixXd state_diff_jacobian(const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& ref) const override;

  Eigen::VectorXd neutral_state() const override;
  Eigen::VectorXd random_state(std::mt19937& rng) const override;

  /// World-frame angular momentum R I omega; conserved in free drift.
  Eigen::Vector3d angular_momentum_world(const Eigen::VectorXd& x) const;

  const ThrusterTable& thruster_table() const { return table_; }
  const SatelliteParams& params() const { return params_; }
  const Eigen::Vector3d& inertia_diag() const { return inertia_; }

 private:
  void check_state(const Eigen::VectorXd& x) const;

  SatelliteParams params_;
  ThrusterTable table_;
  Eigen::Vector3d inertia_;  // principal moments
  Eigen::VectorXd lower_, upper_;
};

}  // namespace stopt

#endif  // STOPT_SATELLITE_HPP_
