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

#include "stopt/satellite.hpp"

#include <cmath>
#include <stdexcept>

#include "stopt/so3.hpp"

namespace stopt {

namespace {

Eigen::Quaterniond quat_of(const Eigen::VectorXd& x) {
  // scalar-first storage in the state vector
  return Eigen::Quaterniond(x[3], x[4], x[5], x[6]);
}

void set_quat(Eigen::VectorXd& x, const Eigen::Quaterniond& q) {
  x[3] = q.w();
  x[4] = q.x();
  x[5] = q.y();
  x[6] = q.z();
}

}  // namespace

ThrusterTable build_thruster_table(const Eigen::Vector3d& he, double primary_limit,
                                   double side_limit) {
  ThrusterTable table;
  table.thrusters.reserve(18);

  // Primary pair through the CoM on the +-X faces.
  table.thrusters.push_back({{he.x(), 0.0, 0.0}, {-1.0, 0.0, 0.0}, primary_limit});
  table.thrusters.push_back({{-he.x(), 0.0, 0.0}, {1.0, 0.0, 0.0}, primary_limit});

  // Four corner thrusters per +-Y / +-Z face, all pointing inward along
  // the face normal so that equal firing yields a pure force.
  for (const int axis : {1, 2}) {
    for (const double face : {1.0, -1.0}) {
      const int a = 0;                  // X is in-plane for both Y and Z faces
      const int b = axis == 1 ? 2 : 1;  // the other in-plane axis
      for (const double ca : {1.0, -1.0}) {
        for (const double cb : {1.0, -1.0}) {
          Eigen::Vector3d point = Eigen::Vector3d::Zero();
          point[axis] = face * he[axis];
          point[a] = ca * he[a];
          point[b] = cb * he[b];
          Eigen::Vector3d dir = Eigen::Vector3d::Zero();
          dir[axis] = -face;
          table.thrusters.push_back({point, dir, side_limit});
        }
      }
    }
  }

  const int n = static_cast<int>(table.thrusters.size());
  table.force_map.resize(3, n);
  table.torque_map.resize(3, n);
  for (int i = 0; i < n; ++i) {
    table.force_map.col(i) = table.thrusters[i].direction;
    table.torque_map.col(i) = table.thrusters[i].point.cross(table.thrusters[i].direction);
  }
  return table;
}

SatelliteModel::SatelliteModel(const SatelliteParams& params) : params_(params) {
  if (params_.mass <= 0.0) {
    throw std::invalid_argument("satellite: mass must be > 0");
  }
  if ((params_.half_extents.array() <= 0.0).any()) {
    throw std::invalid_argument("satellite: half extents must be > 0");
  }
  table_ = build_thruster_table(params_.half_extents, params_.primary_thrust_limit,
                                params_.side_thrust_limit);
  if (params_.inertia_diag.isZero()) {
    // solid box: I_x = m/3 (hy^2 + hz^2) etc. (half extents)
    const Eigen::Vector3d h2 = params_.half_extents.array().square();
    inertia_ = params_.mass / 3.0 *
               Eigen::Vector3d(h2.y() + h2.z(), h2.x() + h2.z(), h2.x() + h2.y());
  } else {
    if ((params_.inertia_diag.array() <= 0.0).any()) {
      throw std::invalid_argument("satellite: inertia must be positive definite");
    }
    inertia_ = params_.inertia_diag;
  }

  const int n = nu();
  lower_ = Eigen::VectorXd::Zero(n);
  upper_.resize(n);
  for (int i = 0; i < n; ++i) {
    upper_[i] = table_.thrusters[i].max_force;
  }
}

void SatelliteModel::check_state(const Eigen::VectorXd& x) const {
  if (x.size() != nx()) {
    throw std::invalid_argument("satellite: state dimension mismatch");
  }
  const double norm = x.segment<4>(3).norm();
  if (std::abs(norm - 1.0) > 1e-6) {
    throw std::invalid_argument("satellite: quaternion is not unit norm");
  }
}

Eigen::VectorXd SatelliteModel::step(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  check_dimensions(x, u);
  check_state(x);

  const Eigen::Quaterniond q = quat_of(x);
  const Eigen::Vector3d v = x.segment<3>(7);
  const Eigen::Vector3d w = x.segment<3>(10);

  const Eigen::Vector3d force_b = table_.force_map * u;
  const Eigen::Vector3d torque_b = table_.torque_map * u;

  const Eigen::Matrix3d rot = q.toRotationMatrix();
  const Eigen::Vector3d vdot = rot * force_b / params_.mass;
  const Eigen::Vector3d wdot =
      (torque_b - w.cross(inertia_.asDiagonal() * w)).array() / inertia_.array();

  const double h = params_.dt;
  const Eigen::Vector3d v_new = v + h * vdot;
  const Eigen::Vector3d w_new = w + h * wdot;

  Eigen::VectorXd out(13);
  out.segment<3>(0) = x.segment<3>(0) + h * v_new;
  Eigen::Quaterniond q_new = q * so3::exp_quat(h * w_new);
  q_new.normalize();
  set_quat(out, q_new);
  out.segment<3>(7) = v_new;
  out.segment<3>(10) = w_new;
  return out;
}

StepJacobians SatelliteModel::jacobians(const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& u) const {
  check_dimensions(x, u);
  check_state(x);

  const Eigen::Quaterniond q = quat_of(x);
  const Eigen::Vector3d w = x.segment<3>(10);
  const Eigen::Vector3d force_b = table_.force_map * u;
  const Eigen::Vector3d torque_b = table_.torque_map * u;
  const Eigen::Matrix3d rot = q.toRotationMatrix();
  const Eigen::Matrix3d I = inertia_.asDiagonal();
  const Eigen::Matrix3d I_inv = inertia_.cwiseInverse().asDiagonal();

  const double h = params_.dt;
  const Eigen::Vector3d wdot = I_inv * (torque_b - w.cross(I * w));
  const Eigen::Vector3d w_new = w + h * wdot;

  // d(w x Iw)/dw = skew(w) I - skew(Iw)
  const Eigen::Matrix3d gyro = so3::skew(w) * I - so3::skew(I * w);
  const Eigen::Matrix3d dwnew_dw = Eigen::Matrix3d::Identity() - h * I_inv * gyro;
  const Eigen::Matrix<double, 3, Eigen::Dynamic> dwnew_du = h * I_inv * table_.torque_map;

  // Right perturbation q exp(dphi): rotating the body rotates the applied
  // force, d(R f)/dphi = -R skew(f).
  const Eigen::Matrix3d dvnew_dphi = -(h / params_.mass) * rot * so3::skew(force_b);
  const Eigen::Matrix<double, 3, Eigen::Dynamic> dvnew_du =
      (h / params_.mass) * rot * table_.force_map;

  // New-orientation tangent: dphi' = R_step^T dphi + h Jr(h w') dw'.
  const Eigen::Matrix3d rot_step_t = so3::exp_quat(h * w_new).toRotationMatrix().transpose();
  const Eigen::Matrix3d jr = so3::right_jacobian(h * w_new);

  StepJacobians jac;
  jac.fx = Eigen::MatrixXd::Zero(12, 12);
  jac.fu = Eigen::MatrixXd::Zero(12, 18);

  const Eigen::Matrix3d eye = Eigen::Matrix3d::Identity();
  // position row
  jac.fx.block<3, 3>(0, 0) = eye;
  jac.fx.block<3, 3>(0, 3) = h * dvnew_dphi;
  jac.fx.block<3, 3>(0, 6) = h * eye;
  jac.fu.block(0, 0, 3, 18) = h * dvnew_du;
  // orientation row
  jac.fx.block<3, 3>(3, 3) = rot_step_t;
  jac.fx.block<3, 3>(3, 9) = h * jr * dwnew_dw;
  jac.fu.block(3, 0, 3, 18) = h * jr * dwnew_du;
  // linear velocity row
  jac.fx.block<3, 3>(6, 3) = dvnew_dphi;
  jac.fx.block<3, 3>(6, 6) = eye;
  jac.fu.block(6, 0, 3, 18) = dvnew_du;
  // angular velocity row
  jac.fx.block<3, 3>(9, 9) = dwnew_dw;
  jac.fu.block(9, 0, 3, 18) = dwnew_du;
  return jac;
}

Eigen::VectorXd SatelliteModel::state_diff(const Eigen::VectorXd& x1,
                                           const Eigen::VectorXd& x0) const {
  check_state(x1);
  check_state(x0);
  Eigen::VectorXd dx(12);
  dx.segment<3>(0) = x1.segment<3>(0) - x0.segment<3>(0);
  dx.segment<3>(3) = so3::log_quat(quat_of(x0).conjugate() * quat_of(x1));
  dx.segment<3>(6) = x1.segment<3>(7) - x0.segment<3>(7);
  dx.segment<3>(9) = x1.segment<3>(10) - x0.segment<3>(10);
  return dx;
}

Eigen::VectorXd SatelliteModel::integrate(const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& dx) const {
  check_state(x);
  if (dx.size() != ndx()) {
    throw std::invalid_argument("satellite: tangent dimension mismatch");
  }
  Eigen::VectorXd out(13);
  out.segment<3>(0) = x.segment<3>(0) + dx.segment<3>(0);
  Eigen::Quaterniond q = quat_of(x) * so3::exp_quat(dx.segment<3>(3));
  q.normalize();
  set_quat(out, q);
  out.segment<3>(7) = x.segment<3>(7) + dx.segment<3>(6);
  out.segment<3>(10) = x.segment<3>(10) + dx.segment<3>(9);
  return out;
}

Eigen::MatrixXd SatelliteModel::state_diff_jacobian(const Eigen::VectorXd& x,
                                                    const Eigen::VectorXd& ref) const {
  const Eigen::Vector3d phi = so3::log_quat(quat_of(ref).conjugate() * quat_of(x));
  Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(12, 12);
  jac.block<3, 3>(3, 3) = so3::right_jacobian_inverse(phi);
  return jac;
}

Eigen::VectorXd SatelliteModel::neutral_state() const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(13);
  x[3] = 1.0;
  return x;
}

Eigen::VectorXd SatelliteModel::random_state(std::mt19937& rng) const {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXd x(13);
  for (int i = 0; i < 13; ++i) {
    x[i] = dist(rng);
  }
  x.segment<4>(3).normalize();
  x.segment<3>(10) *= 0.3;  // keep rotation rates moderate
  return x;
}

Eigen::Vector3d SatelliteModel::angular_momentum_world(const Eigen::VectorXd& x) const {
  check_state(x);
  return quat_of(x).toRotationMatrix() * (inertia_.asDiagonal() * x.segment<3>(10));
}

}  // namespace stopt
