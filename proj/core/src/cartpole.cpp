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

#include "stopt/cartpole.hpp"

#include <cmath>
#include <stdexcept>

namespace stopt {

CartpoleModel::CartpoleModel(const CartpoleParams& params) : params_(params) {
  if (params_.cart_mass <= 0.0 || params_.pole_mass <= 0.0 || params_.pole_length <= 0.0) {
    throw std::invalid_argument("cartpole: masses and length must be > 0");
  }
  lower_ = Eigen::VectorXd::Constant(1, -params_.force_limit);
  upper_ = Eigen::VectorXd::Constant(1, params_.force_limit);
}

Eigen::Vector2d CartpoleModel::accelerations(const Eigen::VectorXd& x, double force) const {
  const double mc = params_.cart_mass;
  const double mp = params_.pole_mass;
  const double l = params_.pole_length;
  const double g = params_.gravity;
  const double s = std::sin(x[1]);
  const double c = std::cos(x[1]);
  const double td = x[3];

  const double denom = mc + mp * s * s;
  const double xdd = (force + mp * s * (l * td * td + g * c)) / denom;
  const double tdd = -(xdd * c + g * s) / l;
  return {xdd, tdd};
}

Eigen::VectorXd CartpoleModel::step(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  check_dimensions(x, u);
  const Eigen::Vector2d acc = accelerations(x, u[0]);
  const double h = params_.dt;
  Eigen::VectorXd out(4);
  out[2] = x[2] + h * acc[0];
  out[3] = x[3] + h * acc[1];
  out[0] = x[0] + h * out[2];
  out[1] = x[1] + h * out[3];
  return out;
}

StepJacobians CartpoleModel::jacobians(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
  check_dimensions(x, u);
  const double mc = params_.cart_mass;
  const double mp = params_.pole_mass;
  const double l = params_.pole_length;
  const double g = params_.gravity;
  const double s = std::sin(x[1]);
  const double c = std::cos(x[1]);
  const double td = x[3];
  const double force = u[0];

  const double denom = mc + mp * s * s;
  const double xdd = (force + mp * s * (l * td * td + g * c)) / denom;

  // Partials of the accelerations; neither depends on cart position or
  // cart velocity (no friction).
  const double dxdd_dth =
      (mp * c * (l * td * td + g * c) - mp * g * s * s - xdd * 2.0 * mp * s * c) / denom;
  const double dxdd_dtd = 2.0 * mp * s * l * td / denom;
  const double dxdd_du = 1.0 / denom;
  const double dtdd_dth = -(dxdd_dth * c - xdd * s + g * c) / l;
  const double dtdd_dtd = -c * dxdd_dtd / l;
  const double dtdd_du = -c * dxdd_du / l;

  Eigen::Matrix2d aq, av;
  aq << 0.0, dxdd_dth, 0.0, dtdd_dth;
  av << 0.0, dxdd_dtd, 0.0, dtdd_dtd;
  Eigen::Vector2d au(dxdd_du, dtdd_du);

  const double h = params_.dt;
  const Eigen::Matrix2d eye = Eigen::Matrix2d::Identity();

  StepJacobians jac;
  jac.fx.setZero(4, 4);
  jac.fx.topLeftCorner<2, 2>() = eye + h * h * aq;
  jac.fx.topRightCorner<2, 2>() = h * (eye + h * av);
  jac.fx.bottomLeftCorner<2, 2>() = h * aq;
  jac.fx.bottomRightCorner<2, 2>() = eye + h * av;

  jac.fu.resize(4, 1);
  jac.fu.topRows<2>() = h * h * au;
  jac.fu.bottomRows<2>() = h * au;
  return jac;
}

double CartpoleModel::total_energy(const Eigen::VectorXd& x) const {
  const double mc = params_.cart_mass;
  const double mp = params_.pole_mass;
  const double l = params_.pole_length;
  const double g = params_.gravity;
  const double pd = x[2];
  const double td = x[3];

  const double vpx = pd + l * td * std::cos(x[1]);
  const double vpy = l * td * std::sin(x[1]);
  const double kinetic = 0.5 * mc * pd * pd + 0.5 * mp * (vpx * vpx + vpy * vpy);
  const double potential = mp * g * l * (1.0 - std::cos(x[1]));
  return kinetic + potential;
}

}  // namespace stopt
