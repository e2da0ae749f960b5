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

#include "stopt/so3.hpp"

#include <cmath>

namespace stopt::so3 {

namespace {
constexpr double kSmallAngle = 1e-8;
}

Eigen::Matrix3d skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0.0, -v.z(), v.y(),  //
      v.z(), 0.0, -v.x(),   //
      -v.y(), v.x(), 0.0;
  return m;
}

Eigen::Quaterniond exp_quat(const Eigen::Vector3d& phi) {
  const double theta = phi.norm();
  double w, s;
  if (theta < kSmallAngle) {
    // sin(t/2)/t and cos(t/2) to second order
    w = 1.0 - theta * theta / 8.0;
    s = 0.5 - theta * theta / 48.0;
  } else {
    w = std::cos(0.5 * theta);
    s = std::sin(0.5 * theta) / theta;
  }
  return Eigen::Quaterniond(w, s * phi.x(), s * phi.y(), s * phi.z());
}

Eigen::Vector3d log_quat(const Eigen::Quaterniond& q_in) {
  Eigen::Quaterniond q = q_in;
  if (q.w() < 0.0) {
    q.coeffs() = -q.coeffs();  // same rotation, shortest arc
  }
  const Eigen::Vector3d v = q.vec();
  const double vnorm = v.norm();
  if (vnorm < kSmallAngle) {
    return 2.0 / q.w() * v;
  }
  const double theta = 2.0 * std::atan2(vnorm, q.w());
  return theta / vnorm * v;
}

Eigen::Matrix3d right_jacobian(const Eigen::Vector3d& phi) {
  const double theta = phi.norm();
  const Eigen::Matrix3d s = skew(phi);
  if (theta < kSmallAngle) {
    return Eigen::Matrix3d::Identity() - 0.5 * s + (1.0 / 6.0) * s * s;
  }
  const double t2 = theta * theta;
  const double a = (1.0 - std::cos(theta)) / t2;
  const double b = (theta - std::sin(theta)) / (t2 * theta);
  return Eigen::Matrix3d::Identity() - a * s + b * s * s;
}

Eigen::Matrix3d right_jacobian_inverse(const Eigen::Vector3d& phi) {
  const double theta = phi.norm();
  const Eigen::Matrix3d s = skew(phi);
  if (theta < kSmallAngle) {
    return Eigen::Matrix3d::Identity() + 0.5 * s + (1.0 / 12.0) * s * s;
  }
  const double t2 = theta * theta;
  const double c = 1.0 / t2 - (1.0 + std::cos(theta)) / (2.0 * theta * std::sin(theta));
  return Eigen::Matrix3d::Identity() + 0.5 * s + c * s * s;
}

}  // namespace stopt::so3
