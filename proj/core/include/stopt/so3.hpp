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

#ifndef STOPT_SO3_HPP_
#define STOPT_SO3_HPP_

#include <Eigen/Core>
#include <Eigen/Geometry>

// Rotation helpers for body-frame tangent parameterizations. Rotation
// vectors carry the full rotation angle (phi = theta * axis); quaternion
// half-angles stay inside these functions.
namespace stopt::so3 {

Eigen::Matrix3d skew(const Eigen::Vector3d& v);

/// exp: rotation vector -> unit quaternion.
Eigen::Quaterniond exp_quat(const Eigen::Vector3d& phi);

/// log: unit quaternion -> rotation vector with angle in [0, pi].
Eigen::Vector3d log_quat(const Eigen::Quaterniond& q);

/// Right Jacobian of SO(3): d/d(dphi) exp(phi + dphi) = exp(phi) Jr(phi) dphi.
Eigen::Matrix3d right_jacobian(const Eigen::Vector3d& phi);

/// Inverse right Jacobian: d/d(dphi) log(exp(phi) exp(dphi)) = Jr^{-1}(phi).
Eigen::Matrix3d right_jacobian_inverse(const Eigen::Vector3d& phi);

}  // namespace stopt::so3

#endif  // STOPT_SO3_HPP_
