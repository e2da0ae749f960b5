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

#ifndef STOPT_DYNAMICS_HPP_
#define STOPT_DYNAMICS_HPP_

#include <Eigen/Core>
#include <random>

namespace stopt {

/// Jacobians of the discrete transition x' = f(x, u), expressed in the
/// model's tangent space: fx is ndx x ndx, fu is ndx x nu.
struct StepJacobians {
  Eigen::MatrixXd fx;
  Eigen::MatrixXd fu;
};

/// Discrete-time system model. States live on a manifold of dimension ndx
/// embedded in R^nx (ndx == nx for Euclidean systems); controls are
/// Euclidean with box bounds (entries may be +-inf). Implementations are
/// immutable after construction, and step/jacobians are pure, so model
/// objects can be shared across concurrent solves.
class SystemModel {
 public:
  virtual ~SystemModel() = default;

  virtual int nx() const = 0;
  virtual int ndx() const = 0;
  virtual int nu() const = 0;
  virtual double dt() const = 0;

  virtual const Eigen::VectorXd& control_lower() const = 0;
  virtual const Eigen::VectorXd& control_upper() const = 0;

  /// One step of semi-implicit (symplectic) Euler: velocities first, then
  /// configuration with the updated velocities.
  virtual Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const = 0;

  /// Analytic step Jacobians. The default falls back to finite differences.
  virtual StepJacobians jacobians(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const {
    return finite_diff_jacobians(x, u);
  }

  /// Central-difference Jacobians in tangent space; available for every
  /// model as an independent cross-check of jacobians().
  StepJacobians finite_diff_jacobians(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;

  /// Tangent-space difference x1 (-) x0; zero when the states are equal.
  virtual Eigen::VectorXd state_diff(const Eigen::VectorXd& x1, const Eigen::VectorXd& x0) const {
    return x1 - x0;
  }

  /// Retraction x (+) dx, the inverse of state_diff in the first argument.
  virtual Eigen::VectorXd integrate(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) const {
    return x + dx;
  }

  /// Jacobian of state_diff(x (+) d, ref) with respect to d at d = 0.
  /// Identity for Euclidean models.
  virtual Eigen::MatrixXd state_diff_jacobian(const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& ref) const {
    (void)x;
    (void)ref;
    return Eigen::MatrixXd::Identity(ndx(), ndx());
  }

  /// A valid resting state (zeros, identity quaternion where applicable).
  virtual Eigen::VectorXd neutral_state() const { return Eigen::VectorXd::Zero(nx()); }

  /// A random valid state, used by the derivative-check harness.
  virtual Eigen::VectorXd random_state(std::mt19937& rng) const;

  /// Second-order dynamics terms (V'_x . f_xx etc.). Models that can supply
  /// them exactly override both methods; the solver only consults them when
  /// its exact-DDP switch is on.
  virtual bool has_dynamics_hessians() const { return false; }
  virtual void add_dynamics_hessian_terms(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                          const Eigen::VectorXd& vx, Eigen::MatrixXd& qxx,
                                          Eigen::MatrixXd& qux, Eigen::MatrixXd& quu) const;

 protected:
  void check_dimensions(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;
};

/// Clamp a control vector into the model's box, coordinate-wise.
Eigen::VectorXd clamp_control(const SystemModel& model, const Eigen::VectorXd& u);

}  // namespace stopt

#endif  // STOPT_DYNAMICS_HPP_
