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

#ifndef STOPT_SOLVER_HPP_
#define STOPT_SOLVER_HPP_

#include <string>
#include <vector>

#include "stopt/problem.hpp"
#include "stopt/trajectory.hpp"

namespace stopt {

/// How control limits are enforced.
///  - None: unconstrained gains, unconstrained rollout.
///  - Clamp: unconstrained gains, controls clipped to the box during the
///    rollout (works, converges slower).
///  - BoxQp: per-knot box-constrained feed-forward with feedback restricted
///    to the free set (active-set control-limited backward pass).
enum class LimitMode { None, Clamp, BoxQp };

std::string to_string(LimitMode mode);
LimitMode limit_mode_from_string(const std::string& name);

struct SolverConfig {
  int max_iterations = 100;
  double cost_tolerance = 1e-9;      // stop when an accepted step improves less
  double gradient_tolerance = 1e-9;  // stop when max |Qu| over free coords is below
  double mu_init = 1e-6;
  double mu_min = 1e-12;
  double mu_max = 1e10;
  double mu_scale_up = 10.0;
  double mu_scale_down = 2.0;
  int line_search_steps = 11;        // alpha = 1, 1/2, ..., 2^-(steps-1)
  double armijo_threshold = 1e-4;    // accept when actual >= threshold * expected
  LimitMode limit_mode = LimitMode::BoxQp;
  bool use_second_order_dynamics = false;

  void validate() const;
};

/// Quadratic model of the action-value function at one knot.
struct QModel {
  Eigen::VectorXd qx, qu;
  Eigen::MatrixXd qxx, quu, qux;
};

/// Feed-forward and feedback gains; the forward pass applies
/// u = u_ref - alpha k - K dx.
struct Gains {
  Eigen::VectorXd k;
  Eigen::MatrixXd K;
};

/// Quadratic value-function model at one knot.
struct ValueModel {
  double v = 0.0;
  Eigen::VectorXd vx;
  Eigen::MatrixXd vxx;
};

enum class ExitReason {
  CostTolerance,
  GradientTolerance,
  MaxIterations,
  RegularizationLimit,  // mu exceeded mu_max without an acceptable step
  NumericalError,
};

std::string to_string(ExitReason reason);

struct IterationStat {
  int iteration = 0;
  double cost = 0.0;
  double actual_reduction = 0.0;
  double expected_reduction = 0.0;
  double alpha = 0.0;  // 0 when no step was accepted
  double mu = 0.0;
  double grad_norm = 0.0;
  double wall_ms = 0.0;
  bool accepted = false;
};

struct SolveResult {
  Trajectory trajectory;
  std::vector<Gains> gains;
  bool converged = false;
  int iterations = 0;
  ExitReason exit_reason = ExitReason::MaxIterations;
  std::vector<double> cost_trace;  // initial cost, then one entry per accepted step
  std::vector<IterationStat> stats;
  CostTotals final_costs;
  double grad_norm = 0.0;
  double mu_final = 0.0;
};

struct BackwardPassResult {
  bool success = false;
  int failure_knot = -1;
  std::string message;
  std::vector<Gains> gains;
  std::vector<ValueModel> value;
  std::vector<QModel> q_models;
  double d1 = 0.0;  // sum_t k^T Qu
  double d2 = 0.0;  // sum_t k^T Quu k
  double grad_norm = 0.0;

  /// Model-predicted cost reduction of a step of length alpha.
  double expected_reduction(double alpha) const { return alpha * d1 - 0.5 * alpha * alpha * d2; }
};

struct ForwardPassResult {
  Trajectory trajectory;
  CostTotals costs;
  bool finite = false;
};

/// DDP/iLQR solver: backward value recursion with Levenberg-Marquardt
/// regularization on Quu, optional box-constrained control minimization,
/// and a line-searched forward rollout. By default the Q-model is the
/// Gauss-Newton (iLQR) one; use_second_order_dynamics adds the dynamics
/// Hessian terms for models that provide them.
///
/// One solver instance runs single-threaded over its own state; separate
/// instances over the same (immutable) problem can run concurrently.
class DdpSolver {
 public:
  explicit DdpSolver(Problem problem, SolverConfig config = {});

  /// Solve from zero initial controls (clamped into the box).
  SolveResult solve() const;
  SolveResult solve(const std::vector<Eigen::VectorXd>& initial_controls) const;

  /// Roll the controls out from x0 with the model dynamics.
  Trajectory rollout(const std::vector<Eigen::VectorXd>& controls) const;

  BackwardPassResult backward_pass(const Trajectory& reference, double mu) const;
  ForwardPassResult forward_pass(const Trajectory& reference, const std::vector<Gains>& gains,
                                 double alpha) const;

  const Problem& problem() const { return problem_; }
  const SolverConfig& config() const { return config_; }

 private:
  Problem problem_;
  SolverConfig config_;
};

}  // namespace stopt

#endif  // STOPT_SOLVER_HPP_
