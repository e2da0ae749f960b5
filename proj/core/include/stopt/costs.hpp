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

#ifndef STOPT_COSTS_HPP_
#define STOPT_COSTS_HPP_

#include <optional>
#include <vector>

#include "stopt/dynamics.hpp"
#include "stopt/loss.hpp"
#include "stopt/trajectory.hpp"

namespace stopt {

/// Piecewise-constant reference states: stage i applies to knots
/// [previous end, end_knot). The last stage also provides the terminal
/// reference. A single-stage schedule is a constant goal.
class ReferenceSchedule {
 public:
  ReferenceSchedule() = default;
  explicit ReferenceSchedule(Eigen::VectorXd goal);

  struct Stage {
    int end_knot = 0;  // exclusive
    Eigen::VectorXd state;
  };

  static ReferenceSchedule stages(std::vector<Stage> stages);

  const Eigen::VectorXd& at(int knot) const;
  const Eigen::VectorXd& terminal() const;
  const std::vector<Stage>& stage_list() const { return stages_; }
  bool empty() const { return stages_.empty(); }

 private:
  std::vector<Stage> stages_;
};

/// Quadratic tracking cost e^T diag(q) e with e the tangent-space state
/// error; no 1/2 factor, so the gradient is 2 q . e.
struct QuadraticStateCost {
  Eigen::VectorXd q_running;   // ndx entries, >= 0
  Eigen::VectorXd q_terminal;  // ndx entries, >= 0
  ReferenceSchedule references;
};

/// Planar end-effector target for the arm. Holds a copy of the link
/// lengths as its forward-kinematics handle; the Hessian it contributes is
/// the Gauss-Newton one.
struct EndEffectorCost {
  Eigen::Vector2d target = Eigen::Vector2d::Zero();
  double running_weight = 0.0;
  double terminal_weight = 0.0;
  std::vector<double> link_lengths;
};

struct RunningCostDerivs {
  double value = 0.0;
  Eigen::VectorXd lx;        // ndx
  Eigen::VectorXd lu;        // nu
  Eigen::MatrixXd lxx;       // ndx x ndx
  Eigen::VectorXd luu_diag;  // nu (control Hessian is diagonal)
  // l_ux is identically zero: state and control costs are separable.
};

struct TerminalCostDerivs {
  double value = 0.0;
  Eigen::VectorXd hx;
  Eigen::MatrixXd hxx;
};

struct CostTotals {
  double total = 0.0;
  double task_running = 0.0;
  double task_terminal = 0.0;  // "final task cost" of a converged solve
  double regularizer = 0.0;    // lambda-weighted control penalty

  double task() const { return task_running + task_terminal; }
};

/// Running and terminal cost assembly: quadratic state tracking plus the
/// lambda-weighted control regularizer. lambda = 0 skips the regularizer
/// entirely so it contributes exact zeros.
class CostBundle {
 public:
  CostBundle() = default;
  CostBundle(QuadraticStateCost state_cost, LossSpec loss);

  RunningCostDerivs running_cost(const SystemModel& model, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& u, int knot) const;
  TerminalCostDerivs terminal_cost(const SystemModel& model, const Eigen::VectorXd& x) const;
  CostTotals total_cost(const SystemModel& model, const Trajectory& traj) const;

  const LossSpec& loss() const { return loss_; }
  void set_loss(const LossSpec& loss);
  const QuadraticStateCost& state_cost() const { return state_cost_; }

  void set_end_effector(EndEffectorCost cost) { ee_cost_ = std::move(cost); }
  const std::optional<EndEffectorCost>& end_effector() const { return ee_cost_; }

  /// False when a Gauss-Newton Hessian term is present (end-effector cost,
  /// or rotational tracking error); derivative checks then only validate
  /// gradients against finite differences.
  bool has_exact_hessian(const SystemModel& model) const;

 private:
  QuadraticStateCost state_cost_;
  LossSpec loss_;
  std::optional<EndEffectorCost> ee_cost_;
};

}  // namespace stopt

#endif  // STOPT_COSTS_HPP_
