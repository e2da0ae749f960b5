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

#include "stopt/costs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stopt {

ReferenceSchedule::ReferenceSchedule(Eigen::VectorXd goal) {
  stages_.push_back({std::numeric_limits<int>::max(), std::move(goal)});
}

ReferenceSchedule ReferenceSchedule::stages(std::vector<Stage> stages) {
  if (stages.empty()) {
    throw std::invalid_argument("reference schedule: at least one stage required");
  }
  for (size_t i = 1; i < stages.size(); ++i) {
    if (stages[i].end_knot <= stages[i - 1].end_knot) {
      throw std::invalid_argument("reference schedule: stage end knots must be increasing");
    }
  }
  ReferenceSchedule sched;
  sched.stages_ = std::move(stages);
  return sched;
}

const Eigen::VectorXd& ReferenceSchedule::at(int knot) const {
  for (const Stage& stage : stages_) {
    if (knot < stage.end_knot) {
      return stage.state;
    }
  }
  return stages_.back().state;
}

const Eigen::VectorXd& ReferenceSchedule::terminal() const {
  if (stages_.empty()) {
    throw std::logic_error("reference schedule is empty");
  }
  return stages_.back().state;
}

CostBundle::CostBundle(QuadraticStateCost state_cost, LossSpec loss)
    : state_cost_(std::move(state_cost)), loss_(loss) {
  validate_loss_spec(loss_);
  if ((state_cost_.q_running.array() < 0.0).any() ||
      (state_cost_.q_terminal.array() < 0.0).any()) {
    throw std::invalid_argument("state cost weights must be >= 0");
  }
}

void CostBundle::set_loss(const LossSpec& loss) {
  validate_loss_spec(loss);
  loss_ = loss;
}

namespace {

struct StateTerm {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

// e^T diag(q) e with e = state_diff(x, ref); gradient through the exact
// tangent Jacobian, Hessian Gauss-Newton (exact for Euclidean states).
StateTerm quadratic_state_term(const SystemModel& model, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& ref, const Eigen::VectorXd& q) {
  if (q.size() != model.ndx()) {
    throw std::invalid_argument("state cost weight dimension mismatch");
  }
  StateTerm term;
  const Eigen::VectorXd e = model.state_diff(x, ref);
  term.value = e.dot(q.cwiseProduct(e));
  const Eigen::MatrixXd jac = model.state_diff_jacobian(x, ref);
  term.grad = 2.0 * jac.transpose() * q.cwiseProduct(e);
  term.hess = 2.0 * jac.transpose() * q.asDiagonal() * jac;
  return term;
}

StateTerm end_effector_term(const EndEffectorCost& ee, double weight, const Eigen::VectorXd& x,
                            int ndx) {
  StateTerm term;
  term.grad = Eigen::VectorXd::Zero(ndx);
  term.hess = Eigen::MatrixXd::Zero(ndx, ndx);
  if (weight <= 0.0) {
    return term;
  }
  const int n = static_cast<int>(ee.link_lengths.size());
  if (x.size() != 2 * n) {
    throw std::invalid_argument("end-effector cost: state dimension mismatch");
  }
  const Eigen::VectorXd q = x.head(n);
  Eigen::Vector2d p = Eigen::Vector2d::Zero();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2, n);
  {
    double angle = 0.0;
    std::vector<double> sx(n), sy(n);
    for (int i = 0; i < n; ++i) {
      angle += q[i];
      p.x() += ee.link_lengths[i] * std::cos(angle);
      p.y() += ee.link_lengths[i] * std::sin(angle);
      sx[i] = -ee.link_lengths[i] * std::sin(angle);
      sy[i] = ee.link_lengths[i] * std::cos(angle);
    }
    double accx = 0.0, accy = 0.0;
    for (int k = n - 1; k >= 0; --k) {
      accx += sx[k];
      accy += sy[k];
      jac(0, k) = accx;
      jac(1, k) = accy;
    }
  }
  const Eigen::Vector2d r = p - ee.target;
  term.value = weight * r.squaredNorm();
  term.grad.head(n) = 2.0 * weight * jac.transpose() * r;
  term.hess.topLeftCorner(n, n) = 2.0 * weight * jac.transpose() * jac;
  return term;
}

}  // namespace

RunningCostDerivs CostBundle::running_cost(const SystemModel& model, const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& u, int knot) const {
  if (u.size() != model.nu()) {
    throw std::invalid_argument("running cost: control dimension mismatch");
  }
  RunningCostDerivs out;
  out.lx = Eigen::VectorXd::Zero(model.ndx());
  out.lxx = Eigen::MatrixXd::Zero(model.ndx(), model.ndx());
  out.lu = Eigen::VectorXd::Zero(model.nu());
  out.luu_diag = Eigen::VectorXd::Zero(model.nu());

  if (!state_cost_.references.empty() && !state_cost_.q_running.isZero()) {
    const StateTerm term =
        quadratic_state_term(model, x, state_cost_.references.at(knot), state_cost_.q_running);
    out.value += term.value;
    out.lx += term.grad;
    out.lxx += term.hess;
  }
  if (ee_cost_ && ee_cost_->running_weight > 0.0) {
    const StateTerm term = end_effector_term(*ee_cost_, ee_cost_->running_weight, x, model.ndx());
    out.value += term.value;
    out.lx += term.grad;
    out.lxx += term.hess;
  }
  if (loss_.lambda > 0.0) {
    const LossEval ev = loss_vector(loss_, u);
    out.value += loss_.lambda * ev.value;
    out.lu = loss_.lambda * ev.grad;
    out.luu_diag = loss_.lambda * ev.hess_diag;
  }
  return out;
}

TerminalCostDerivs CostBundle::terminal_cost(const SystemModel& model,
                                             const Eigen::VectorXd& x) const {
  TerminalCostDerivs out;
  out.hx = Eigen::VectorXd::Zero(model.ndx());
  out.hxx = Eigen::MatrixXd::Zero(model.ndx(), model.ndx());

  if (!state_cost_.references.empty()) {
    const StateTerm term = quadratic_state_term(model, x, state_cost_.references.terminal(),
                                                state_cost_.q_terminal);
    out.value += term.value;
    out.hx += term.grad;
    out.hxx += term.hess;
  }
  if (ee_cost_ && ee_cost_->terminal_weight > 0.0) {
    const StateTerm term = end_effector_term(*ee_cost_, ee_cost_->terminal_weight, x, model.ndx());
    out.value += term.value;
    out.hx += term.grad;
    out.hxx += term.hess;
  }
  return out;
}

CostTotals CostBundle::total_cost(const SystemModel& model, const Trajectory& traj) const {
  const int n = traj.knots();
  if (n < 1) {
    throw std::invalid_argument("total cost: trajectory must have at least one knot");
  }
  if (static_cast<int>(traj.us.size()) != n - 1) {
    throw std::invalid_argument("total cost: expected " + std::to_string(n - 1) +
                                " controls for " + std::to_string(n) + " knots, got " +
                                std::to_string(traj.us.size()));
  }

  CostTotals totals;
  for (int t = 0; t < n - 1; ++t) {
    if (!state_cost_.references.empty() && !state_cost_.q_running.isZero()) {
      const Eigen::VectorXd e = model.state_diff(traj.xs[t], state_cost_.references.at(t));
      totals.task_running += e.dot(state_cost_.q_running.cwiseProduct(e));
    }
    if (ee_cost_ && ee_cost_->running_weight > 0.0) {
      totals.task_running +=
          end_effector_term(*ee_cost_, ee_cost_->running_weight, traj.xs[t], model.ndx()).value;
    }
    if (loss_.lambda > 0.0) {
      for (Eigen::Index i = 0; i < traj.us[t].size(); ++i) {
        totals.regularizer += loss_.lambda * loss_value(loss_, traj.us[t][i]);
      }
    }
  }
  totals.task_terminal = terminal_cost(model, traj.xs.back()).value;
  totals.total = totals.task_running + totals.task_terminal + totals.regularizer;
  return totals;
}

bool CostBundle::has_exact_hessian(const SystemModel& model) const {
  if (ee_cost_ && (ee_cost_->running_weight > 0.0 || ee_cost_->terminal_weight > 0.0)) {
    return false;
  }
  // Rotational tracking errors carry a Gauss-Newton Hessian.
  return model.ndx() == model.nx();
}

}  // namespace stopt
