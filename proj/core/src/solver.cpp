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

#include "stopt/solver.hpp"

#include <Eigen/Cholesky>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stopt/boxqp.hpp"

namespace stopt {

void Problem::validate() const {
  if (!model) {
    throw std::invalid_argument("problem: model is null");
  }
  if (horizon < 1) {
    throw std::invalid_argument("problem: horizon must be >= 1 knot");
  }
  if (x0.size() != model->nx()) {
    throw std::invalid_argument("problem: initial state dimension mismatch");
  }
}

void SolverConfig::validate() const {
  if (max_iterations < 1) {
    throw std::invalid_argument("solver config: max_iterations must be >= 1");
  }
  if (cost_tolerance <= 0.0 || gradient_tolerance <= 0.0) {
    throw std::invalid_argument("solver config: tolerances must be > 0");
  }
  if (!(mu_min <= mu_init && mu_init <= mu_max)) {
    throw std::invalid_argument("solver config: require mu_min <= mu_init <= mu_max");
  }
  if (mu_scale_up <= 1.0 || mu_scale_down <= 1.0) {
    throw std::invalid_argument("solver config: mu scale factors must be > 1");
  }
  if (line_search_steps < 1) {
    throw std::invalid_argument("solver config: line_search_steps must be >= 1");
  }
}

std::string to_string(LimitMode mode) {
  switch (mode) {
    case LimitMode::None:
      return "none";
    case LimitMode::Clamp:
      return "clamp";
    case LimitMode::BoxQp:
      return "boxqp";
  }
  throw std::logic_error("unknown LimitMode");
}

LimitMode limit_mode_from_string(const std::string& name) {
  if (name == "none") return LimitMode::None;
  if (name == "clamp") return LimitMode::Clamp;
  if (name == "boxqp") return LimitMode::BoxQp;
  throw std::invalid_argument("unknown limit mode '" + name +
                              "' (expected none, clamp or boxqp)");
}

std::string to_string(ExitReason reason) {
  switch (reason) {
    case ExitReason::CostTolerance:
      return "cost_tolerance";
    case ExitReason::GradientTolerance:
      return "gradient_tolerance";
    case ExitReason::MaxIterations:
      return "max_iterations";
    case ExitReason::RegularizationLimit:
      return "regularization_limit";
    case ExitReason::NumericalError:
      return "numerical_error";
  }
  throw std::logic_error("unknown ExitReason");
}

DdpSolver::DdpSolver(Problem problem, SolverConfig config)
    : problem_(std::move(problem)), config_(config) {
  problem_.validate();
  config_.validate();
  if (config_.use_second_order_dynamics && !problem_.model->has_dynamics_hessians()) {
    throw std::invalid_argument(
        "solver config: use_second_order_dynamics requires a model with dynamics Hessians");
  }
}

Trajectory DdpSolver::rollout(const std::vector<Eigen::VectorXd>& controls) const {
  if (static_cast<int>(controls.size()) != problem_.horizon - 1) {
    throw std::invalid_argument("rollout: expected " + std::to_string(problem_.horizon - 1) +
                                " controls");
  }
  Trajectory traj;
  traj.dt = problem_.model->dt();
  traj.us = controls;
  traj.xs.reserve(problem_.horizon);
  traj.xs.push_back(problem_.x0);
  for (const Eigen::VectorXd& u : controls) {
    traj.xs.push_back(problem_.model->step(traj.xs.back(), u));
  }
  return traj;
}

BackwardPassResult DdpSolver::backward_pass(const Trajectory& reference, double mu) const {
  const SystemModel& model = *problem_.model;
  const int n = reference.knots();
  const int nu = model.nu();
  const int ndx = model.ndx();
  if (mu < 0.0) {
    throw std::invalid_argument("backward pass: mu must be >= 0");
  }

  BackwardPassResult res;
  res.gains.resize(n - 1);
  res.value.resize(n);
  res.q_models.resize(n - 1);

  const TerminalCostDerivs term = problem_.cost.terminal_cost(model, reference.xs.back());
  res.value[n - 1] = {term.value, term.hx, term.hxx};

  const bool boxed = config_.limit_mode == LimitMode::BoxQp;
  const Eigen::MatrixXd mu_eye = mu * Eigen::MatrixXd::Identity(nu, nu);

  for (int t = n - 2; t >= 0; --t) {
    const Eigen::VectorXd& x = reference.xs[t];
    const Eigen::VectorXd& u = reference.us[t];
    const ValueModel& next = res.value[t + 1];

    const RunningCostDerivs l = problem_.cost.running_cost(model, x, u, t);
    const StepJacobians dyn = model.jacobians(x, u);

    QModel& q = res.q_models[t];
    q.qx = l.lx + dyn.fx.transpose() * next.vx;
    q.qu = l.lu + dyn.fu.transpose() * next.vx;
    const Eigen::MatrixXd fxT_vxx = dyn.fx.transpose() * next.vxx;
    q.qxx = l.lxx + fxT_vxx * dyn.fx;
    const Eigen::MatrixXd fuT_vxx = dyn.fu.transpose() * next.vxx;
    q.quu = Eigen::MatrixXd(l.luu_diag.asDiagonal());
    q.quu += fuT_vxx * dyn.fu;
    q.qux = fuT_vxx * dyn.fx;  // l_ux is zero by construction

    if (config_.use_second_order_dynamics) {
      model.add_dynamics_hessian_terms(x, u, next.vx, q.qxx, q.qux, q.quu);
    }

    if (!q.qx.allFinite() || !q.qu.allFinite() || !q.qxx.allFinite() || !q.quu.allFinite() ||
        !q.qux.allFinite()) {
      res.success = false;
      res.failure_knot = t;
      res.message = "non-finite Q derivatives at knot " + std::to_string(t);
      return res;
    }

    const Eigen::MatrixXd quu_reg = q.quu + mu_eye;
    Gains& gains = res.gains[t];
    gains.k.setZero(nu);
    gains.K.setZero(nu, ndx);

    if (boxed) {
      const BoxQpResult qp =
          box_qp(quu_reg, q.qu, u, model.control_lower(), model.control_upper());
      if (!qp.converged) {
        res.success = false;
        res.failure_knot = t;
        res.message = "box QP failed at knot " + std::to_string(t);
        return res;
      }
      gains.k = -qp.delta_u;
      double gn = 0.0;
      if (!qp.free_indices.empty()) {
        const int nf = qp.free_count();
        Eigen::MatrixXd qux_f(nf, ndx);
        for (int a = 0; a < nf; ++a) {
          qux_f.row(a) = q.qux.row(qp.free_indices[a]);
          gn = std::max(gn, std::abs(q.qu[qp.free_indices[a]]));
        }
        const Eigen::MatrixXd k_f = qp.llt_free.solve(qux_f);
        for (int a = 0; a < nf; ++a) {
          gains.K.row(qp.free_indices[a]) = k_f.row(a);
        }
      }
      res.grad_norm = std::max(res.grad_norm, gn);
    } else {
      const Eigen::LLT<Eigen::MatrixXd> llt(quu_reg);
      if (llt.info() != Eigen::Success) {
        res.success = false;
        res.failure_knot = t;
        res.message = "Quu not positive definite at knot " + std::to_string(t);
        return res;
      }
      gains.k = llt.solve(q.qu);
      gains.K = llt.solve(q.qux);
      res.grad_norm = std::max(res.grad_norm, q.qu.lpNorm<Eigen::Infinity>());
    }

    res.d1 += gains.k.dot(q.qu);
    const Eigen::VectorXd quu_k = quu_reg * gains.k;
    res.d2 += gains.k.dot(quu_k);

    // Value recursion in the general form, valid for clamped gains too:
    // u(dx) = u_ref - k - K dx substituted into the quadratic Q-model.
    ValueModel& val = res.value[t];
    val.v = l.value + next.v - gains.k.dot(q.qu) + 0.5 * gains.k.dot(quu_k);
    val.vx = q.qx - gains.K.transpose() * q.qu + gains.K.transpose() * quu_k -
             q.qux.transpose() * gains.k;
    val.vxx = q.qxx + gains.K.transpose() * quu_reg * gains.K -
              gains.K.transpose() * q.qux - q.qux.transpose() * gains.K;
    val.vxx = 0.5 * (val.vxx + val.vxx.transpose()).eval();

    if (!val.vx.allFinite() || !val.vxx.allFinite()) {
      res.success = false;
      res.failure_knot = t;
      res.message = "non-finite value recursion at knot " + std::to_string(t);
      return res;
    }
  }

  res.success = true;
  return res;
}

ForwardPassResult DdpSolver::forward_pass(const Trajectory& reference,
                                          const std::vector<Gains>& gains, double alpha) const {
  const SystemModel& model = *problem_.model;
  const int n = reference.knots();
  if (static_cast<int>(gains.size()) != n - 1) {
    throw std::invalid_argument("forward pass: gains size mismatch");
  }

  ForwardPassResult res;
  res.trajectory.dt = reference.dt;
  res.trajectory.xs.reserve(n);
  res.trajectory.us.reserve(n - 1);
  res.trajectory.xs.push_back(reference.xs.front());

  const bool clip = config_.limit_mode != LimitMode::None;
  for (int t = 0; t < n - 1; ++t) {
    const Eigen::VectorXd dx = model.state_diff(res.trajectory.xs.back(), reference.xs[t]);
    Eigen::VectorXd u = reference.us[t] - alpha * gains[t].k - gains[t].K * dx;
    if (clip) {
      u = clamp_control(model, u);
    }
    if (!u.allFinite()) {
      return res;  // finite stays false; caller treats as line-search failure
    }
    const Eigen::VectorXd x_next = model.step(res.trajectory.xs.back(), u);
    if (!x_next.allFinite()) {
      return res;
    }
    res.trajectory.us.push_back(std::move(u));
    res.trajectory.xs.push_back(x_next);
  }

  res.costs = problem_.cost.total_cost(model, res.trajectory);
  res.finite = std::isfinite(res.costs.total);
  return res;
}

SolveResult DdpSolver::solve() const {
  std::vector<Eigen::VectorXd> us(problem_.horizon - 1,
                                  Eigen::VectorXd::Zero(problem_.model->nu()));
  return solve(us);
}

SolveResult DdpSolver::solve(const std::vector<Eigen::VectorXd>& initial_controls) const {
  using clock = std::chrono::steady_clock;
  const SystemModel& model = *problem_.model;

  std::vector<Eigen::VectorXd> us = initial_controls;
  if (config_.limit_mode != LimitMode::None) {
    for (Eigen::VectorXd& u : us) {
      u = clamp_control(model, u);
    }
  }

  SolveResult result;
  result.trajectory = rollout(us);
  if (!result.trajectory.xs.back().allFinite()) {
    result.exit_reason = ExitReason::NumericalError;
    return result;
  }
  result.final_costs = problem_.cost.total_cost(model, result.trajectory);
  double cost = result.final_costs.total;
  result.cost_trace.push_back(cost);

  double mu = config_.mu_init;
  result.exit_reason = ExitReason::MaxIterations;

  for (int iter = 1; iter <= config_.max_iterations; ++iter) {
    const auto tic = clock::now();
    IterationStat stat;
    stat.iteration = iter;
    stat.mu = mu;

    BackwardPassResult bp = backward_pass(result.trajectory, mu);
    while (!bp.success) {
      mu *= config_.mu_scale_up;
      stat.mu = mu;
      if (mu > config_.mu_max) {
        result.exit_reason = ExitReason::RegularizationLimit;
        result.iterations = iter;
        result.mu_final = mu;
        stat.cost = cost;
        stat.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - tic).count();
        result.stats.push_back(stat);
        return result;
      }
      bp = backward_pass(result.trajectory, mu);
    }
    result.gains = bp.gains;
    result.grad_norm = bp.grad_norm;
    stat.grad_norm = bp.grad_norm;

    if (bp.grad_norm < config_.gradient_tolerance) {
      result.converged = true;
      result.exit_reason = ExitReason::GradientTolerance;
      result.iterations = iter;
      result.mu_final = mu;
      stat.cost = cost;
      stat.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - tic).count();
      result.stats.push_back(stat);
      return result;
    }
    if (bp.expected_reduction(1.0) < config_.cost_tolerance &&
        bp.expected_reduction(1.0) >= 0.0) {
      // The quadratic model predicts no meaningful progress.
      result.converged = true;
      result.exit_reason = ExitReason::CostTolerance;
      result.iterations = iter;
      result.mu_final = mu;
      stat.cost = cost;
      stat.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - tic).count();
      result.stats.push_back(stat);
      return result;
    }

    bool accepted = false;
    double alpha = 1.0;
    ForwardPassResult fp;
    for (int s = 0; s < config_.line_search_steps; ++s, alpha *= 0.5) {
      fp = forward_pass(result.trajectory, bp.gains, alpha);
      if (!fp.finite) {
        continue;
      }
      const double actual = cost - fp.costs.total;
      const double expected = bp.expected_reduction(alpha);
      if (actual > 0.0 && actual >= config_.armijo_threshold * std::max(expected, 0.0)) {
        accepted = true;
        break;
      }
    }

    stat.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - tic).count();
    if (accepted) {
      const double reduction = cost - fp.costs.total;
      result.trajectory = std::move(fp.trajectory);
      result.final_costs = fp.costs;
      cost = fp.costs.total;
      result.cost_trace.push_back(cost);

      stat.accepted = true;
      stat.alpha = alpha;
      stat.cost = cost;
      stat.actual_reduction = reduction;
      stat.expected_reduction = bp.expected_reduction(alpha);
      result.stats.push_back(stat);
      result.iterations = iter;

      if (alpha == 1.0) {
        mu = std::max(config_.mu_min, mu / config_.mu_scale_down);
      }
      if (reduction < config_.cost_tolerance) {
        result.converged = true;
        result.exit_reason = ExitReason::CostTolerance;
        result.mu_final = mu;
        return result;
      }
    } else {
      stat.cost = cost;
      result.stats.push_back(stat);
      result.iterations = iter;
      mu *= config_.mu_scale_up;
      if (mu > config_.mu_max) {
        result.exit_reason = ExitReason::RegularizationLimit;
        result.mu_final = mu;
        return result;
      }
    }
  }

  result.mu_final = mu;
  return result;
}

}  // namespace stopt
