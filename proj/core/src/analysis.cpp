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

#include "stopt/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace stopt {

SparsityReport sparsity_report(const Trajectory& traj, double beta,
                               const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                               double final_task_cost) {
  SparsityReport rep;
  rep.beta = beta;
  rep.final_task_cost = final_task_cost;
  for (size_t t = 0; t < traj.us.size(); ++t) {
    const Eigen::VectorXd& u = traj.us[t];
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      ++rep.total_controls;
      if (std::abs(u[i]) <= beta) {
        ++rep.zero_count;
      }
      const bool at_lower = std::isfinite(lower[i]) && std::abs(u[i] - lower[i]) <= 1e-6;
      const bool at_upper = std::isfinite(upper[i]) && std::abs(u[i] - upper[i]) <= 1e-6;
      if (at_lower || at_upper) {
        ++rep.bound_saturation_count;
      }
      rep.l1_norm += std::abs(u[i]);
      if (t + 1 < traj.us.size()) {
        rep.total_variation += std::abs(traj.us[t + 1][i] - u[i]);
      }
    }
  }
  rep.zero_fraction =
      rep.total_controls > 0 ? static_cast<double>(rep.zero_count) / rep.total_controls : 0.0;
  return rep;
}

const SweepCell& SweepGrid::at(size_t loss, size_t beta, size_t lambda) const {
  return cells.at((loss * spec.betas.size() + beta) * spec.lambdas.size() + lambda);
}

namespace {

SweepCell solve_cell(const Problem& base, const SolverConfig& solver_config, LossKind kind,
                     double beta, double lambda) {
  SweepCell cell;
  cell.loss = kind;
  cell.beta = beta;
  cell.lambda = lambda;
  const auto tic = std::chrono::steady_clock::now();
  try {
    Problem problem = base;
    problem.cost.set_loss(make_loss_spec(kind, beta, lambda));
    const DdpSolver solver(std::move(problem), solver_config);
    const SolveResult result = solver.solve();
    cell.solved = true;
    cell.converged = result.converged;
    cell.iterations = result.iterations;
    cell.final_cost = result.final_costs.total;
    cell.report = sparsity_report(result.trajectory, beta, base.model->control_lower(),
                                  base.model->control_upper(),
                                  result.final_costs.task_terminal);
  } catch (const std::exception& e) {
    cell.solved = false;
    cell.error = e.what();
  }
  cell.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - tic).count();
  return cell;
}

}  // namespace

SweepGrid run_sweep(const Problem& base, const SolverConfig& solver_config, const SweepSpec& spec,
                    int jobs) {
  if (spec.losses.empty() || spec.betas.empty() || spec.lambdas.empty()) {
    throw std::invalid_argument("run_sweep: grid must be non-empty in every dimension");
  }
  base.validate();

  SweepGrid grid;
  grid.spec = spec;
  const size_t total = spec.losses.size() * spec.betas.size() * spec.lambdas.size();
  grid.cells.resize(total);

  const size_t nb = spec.betas.size();
  const size_t nl = spec.lambdas.size();
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
      const size_t li = idx / (nb * nl);
      const size_t bi = (idx / nl) % nb;
      const size_t ki = idx % nl;
      grid.cells[idx] =
          solve_cell(base, solver_config, spec.losses[li], spec.betas[bi], spec.lambdas[ki]);
    }
  };

  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) {
      pool.emplace_back(worker);
    }
    for (std::thread& th : pool) {
      th.join();
    }
  }
  return grid;
}

TrendStats lambda_trends(const SweepGrid& grid, LossKind kind) {
  const auto it = std::find(grid.spec.losses.begin(), grid.spec.losses.end(), kind);
  if (it == grid.spec.losses.end()) {
    throw std::invalid_argument("lambda_trends: loss kind not in grid");
  }
  const size_t li = static_cast<size_t>(it - grid.spec.losses.begin());
  const size_t bi = static_cast<size_t>(
      std::max_element(grid.spec.betas.begin(), grid.spec.betas.end()) -
      grid.spec.betas.begin());

  TrendStats stats;
  stats.largest_beta = grid.spec.betas[bi];
  const size_t nl = grid.spec.lambdas.size();
  if (nl < 2) {
    stats.zero_count_nondecreasing_fraction = 1.0;
    stats.task_cost_nondecreasing_fraction = 1.0;
    return stats;
  }
  int zero_ok = 0;
  int cost_ok = 0;
  for (size_t k = 0; k + 1 < nl; ++k) {
    const SweepCell& a = grid.at(li, bi, k);
    const SweepCell& b = grid.at(li, bi, k + 1);
    ++stats.pairs;
    if (b.report.zero_count >= a.report.zero_count) {
      ++zero_ok;
    }
    // tiny relative slack so equal-cost plateaus count as non-decreasing
    if (b.report.final_task_cost >=
        a.report.final_task_cost - 1e-9 * std::abs(a.report.final_task_cost)) {
      ++cost_ok;
    }
  }
  stats.zero_count_nondecreasing_fraction = static_cast<double>(zero_ok) / stats.pairs;
  stats.task_cost_nondecreasing_fraction = static_cast<double>(cost_ok) / stats.pairs;
  return stats;
}

std::vector<TimingStats> timing_report(const Problem& base, const SolverConfig& solver_config,
                                       const std::vector<LossKind>& losses,
                                       const std::vector<double>& lambdas, double beta) {
  if (losses.empty()) {
    throw std::invalid_argument("timing_report: no loss kinds given");
  }
  if (lambdas.empty()) {
    throw std::invalid_argument("timing_report: lambda grid is empty");
  }

  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };

  std::vector<TimingStats> out;
  out.reserve(losses.size());
  for (const LossKind kind : losses) {
    TimingStats stats;
    stats.loss = kind;
    std::vector<double> iters, walls;
    for (const double lambda : lambdas) {
      SweepCell cell = solve_cell(base, solver_config, kind, beta, lambda);
      iters.push_back(static_cast<double>(cell.iterations));
      walls.push_back(cell.wall_ms);
      stats.cells.push_back(std::move(cell));
    }
    stats.runs = static_cast<int>(iters.size());
    stats.mean_iterations =
        std::accumulate(iters.begin(), iters.end(), 0.0) / static_cast<double>(stats.runs);
    stats.mean_wall_ms =
        std::accumulate(walls.begin(), walls.end(), 0.0) / static_cast<double>(stats.runs);
    stats.median_iterations = median(iters);
    stats.median_wall_ms = median(walls);
    out.push_back(std::move(stats));
  }
  return out;
}

namespace {

double rel_error(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

CheckEntry check_loss_derivatives(const LossSpec& spec, std::mt19937& rng, int samples) {
  CheckEntry entry;
  entry.name = "loss." + to_string(spec.kind);
  entry.tolerance = 1e-4;
  std::uniform_real_distribution<double> dist(-5.0 * std::max(1.0, spec.beta),
                                              5.0 * std::max(1.0, spec.beta));
  const double h = 1e-6 * std::max(1.0, spec.beta);
  for (int s = 0; s < samples; ++s) {
    double x = dist(rng);
    if (std::abs(std::abs(x) - spec.beta) < 1e-3) {
      x += 2e-3;  // stay off the kink
    }
    const double fd_grad = (loss_value(spec, x + h) - loss_value(spec, x - h)) / (2.0 * h);
    const double fd_hess = (loss_grad(spec, x + h) - loss_grad(spec, x - h)) / (2.0 * h);
    entry.max_rel_error = std::max(entry.max_rel_error, rel_error(loss_grad(spec, x), fd_grad));
    entry.max_rel_error = std::max(entry.max_rel_error, rel_error(loss_hess(spec, x), fd_hess));
  }
  entry.passed = entry.max_rel_error < entry.tolerance;
  return entry;
}

Eigen::VectorXd random_control(const SystemModel& model, std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd u(model.nu());
  for (int i = 0; i < model.nu(); ++i) {
    const double lo = std::isfinite(model.control_lower()[i]) ? model.control_lower()[i] : -1.0;
    const double hi = std::isfinite(model.control_upper()[i]) ? model.control_upper()[i] : 1.0;
    // interior point, away from the box edges
    const double s = 0.1 + 0.8 * unit(rng);
    u[i] = lo + s * (hi - lo);
  }
  return u;
}

}  // namespace

DerivativeReport check_derivatives(const Problem& problem, int samples, unsigned seed) {
  problem.validate();
  const SystemModel& model = *problem.model;
  std::mt19937 rng(seed);

  DerivativeReport report;

  if (problem.cost.loss().lambda > 0.0) {
    report.entries.push_back(check_loss_derivatives(problem.cost.loss(), rng, samples));
  }

  CheckEntry fx_entry{"dynamics.fx", 0.0, 1e-4, false};
  CheckEntry fu_entry{"dynamics.fu", 0.0, 1e-4, false};
  CheckEntry lx_entry{"cost.l_x", 0.0, 1e-4, false};
  CheckEntry lu_entry{"cost.l_u", 0.0, 1e-4, false};
  CheckEntry hx_entry{"cost.h_x", 0.0, 1e-4, false};
  const bool exact_hessian = problem.cost.has_exact_hessian(model);
  CheckEntry lxx_entry{"cost.l_xx", 0.0, 1e-4, false};
  CheckEntry luu_entry{"cost.l_uu", 0.0, 1e-4, false};
  CheckEntry hxx_entry{"cost.h_xx", 0.0, 1e-4, false};

  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd x = model.random_state(rng);
    const Eigen::VectorXd u = random_control(model, rng);

    const StepJacobians analytic = model.jacobians(x, u);
    const StepJacobians fd = model.finite_diff_jacobians(x, u);
    const double scale_fx = std::max(1.0, fd.fx.cwiseAbs().maxCoeff());
    const double scale_fu = std::max(1.0, fd.fu.cwiseAbs().maxCoeff());
    fx_entry.max_rel_error = std::max(fx_entry.max_rel_error,
                                      (analytic.fx - fd.fx).cwiseAbs().maxCoeff() / scale_fx);
    fu_entry.max_rel_error = std::max(fu_entry.max_rel_error,
                                      (analytic.fu - fd.fu).cwiseAbs().maxCoeff() / scale_fu);

    // cost gradients vs central differences of the values, in tangent space
    const int knot = s % std::max(1, problem.horizon - 1);
    const RunningCostDerivs l = problem.cost.running_cost(model, x, u, knot);
    const TerminalCostDerivs term = problem.cost.terminal_cost(model, x);
    Eigen::VectorXd dx = Eigen::VectorXd::Zero(model.ndx());
    for (int i = 0; i < model.ndx(); ++i) {
      const double h = 1e-6;
      dx[i] = h;
      const double lp = problem.cost.running_cost(model, model.integrate(x, dx), u, knot).value;
      const double hp = problem.cost.terminal_cost(model, model.integrate(x, dx)).value;
      const Eigen::VectorXd glp =
          problem.cost.running_cost(model, model.integrate(x, dx), u, knot).lx;
      dx[i] = -h;
      const double lm = problem.cost.running_cost(model, model.integrate(x, dx), u, knot).value;
      const double hm = problem.cost.terminal_cost(model, model.integrate(x, dx)).value;
      const Eigen::VectorXd glm =
          problem.cost.running_cost(model, model.integrate(x, dx), u, knot).lx;
      dx[i] = 0.0;
      lx_entry.max_rel_error =
          std::max(lx_entry.max_rel_error, rel_error(l.lx[i], (lp - lm) / (2.0 * h)));
      hx_entry.max_rel_error =
          std::max(hx_entry.max_rel_error, rel_error(term.hx[i], (hp - hm) / (2.0 * h)));
      if (exact_hessian) {
        const Eigen::VectorXd fd_col = (glp - glm) / (2.0 * h);
        lxx_entry.max_rel_error = std::max(
            lxx_entry.max_rel_error,
            (l.lxx.col(i) - fd_col).cwiseAbs().maxCoeff() / std::max(1.0, fd_col.norm()));
      }
    }
    if (exact_hessian) {
      for (int i = 0; i < model.ndx(); ++i) {
        const double h = 1e-6;
        dx[i] = h;
        const Eigen::VectorXd gp = problem.cost.terminal_cost(model, model.integrate(x, dx)).hx;
        dx[i] = -h;
        const Eigen::VectorXd gm = problem.cost.terminal_cost(model, model.integrate(x, dx)).hx;
        dx[i] = 0.0;
        const Eigen::VectorXd fd_col = (gp - gm) / (2.0 * h);
        hxx_entry.max_rel_error = std::max(
            hxx_entry.max_rel_error,
            (term.hxx.col(i) - fd_col).cwiseAbs().maxCoeff() / std::max(1.0, fd_col.norm()));
      }
    }

    Eigen::VectorXd du = u;
    for (int i = 0; i < model.nu(); ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(u[i]));
      const double beta = problem.cost.loss().beta;
      if (problem.cost.loss().lambda > 0.0 && std::abs(std::abs(u[i]) - beta) < 1e-3) {
        continue;  // off the loss kink
      }
      du[i] = u[i] + h;
      const RunningCostDerivs lp = problem.cost.running_cost(model, x, du, knot);
      du[i] = u[i] - h;
      const RunningCostDerivs lm = problem.cost.running_cost(model, x, du, knot);
      du[i] = u[i];
      lu_entry.max_rel_error =
          std::max(lu_entry.max_rel_error, rel_error(l.lu[i], (lp.value - lm.value) / (2.0 * h)));
      luu_entry.max_rel_error = std::max(
          luu_entry.max_rel_error, rel_error(l.luu_diag[i], (lp.lu[i] - lm.lu[i]) / (2.0 * h)));
    }
  }

  for (CheckEntry* entry : {&fx_entry, &fu_entry, &lx_entry, &lu_entry, &hx_entry}) {
    entry->passed = entry->max_rel_error < entry->tolerance;
    report.entries.push_back(*entry);
  }
  if (exact_hessian) {
    for (CheckEntry* entry : {&lxx_entry, &hxx_entry}) {
      entry->passed = entry->max_rel_error < entry->tolerance;
      report.entries.push_back(*entry);
    }
  }
  luu_entry.passed = luu_entry.max_rel_error < luu_entry.tolerance;
  report.entries.push_back(luu_entry);

  report.passed = true;
  for (const CheckEntry& entry : report.entries) {
    report.passed = report.passed && entry.passed;
    if (entry.max_rel_error >= report.worst_error) {
      report.worst_error = entry.max_rel_error;
      report.worst_name = entry.name;
    }
  }
  return report;
}

std::string DerivativeReport::summary() const {
  std::ostringstream os;
  for (const CheckEntry& entry : entries) {
    os << (entry.passed ? "  ok   " : "  FAIL ") << entry.name
       << "  max_rel_error=" << entry.max_rel_error << " (tol " << entry.tolerance << ")\n";
  }
  os << (passed ? "derivative checks passed" : "derivative checks FAILED") << "; worst "
     << worst_name << " at " << worst_error << "\n";
  return os.str();
}

JacobianFaultModel::JacobianFaultModel(std::shared_ptr<const SystemModel> inner, double offset)
    : inner_(std::move(inner)), offset_(offset) {}

StepJacobians JacobianFaultModel::jacobians(const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& u) const {
  StepJacobians jac = inner_->jacobians(x, u);
  jac.fx(0, std::min<Eigen::Index>(1, jac.fx.cols() - 1)) += offset_;
  return jac;
}

}  // namespace stopt
