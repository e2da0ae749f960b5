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

#ifndef STOPT_ANALYSIS_HPP_
#define STOPT_ANALYSIS_HPP_

#include <memory>
#include <string>
#include <vector>

#include "stopt/problem.hpp"
#include "stopt/solver.hpp"

namespace stopt {

/// Sparsity and artifact metrics of a control trajectory. A control scalar
/// counts as zero when it lies within [-beta, beta] (the same beta as the
/// loss); saturation counts scalars within 1e-6 of a finite bound; the
/// total variation sums absolute successive control changes and quantifies
/// rapid-switching artifacts. l1_norm is reported for reference only.
struct SparsityReport {
  int total_controls = 0;
  int zero_count = 0;
  double zero_fraction = 0.0;
  int bound_saturation_count = 0;
  double total_variation = 0.0;
  double final_task_cost = 0.0;
  double l1_norm = 0.0;
  double beta = 0.0;
};

SparsityReport sparsity_report(const Trajectory& traj, double beta,
                               const Eigen::VectorXd& lower, const Eigen::VectorXd& upper,
                               double final_task_cost);

struct SweepSpec {
  std::vector<LossKind> losses;
  std::vector<double> betas;
  std::vector<double> lambdas;
};

struct SweepCell {
  LossKind loss = LossKind::L2;
  double beta = 0.0;
  double lambda = 0.0;
  bool solved = false;  // solve ran without throwing
  bool converged = false;
  int iterations = 0;
  double wall_ms = 0.0;
  double final_cost = 0.0;
  SparsityReport report;
  std::string error;
};

struct SweepGrid {
  SweepSpec spec;
  std::vector<SweepCell> cells;  // loss-major, then beta, then lambda

  const SweepCell& at(size_t loss, size_t beta, size_t lambda) const;
};

/// Solve every (loss, beta, lambda) cell of the grid independently from
/// zero initial controls. Cells are distributed over `jobs` worker threads;
/// results are keyed by grid indices so the outcome is identical for any
/// job count, and nothing in the pipeline draws random numbers. Failures
/// are recorded in the cell, not thrown.
SweepGrid run_sweep(const Problem& base, const SolverConfig& solver_config,
                    const SweepSpec& spec, int jobs = 1);

struct TrendStats {
  double largest_beta = 0.0;
  int pairs = 0;
  double zero_count_nondecreasing_fraction = 0.0;
  double task_cost_nondecreasing_fraction = 0.0;
};

/// Fraction of adjacent lambda pairs (at the largest beta in the grid)
/// where sparsity / final task cost do not decrease as lambda grows.
TrendStats lambda_trends(const SweepGrid& grid, LossKind kind);

struct TimingStats {
  LossKind loss = LossKind::L2;
  int runs = 0;
  double mean_iterations = 0.0;
  double median_iterations = 0.0;
  double mean_wall_ms = 0.0;
  double median_wall_ms = 0.0;
  std::vector<SweepCell> cells;
};

/// Convergence statistics per loss kind over a lambda grid at fixed beta.
/// Wall times are machine-local; callers report them, nothing asserts an
/// ordering.
std::vector<TimingStats> timing_report(const Problem& base, const SolverConfig& solver_config,
                                       const std::vector<LossKind>& losses,
                                       const std::vector<double>& lambdas, double beta = 1.0);

struct CheckEntry {
  std::string name;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct DerivativeReport {
  bool passed = false;
  std::vector<CheckEntry> entries;
  std::string worst_name;
  double worst_error = 0.0;

  std::string summary() const;
};

/// Validate every analytic derivative of the problem against central
/// finite differences at sampled points: loss gradient/Hessian, dynamics
/// Jacobians (analytic vs finite-difference mode), and cost derivatives.
/// Hessians of Gauss-Newton cost terms are exempt from the comparison.
/// Sampling uses a fixed seed, so the report is deterministic.
DerivativeReport check_derivatives(const Problem& problem, int samples = 20,
                                   unsigned seed = 12345);

/// Wraps a model and corrupts the analytic fx; exists to prove that
/// check_derivatives catches broken Jacobians.
class JacobianFaultModel : public SystemModel {
 public:
  explicit JacobianFaultModel(std::shared_ptr<const SystemModel> inner, double offset = 0.1);

  int nx() const override { return inner_->nx(); }
  int ndx() const override { return inner_->ndx(); }
  int nu() const override { return inner_->nu(); }
  double dt() const override { return inner_->dt(); }
  const Eigen::VectorXd& control_lower() const override { return inner_->control_lower(); }
  const Eigen::VectorXd& control_upper() const override { return inner_->control_upper(); }
  Eigen::VectorXd step(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override {
    return inner_->step(x, u);
  }
  StepJacobians jacobians(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const override;
  Eigen::VectorXd state_diff(const Eigen::VectorXd& x1, const Eigen::VectorXd& x0) const override {
    return inner_->state_diff(x1, x0);
  }
  Eigen::VectorXd integrate(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) const override {
    return inner_->integrate(x, dx);
  }
  Eigen::MatrixXd state_diff_jacobian(const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& ref) const override {
    return inner_->state_diff_jacobian(x, ref);
  }
  Eigen::VectorXd neutral_state() const override { return inner_->neutral_state(); }
  Eigen::VectorXd random_state(std::mt19937& rng) const override {
    return inner_->random_state(rng);
  }

 private:
  std::shared_ptr<const SystemModel> inner_;
  double offset_;
};

}  // namespace stopt

#endif  // STOPT_ANALYSIS_HPP_
