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

#ifndef STOPT_LOSS_HPP_
#define STOPT_LOSS_HPP_

#include <Eigen/Core>
#include <string>

namespace stopt {

/// Control-regularization penalty families. All of them are applied
/// coordinate-wise to control vectors; the sparsity-inducing ones switch
/// between a quadratic region near zero and a linear (or asymptotically
/// linear) region beyond the shape parameter beta.
enum class LossKind {
  L2,
  SmoothL1,
  Huber,
  PseudoHuber,
};

std::string to_string(LossKind kind);
LossKind loss_kind_from_string(const std::string& name);

/// A penalty instance: which family, the shape parameter beta (> 0) and the
/// strength weight lambda (>= 0). beta is meaningless for L2 and is stored
/// as 1. lambda is *not* applied by the loss_* functions below; the cost
/// assembler multiplies it in exactly once.
struct LossSpec {
  LossKind kind = LossKind::L2;
  double beta = 1.0;
  double lambda = 0.0;
};

LossSpec make_loss_spec(LossKind kind, double beta, double lambda);

/// Throws std::invalid_argument if the spec violates its invariants.
void validate_loss_spec(const LossSpec& spec);

/// Per-coordinate penalty value, without the lambda factor. Even in x,
/// zero at x = 0.
double loss_value(const LossSpec& spec, double x);

/// First derivative. Odd in x; at the SmoothL1/Huber kink |x| = beta the
/// quadratic-branch value is returned (it equals the left limit).
double loss_grad(const LossSpec& spec, double x);

/// Second derivative where it exists; quadratic-branch value at the kink.
/// Zero in the linear branch of SmoothL1/Huber, strictly positive for L2
/// and PseudoHuber.
double loss_hess(const LossSpec& spec, double x);

struct LossEval {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::VectorXd hess_diag;
};

/// Coordinate-wise evaluation over a control vector. The Hessian is
/// diagonal by construction and is returned as a vector.
LossEval loss_vector(const LossSpec& spec, const Eigen::VectorXd& u);

}  // namespace stopt

#endif  // STOPT_LOSS_HPP_
