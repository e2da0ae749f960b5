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

#include "stopt/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace stopt {

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::L2:
      return "l2";
    case LossKind::SmoothL1:
      return "smooth_l1";
    case LossKind::Huber:
      return "huber";
    case LossKind::PseudoHuber:
      return "pseudo_huber";
  }
  throw std::logic_error("unknown LossKind");
}

LossKind loss_kind_from_string(const std::string& name) {
  if (name == "l2") return LossKind::L2;
  if (name == "smooth_l1") return LossKind::SmoothL1;
  if (name == "huber") return LossKind::Huber;
  if (name == "pseudo_huber") return LossKind::PseudoHuber;
  throw std::invalid_argument("unknown loss kind '" + name +
                              "' (expected l2, smooth_l1, huber or pseudo_huber)");
}

LossSpec make_loss_spec(LossKind kind, double beta, double lambda) {
  LossSpec spec{kind, kind == LossKind::L2 ? 1.0 : beta, lambda};
  validate_loss_spec(spec);
  return spec;
}

void validate_loss_spec(const LossSpec& spec) {
  if (!std::isfinite(spec.beta) || !std::isfinite(spec.lambda)) {
    throw std::invalid_argument("loss spec: beta/lambda must be finite");
  }
  if (spec.lambda < 0.0) {
    throw std::invalid_argument("loss spec: lambda must be >= 0");
  }
  if (spec.kind != LossKind::L2 && spec.beta <= 0.0) {
    throw std::invalid_argument("loss spec: beta must be > 0");
  }
}

namespace {

void check_input(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("loss: non-finite input");
  }
}

}  // namespace

double loss_value(const LossSpec& spec, double x) {
  check_input(x);
  const double ax = std::abs(x);
  const double b = spec.beta;
  switch (spec.kind) {
    case LossKind::L2:
      return x * x;
    case LossKind::SmoothL1:
      return ax <= b ? 0.5 * x * x / b : ax - 0.5 * b;
    case LossKind::Huber:
      return ax <= b ? 0.5 * x * x : b * (ax - 0.5 * b);
    case LossKind::PseudoHuber: {
      const double r = x / b;
      return b * b * (std::sqrt(1.0 + r * r) - 1.0);
    }
  }
  throw std::logic_error("unknown LossKind");
}

double loss_grad(const LossSpec& spec, double x) {
  check_input(x);
  const double ax = std::abs(x);
  const double b = spec.beta;
  const double sgn = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  switch (spec.kind) {
    case LossKind::L2:
      return 2.0 * x;
    case LossKind::SmoothL1:
      return ax <= b ? x / b : sgn;
    case LossKind::Huber:
      return ax <= b ? x : b * sgn;
    case LossKind::PseudoHuber: {
      const double r = x / b;
      return x / std::sqrt(1.0 + r * r);
    }
  }
  throw std::logic_error("unknown LossKind");
}

double loss_hess(const LossSpec& spec, double x) {
  check_input(x);
  const double ax = std::abs(x);
  const double b = spec.beta;
  switch (spec.kind) {
    case LossKind::L2:
      return 2.0;
    case LossKind::SmoothL1:
      return ax <= b ? 1.0 / b : 0.0;
    case LossKind::Huber:
      return ax <= b ? 1.0 : 0.0;
    case LossKind::PseudoHuber: {
      const double r = x / b;
      return std::pow(1.0 + r * r, -1.5);
    }
  }
  throw std::logic_error("unknown LossKind");
}

LossEval loss_vector(const LossSpec& spec, const Eigen::VectorXd& u) {
  validate_loss_spec(spec);
  LossEval out;
  out.grad.resize(u.size());
  out.hess_diag.resize(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    out.value += loss_value(spec, u[i]);
    out.grad[i] = loss_grad(spec, u[i]);
    out.hess_diag[i] = loss_hess(spec, u[i]);
  }
  return out;
}

}  // namespace stopt
