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

#ifndef STOPT_PROBLEM_HPP_
#define STOPT_PROBLEM_HPP_

#include <memory>

#include "stopt/costs.hpp"
#include "stopt/dynamics.hpp"

namespace stopt {

/// A fixed-horizon shooting problem: model, costs, initial state, and the
/// number of state knots (controls: horizon - 1). Immutable during a
/// solve; copies share the model.
struct Problem {
  std::shared_ptr<const SystemModel> model;
  CostBundle cost;
  Eigen::VectorXd x0;
  int horizon = 0;

  void validate() const;
};

}  // namespace stopt

#endif  // STOPT_PROBLEM_HPP_
