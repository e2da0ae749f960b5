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

#ifndef STOPT_TRAJECTORY_HPP_
#define STOPT_TRAJECTORY_HPP_

#include <Eigen/Core>
#include <vector>

namespace stopt {

/// N state knots paired with N-1 controls and the timestep between knots.
struct Trajectory {
  std::vector<Eigen::VectorXd> xs;
  std::vector<Eigen::VectorXd> us;
  double dt = 0.0;

  int knots() const { return static_cast<int>(xs.size()); }
};

}  // namespace stopt

#endif  // STOPT_TRAJECTORY_HPP_
