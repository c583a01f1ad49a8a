// Copyright 2026 The vqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vqss::opt {

using Point = std::vector<double>;
using Objective = std::function<double(std::span<const double>)>;

/// Called once per completed iteration with the incumbent best vertex.
using IterationCallback =
    std::function<void(std::int64_t iteration, std::span<const double> best,
                       double best_value)>;

/// Nelder-Mead settings. An iteration is one simplex update cycle, not one
/// objective evaluation.
struct NmOptions {
  std::int64_t max_iterations = 1000;
  /// Total objective evaluations allowed; 0 disables the limit.
  std::int64_t max_evaluations = 0;
  double xatol = 1e-8;
  double fatol = 1e-8;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;

  /// 200 * dim iterations, tolerances and coefficients at their defaults.
  static NmOptions with_default_cap(std::size_t dim);
  void validate() const;
};

enum class Termination { MaxIterations, Converged, EvaluationBudget };

const char* to_string(Termination t);

struct HistoryEntry {
  std::int64_t iteration;
  double best_value;
};

struct NmOutcome {
  Point best_point;
  double best_value = 0.0;
  std::int64_t iterations_used = 0;
  std::int64_t evaluations_used = 0;
  Termination termination = Termination::MaxIterations;
  std::vector<HistoryEntry> history;
};

/// The objective produced NaN or infinity.
class NonFiniteObjective : public std::runtime_error {
 public:
  NonFiniteObjective(Point where, double value);
  const Point& point() const { return point_; }

 private:
  Point point_;
};

/// Vertex 0 is x0; vertex k scales coordinate k-1 by 1.05, or sets it to
/// 0.00025 when it is zero.
std::vector<Point> initial_simplex(std::span<const double> x0);

/// Standard reflect / expand / contract / shrink iteration. Stops at
/// `max_iterations`, at the evaluation budget, or once the largest vertex
/// coordinate spread is <= xatol and the value spread is <= fatol.
NmOutcome nelder_mead(const Objective& objective, std::span<const double> x0,
                      const NmOptions& opts,
                      const IterationCallback& on_iteration = {});

/// Picks the starting point of restart `restart` (1-based) given the
/// incumbent best point.
using RestartPoint =
    std::function<Point(int restart, std::span<const double> incumbent)>;

/// Runs nelder_mead `restarts` times, each from a fresh simplex built around
/// the incumbent (or the point chosen by `restart_point`). Iteration numbers
/// in the merged history keep increasing across runs and `max_evaluations`
/// bounds the total.
NmOutcome restarted_minimize(const Objective& objective,
                             std::span<const double> x0, const NmOptions& opts,
                             int restarts,
                             const IterationCallback& on_iteration = {},
                             const RestartPoint& restart_point = {});

}  // namespace vqss::opt
