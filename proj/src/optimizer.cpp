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

#include "vqss/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace vqss::opt {

namespace {

std::string describe(const Point& p, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "objective returned " << value << " at (";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

// Simplex of d+1 vertices. Storage slots stay put; `order_` ranks them by
// value. A running coordinate sum gives the centroid in O(d).
class Simplex {
 public:
  Simplex(const Objective& f, std::vector<Point> vertices,
          std::int64_t& evaluations)
      : f_(f), d_(vertices.front().size()), evaluations_(evaluations) {
    coords_.reserve((d_ + 1) * d_);
    for (const auto& v : vertices) coords_.insert(coords_.end(), v.begin(), v.end());
    values_.resize(d_ + 1);
    order_.resize(d_ + 1);
    std::iota(order_.begin(), order_.end(), 0);
    for (std::size_t k = 0; k <= d_; ++k) values_[k] = eval(slot(k));
    recompute_sum();
    sort();
  }

  std::size_t dim() const { return d_; }
  std::span<const double> vertex(std::size_t rank) const { return slot(order_[rank]); }
  double value(std::size_t rank) const { return values_[order_[rank]]; }

  double eval(std::span<const double> x) {
    const double v = f_(x);
    ++evaluations_;
    if (!std::isfinite(v)) throw NonFiniteObjective(Point(x.begin(), x.end()), v);
    return v;
  }

  void replace_worst(std::span<const double> x, double v) {
    auto w = slot(order_[d_]);
    for (std::size_t i = 0; i < d_; ++i) {
      sum_[i] += x[i] - w[i];
      w[i] = x[i];
    }
    values_[order_[d_]] = v;
    if (++updates_since_sum_ >= d_) recompute_sum();
  }

  void shrink_towards_best(double sigma) {
    const auto best = slot(order_[0]);
    for (std::size_t k = 1; k <= d_; ++k) {
      auto v = slot(order_[k]);
      for (std::size_t i = 0; i < d_; ++i) v[i] = best[i] + sigma * (v[i] - best[i]);
      values_[order_[k]] = eval(v);
    }
    recompute_sum();
  }

  // Stable, so vertices with equal values keep their previous ranking.
  void sort() {
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return values_[a] < values_[b]; });
  }

  double coordinate_spread() const {
    double spread = 0.0;
    const auto best = vertex(0);
    for (std::size_t k = 1; k <= d_; ++k) {
      const auto v = vertex(k);
      for (std::size_t i = 0; i < d_; ++i) spread = std::max(spread, std::abs(v[i] - best[i]));
    }
    return spread;
  }

  double value_spread() const {
    double spread = 0.0;
    for (std::size_t k = 1; k <= d_; ++k) spread = std::max(spread, std::abs(value(k) - value(0)));
    return spread;
  }

  // Mean of every vertex except the worst.
  void centroid(std::vector<double>& out) const {
    const auto w = vertex(d_);
    out.resize(d_);
    for (std::size_t i = 0; i < d_; ++i) out[i] = (sum_[i] - w[i]) / static_cast<double>(d_);
  }

 private:
  std::span<double> slot(std::size_t s) { return {coords_.data() + s * d_, d_}; }
  std::span<const double> slot(std::size_t s) const { return {coords_.data() + s * d_, d_}; }

  void recompute_sum() {
    sum_.assign(d_, 0.0);
    for (std::size_t s = 0; s <= d_; ++s) {
      const auto v = slot(s);
      for (std::size_t i = 0; i < d_; ++i) sum_[i] += v[i];
    }
    updates_since_sum_ = 0;
  }

  const Objective& f_;
  std::size_t d_;
  std::int64_t& evaluations_;
  std::vector<double> coords_;
  std::vector<double> values_;
  std::vector<std::size_t> order_;
  std::vector<double> sum_;
  std::size_t updates_since_sum_ = 0;
};

// x = (1 + t) * centroid - t * worst
void along_line(const std::vector<double>& centroid, std::span<const double> worst,
                double t, std::vector<double>& out) {
  out.resize(centroid.size());
  for (std::size_t i = 0; i < centroid.size(); ++i) {
    out[i] = (1.0 + t) * centroid[i] - t * worst[i];
  }
}

}  // namespace

NmOptions NmOptions::with_default_cap(std::size_t dim) {
  NmOptions o;
  o.max_iterations = 200 * static_cast<std::int64_t>(dim);
  return o;
}

void NmOptions::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (max_evaluations < 0) throw std::invalid_argument("max_evaluations must be >= 0");
  if (!(reflection > 0.0)) throw std::invalid_argument("reflection must be > 0");
  if (!(expansion > std::max(1.0, reflection))) {
    throw std::invalid_argument("expansion must exceed max(1, reflection)");
  }
  if (!(contraction > 0.0 && contraction < 1.0)) {
    throw std::invalid_argument("contraction must lie in (0, 1)");
  }
  if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("shrink must lie in (0, 1)");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::MaxIterations: return "max_iterations";
    case Termination::Converged: return "converged";
    case Termination::EvaluationBudget: return "evaluation_budget";
  }
  return "unknown";
}

NonFiniteObjective::NonFiniteObjective(Point where, double value)
    : std::runtime_error(describe(where, value)), point_(std::move(where)) {}

std::vector<Point> initial_simplex(std::span<const double> x0) {
  if (x0.empty()) throw std::invalid_argument("initial_simplex: empty starting point");
  std::vector<Point> out;
  out.reserve(x0.size() + 1);
  out.emplace_back(x0.begin(), x0.end());
  for (std::size_t k = 0; k < x0.size(); ++k) {
    Point v(x0.begin(), x0.end());
    v[k] = v[k] != 0.0 ? 1.05 * v[k] : 0.00025;
    out.push_back(std::move(v));
  }
  return out;
}

NmOutcome nelder_mead(const Objective& objective, std::span<const double> x0,
                      const NmOptions& opts, const IterationCallback& on_iteration) {
  opts.validate();
  NmOutcome out;
  Simplex sim(objective, initial_simplex(x0), out.evaluations_used);
  const std::size_t d = sim.dim();
  const double rho = opts.reflection;
  const double chi = opts.expansion;
  const double psi = opts.contraction;
  const auto budget_allows_cycle = [&] {
    return opts.max_evaluations == 0 ||
           out.evaluations_used + static_cast<std::int64_t>(d) + 2 <= opts.max_evaluations;
  };

  std::vector<double> xbar, xr, xe, xc;
  out.termination = Termination::MaxIterations;
  while (out.iterations_used < opts.max_iterations) {
    if (sim.value_spread() <= opts.fatol && sim.coordinate_spread() <= opts.xatol) {
      out.termination = Termination::Converged;
      break;
    }
    if (!budget_allows_cycle()) {
      out.termination = Termination::EvaluationBudget;
      break;
    }
    sim.centroid(xbar);
    const auto worst = sim.vertex(d);
    along_line(xbar, worst, rho, xr);
    const double fr = sim.eval(xr);

    if (fr < sim.value(0)) {
      along_line(xbar, worst, rho * chi, xe);
      const double fe = sim.eval(xe);
      // Ties keep the reflected point.
      if (fe < fr) {
        sim.replace_worst(xe, fe);
      } else {
        sim.replace_worst(xr, fr);
      }
    } else if (fr <= sim.value(d - 1)) {
      sim.replace_worst(xr, fr);
    } else {
      bool shrink = false;
      if (fr < sim.value(d)) {
        along_line(xbar, worst, psi * rho, xc);
        const double fc = sim.eval(xc);
        if (fc <= fr) {
          sim.replace_worst(xc, fc);
        } else {
          shrink = true;
        }
      } else {
        along_line(xbar, worst, -psi, xc);
        const double fc = sim.eval(xc);
        if (fc < sim.value(d)) {
          sim.replace_worst(xc, fc);
        } else {
          shrink = true;
        }
      }
      if (shrink) sim.shrink_towards_best(opts.shrink);
    }
    sim.sort();
    ++out.iterations_used;
    out.history.push_back({out.iterations_used, sim.value(0)});
    if (on_iteration) on_iteration(out.iterations_used, sim.vertex(0), sim.value(0));
  }
  const auto best = sim.vertex(0);
  out.best_point.assign(best.begin(), best.end());
  out.best_value = sim.value(0);
  return out;
}

NmOutcome restarted_minimize(const Objective& objective, std::span<const double> x0,
                             const NmOptions& opts, int restarts,
                             const IterationCallback& on_iteration,
                             const RestartPoint& restart_point) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  NmOutcome total;
  Point start(x0.begin(), x0.end());
  bool have_best = false;

  for (int run = 0; run < restarts; ++run) {
    NmOptions run_opts = opts;
    if (opts.max_evaluations > 0) {
      run_opts.max_evaluations = opts.max_evaluations - total.evaluations_used;
      if (run_opts.max_evaluations < static_cast<std::int64_t>(start.size()) + 1) {
        total.termination = Termination::EvaluationBudget;
        break;
      }
    }
    const std::int64_t offset = total.iterations_used;
    const IterationCallback forward = [&](std::int64_t it, std::span<const double> best,
                                          double value) {
      // A re-randomized run may sit above the incumbent; report the incumbent.
      if (!on_iteration) return;
      if (have_best && total.best_value <= value) {
        on_iteration(offset + it, total.best_point, total.best_value);
      } else {
        on_iteration(offset + it, best, value);
      }
    };
    NmOutcome run_out = nelder_mead(objective, start, run_opts, forward);

    for (const auto& h : run_out.history) {
      const double v = have_best ? std::min(total.best_value, h.best_value) : h.best_value;
      total.history.push_back({offset + h.iteration, v});
    }
    total.iterations_used += run_out.iterations_used;
    total.evaluations_used += run_out.evaluations_used;
    total.termination = run_out.termination;
    if (!have_best || run_out.best_value < total.best_value) {
      total.best_value = run_out.best_value;
      total.best_point = std::move(run_out.best_point);
      have_best = true;
    }
    if (run_out.termination == Termination::EvaluationBudget) break;
    if (run + 1 < restarts) {
      start = restart_point ? restart_point(run + 1, total.best_point) : total.best_point;
    }
  }
  return total;
}

}  // namespace vqss::opt
