// Copyright 2026 The qlangevin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature for vector-valued
// integrands. Panels start at the caller's breakpoints; the panel with the
// largest weighted error is bisected until every component meets its
// tolerance or the subdivision budget runs out.

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <queue>
#include <span>
#include <vector>

namespace qlangevin {

struct AdaptiveOptions {
  double rel_tol = 1e-6;
  int max_subdivisions = 20000;
  /// Per-component magnitude the error is measured against. Defaults to
  /// |value| when empty.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> reference;
  /// Components whose reference falls below this are treated as this large.
  double abs_floor = 1e-300;
};

struct AdaptiveResult {
  Eigen::VectorXd value;
  Eigen::VectorXd error;
  int evaluations = 0;
  int panels = 0;
  bool converged = false;
  /// max_c error_c / reference_c; below rel_tol when converged.
  double achieved_rel_error = 0.0;
};

namespace detail {

struct KronrodRule {
  std::array<double, 8> x;   // nodes: x[7] == 0
  std::array<double, 8> wk;  // Kronrod weights
  std::array<double, 4> wg;  // Gauss weights for x[1], x[3], x[5], x[7]
};

const KronrodRule& kronrod15();

struct Panel {
  double a = 0.0;
  double b = 0.0;
  Eigen::VectorXd value;
  Eigen::VectorXd error;
  double score = 0.0;
};

template <class F>
void evaluate_panel(F& f, Panel& p, int& evaluations) {
  const KronrodRule& r = kronrod15();
  const double c = 0.5 * (p.a + p.b);
  const double h = 0.5 * (p.b - p.a);
  Eigen::VectorXd centre = f(c);
  Eigen::VectorXd kron = r.wk[7] * centre;
  Eigen::VectorXd gauss = r.wg[3] * centre;
  for (int j = 0; j < 7; ++j) {
    const Eigen::VectorXd lo = f(c - h * r.x[j]);
    const Eigen::VectorXd hi = f(c + h * r.x[j]);
    kron += r.wk[j] * (lo + hi);
    if (j % 2 == 1) gauss += r.wg[j / 2] * (lo + hi);
  }
  evaluations += 15;
  p.value = h * kron;
  p.error = (h * (kron - gauss)).cwiseAbs();
}

inline Eigen::VectorXd reference_of(const AdaptiveOptions& opt,
                                    const Eigen::VectorXd& total) {
  Eigen::VectorXd ref = opt.reference ? opt.reference(total) : total.cwiseAbs();
  return ref.cwiseMax(opt.abs_floor);
}

inline double score_of(const Eigen::VectorXd& error, const Eigen::VectorXd& ref) {
  return (error.array() / ref.array()).maxCoeff();
}

}  // namespace detail

/// Integrates f over [breakpoints.front(), breakpoints.back()]. f maps a
/// double to an Eigen::VectorXd of fixed length `dim`. Breakpoints must be
/// ascending; endpoints are never evaluated.
template <class F>
AdaptiveResult integrate_adaptive(F&& f, int dim,
                                  std::span<const double> breakpoints,
                                  const AdaptiveOptions& opt) {
  using detail::Panel;
  AdaptiveResult out;
  out.value = Eigen::VectorXd::Zero(dim);
  out.error = Eigen::VectorXd::Zero(dim);

  auto cmp = [](const Panel& l, const Panel& r) { return l.score < r.score; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);

  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    Panel p{breakpoints[i], breakpoints[i + 1], {}, {}, 0.0};
    detail::evaluate_panel(f, p, out.evaluations);
    out.value += p.value;
    out.error += p.error;
    heap.push(std::move(p));
  }
  // Rescore against the first full estimate.
  {
    const Eigen::VectorXd ref = detail::reference_of(opt, out.value);
    std::vector<Panel> panels;
    while (!heap.empty()) {
      panels.push_back(heap.top());
      heap.pop();
    }
    for (auto& p : panels) {
      p.score = detail::score_of(p.error, ref);
      heap.push(std::move(p));
    }
  }

  int subdivisions = 0;
  while (!heap.empty()) {
    const Eigen::VectorXd ref = detail::reference_of(opt, out.value);
    out.achieved_rel_error = detail::score_of(out.error, ref);
    if (out.achieved_rel_error <= opt.rel_tol) {
      out.converged = true;
      break;
    }
    if (subdivisions >= opt.max_subdivisions) break;

    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel is at machine resolution; keep its estimate and stop refining it.
      worst.score = 0.0;
      heap.pop();
      heap.push(std::move(worst));
      if (heap.top().score == 0.0) break;
      continue;
    }
    heap.pop();
    Panel left{worst.a, mid, {}, {}, 0.0};
    Panel right{mid, worst.b, {}, {}, 0.0};
    detail::evaluate_panel(f, left, out.evaluations);
    detail::evaluate_panel(f, right, out.evaluations);
    out.value += left.value + right.value - worst.value;
    out.error += left.error + right.error - worst.error;
    out.error = out.error.cwiseMax(0.0);
    left.score = detail::score_of(left.error, ref);
    right.score = detail::score_of(right.error, ref);
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++subdivisions;
  }

  // Resum to remove drift from the incremental updates.
  out.value.setZero();
  out.error.setZero();
  out.panels = static_cast<int>(heap.size());
  while (!heap.empty()) {
    out.value += heap.top().value;
    out.error += heap.top().error;
    heap.pop();
  }
  const Eigen::VectorXd ref = detail::reference_of(opt, out.value);
  out.achieved_rel_error = detail::score_of(out.error, ref);
  out.converged = out.achieved_rel_error <= opt.rel_tol;
  return out;
}

/// Scalar convenience wrapper.
template <class F>
AdaptiveResult integrate_adaptive_scalar(F&& f, std::span<const double> breakpoints,
                                         const AdaptiveOptions& opt) {
  auto vf = [&f](double x) {
    Eigen::VectorXd v(1);
    v(0) = f(x);
    return v;
  };
  return integrate_adaptive(vf, 1, breakpoints, opt);
}

}  // namespace qlangevin
