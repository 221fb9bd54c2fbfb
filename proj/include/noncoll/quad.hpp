/*
 * Copyright 2026 The noncoll Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @brief Deterministic quadrature: adaptive Gauss-Kronrod on an interval and
 * tensorized Gauss-Kronrod over the ordered simplex {a < x1 < x2 < b}.
 *
 * Both integrators accept scalar- or Eigen-valued integrands; the error
 * estimate is measured in the max-norm of the value. Integrands may be
 * invoked from several threads when callers parallelize over integrals, so
 * they must not mutate shared state.
 */

#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

#include "noncoll/error.hpp"

namespace noncoll {

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr long kMaxPanels = 1L << 16;

template <typename Value, typename Real>
struct QuadResult {
  Value value;
  Real error_estimate;
  long evaluations;
};

namespace detail {

template <typename T, typename = void>
struct value_traits {
  using real = T;
  static real magnitude(const T& v) { using std::abs; return abs(v); }
  static T zero_like(const T&) { return T(0); }
};

template <typename T>
struct value_traits<T, std::void_t<typename T::Scalar, decltype(std::declval<T>().cwiseAbs())>> {
  using real = typename T::Scalar;
  static real magnitude(const T& v) { return v.size() == 0 ? real(0) : v.cwiseAbs().maxCoeff(); }
  static T zero_like(const T& v) { return T::Zero(v.rows(), v.cols()); }
};

// 15-point Kronrod abscissae on [-1, 1] (nonnegative half) with the embedded
// 7-point Gauss rule at the odd positions.
struct GaussKronrod15 {
  static constexpr std::array<long double, 8> nodes = {
      0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
      0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
      0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
      0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
  static constexpr std::array<long double, 8> kronrod = {
      0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
      0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
      0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
      0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
  // Gauss weights for nodes[1], nodes[3], nodes[5], nodes[7].
  static constexpr std::array<long double, 4> gauss = {
      0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
      0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

  // Full 15-node rule on [-1,1], ordered; gauss_weight is zero off the 7-point subset.
  struct Rule {
    std::array<long double, 15> x;
    std::array<long double, 15> wk;
    std::array<long double, 15> wg;
  };

  static const Rule& rule() {
    static const Rule r = [] {
      Rule out{};
      for (int i = 0; i < 7; ++i) {
        out.x[i] = -nodes[i];
        out.x[14 - i] = nodes[i];
        out.wk[i] = out.wk[14 - i] = kronrod[i];
        const long double g = (i % 2 == 1) ? gauss[i / 2] : 0.0L;
        out.wg[i] = out.wg[14 - i] = g;
      }
      out.x[7] = 0.0L;
      out.wk[7] = kronrod[7];
      out.wg[7] = gauss[3];
      return out;
    }();
    return r;
  }
};

template <typename Value, typename Real>
struct Panel {
  Real a, b;
  Value value;
  Real error;
  Real abs_value;
};

template <typename Real, typename F>
auto gk15_panel(F& f, Real a, Real b) {
  using Value = std::decay_t<decltype(f(a))>;
  using Traits = value_traits<Value>;
  const auto& rule = GaussKronrod15::rule();
  const Real half = (b - a) / 2;
  const Real mid = (a + b) / 2;
  Value first = f(mid + half * static_cast<Real>(rule.x[0]));
  Value kron = first * static_cast<Real>(rule.wk[0]);
  Value gauss = Traits::zero_like(first);
  Real abs_sum = Traits::magnitude(first) * static_cast<Real>(rule.wk[0]);
  for (int i = 1; i < 15; ++i) {
    const Value fx = f(mid + half * static_cast<Real>(rule.x[i]));
    kron += fx * static_cast<Real>(rule.wk[i]);
    if (rule.wg[i] != 0.0L) gauss += fx * static_cast<Real>(rule.wg[i]);
    abs_sum += Traits::magnitude(fx) * static_cast<Real>(rule.wk[i]);
  }
  kron *= half;
  gauss *= half;
  const Real err = Traits::magnitude(Value(kron - gauss));
  return Panel<Value, Real>{a, b, kron, err, abs_sum * std::abs(half)};
}

}  // namespace detail

/// Adaptive 15-point Gauss-Kronrod integration of f over [a, b].
///
/// Panels are bisected in order of decreasing local error until the summed
/// error estimate is below tol (or below the rounding floor of the integrand).
/// Throws ToleranceNotMet when the panel budget is exhausted.
template <typename Real, typename F>
auto integrate_1d(F&& f, Real a, Real b, Real tol = Real(kDefaultTolerance),
                  long max_panels = kMaxPanels) {
  using Value = std::decay_t<decltype(f(a))>;
  using Traits = detail::value_traits<Value>;
  using P = detail::Panel<Value, Real>;
  if (!(a <= b)) throw Error(ErrorKind::DomainError, "integrate_1d requires a <= b");
  if (!(tol > 0)) throw Error(ErrorKind::DomainError, "integrate_1d requires tol > 0");

  auto cmp = [](const P& x, const P& y) { return x.error < y.error; };
  std::priority_queue<P, std::vector<P>, decltype(cmp)> heap(cmp);
  P first = detail::gk15_panel(f, a, b);
  if (a == b) return QuadResult<Value, Real>{Traits::zero_like(first.value), Real(0), 15};

  Value total = first.value;
  Real total_err = first.error;
  Real total_abs = first.abs_value;
  long panels = 1;
  long evaluations = 15;
  heap.push(first);
  const Real eps = std::numeric_limits<Real>::epsilon();

  auto converged = [&] {
    return total_err <= tol || total_err <= 64 * eps * total_abs;
  };
  while (!converged()) {
    if (panels >= max_panels) {
      throw Error(ErrorKind::ToleranceNotMet,
                  "integrate_1d: panel budget exhausted with error estimate " +
                      std::to_string(static_cast<double>(total_err)));
    }
    P worst = heap.top();
    heap.pop();
    const Real mid = (worst.a + worst.b) / 2;
    if (!(worst.a < mid && mid < worst.b)) {
      // Panel cannot be split further in this precision; accept it.
      total_err -= worst.error;
      worst.error = 0;
      heap.push(worst);
      continue;
    }
    P left = detail::gk15_panel(f, worst.a, mid);
    P right = detail::gk15_panel(f, mid, worst.b);
    evaluations += 30;
    ++panels;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum panel values to shed the drift of the running total.
  Value sum = Traits::zero_like(total);
  Real err = 0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return QuadResult<Value, Real>{sum, std::max(err, Real(0)), evaluations};
}

/// Integral over the ordered simplex {a < x1 < x2 < b} of g(x1, x2).
///
/// The simplex is mapped onto the unit square by x1 = a + s(b - a),
/// x2 = x1 + t(b - x1); cells of the square are integrated with the tensor
/// 15x15 Kronrod rule and the embedded 7x7 Gauss rule as error estimate, and
/// split into quadrants while the summed error exceeds tol.
template <typename Real, typename G>
auto integrate_ordered_2d(G&& g, Real a, Real b, Real tol = Real(kDefaultTolerance),
                          long max_cells = kMaxPanels) {
  using Value = std::decay_t<decltype(g(a, b))>;
  using Traits = detail::value_traits<Value>;
  if (!(a <= b)) throw Error(ErrorKind::DomainError, "integrate_ordered_2d requires a <= b");
  if (!(tol > 0)) throw Error(ErrorKind::DomainError, "integrate_ordered_2d requires tol > 0");

  const auto& rule = detail::GaussKronrod15::rule();
  struct Cell {
    Real s0, s1, t0, t1;
    Value value;
    Real error;
    Real abs_value;
  };
  auto eval_cell = [&](Real s0, Real s1, Real t0, Real t1) {
    const Real hs = (s1 - s0) / 2, ms = (s0 + s1) / 2;
    const Real ht = (t1 - t0) / 2, mt = (t0 + t1) / 2;
    Value kron{}, gauss{};
    Real abs_sum = 0;
    bool init = false;
    for (int i = 0; i < 15; ++i) {
      const Real s = ms + hs * static_cast<Real>(rule.x[i]);
      const Real x1 = a + s * (b - a);
      const Real jac = (b - a) * (b - x1);
      for (int j = 0; j < 15; ++j) {
        const Real t = mt + ht * static_cast<Real>(rule.x[j]);
        const Real x2 = x1 + t * (b - x1);
        const Value gx = g(x1, x2) * jac;
        if (!init) {
          kron = Traits::zero_like(gx);
          gauss = Traits::zero_like(gx);
          init = true;
        }
        const Real wk = static_cast<Real>(rule.wk[i] * rule.wk[j]);
        kron += gx * wk;
        const long double wg = rule.wg[i] * rule.wg[j];
        if (wg != 0.0L) gauss += gx * static_cast<Real>(wg);
        abs_sum += Traits::magnitude(gx) * wk;
      }
    }
    const Real area = hs * ht;
    kron *= area;
    gauss *= area;
    const Real err = Traits::magnitude(Value(kron - gauss));
    return Cell{s0, s1, t0, t1, kron, err, abs_sum * area};
  };

  auto cmp = [](const Cell& x, const Cell& y) { return x.error < y.error; };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> heap(cmp);
  Cell root = eval_cell(Real(0), Real(1), Real(0), Real(1));
  if (a == b) return QuadResult<Value, Real>{Traits::zero_like(root.value), Real(0), 225};
  Real total_err = root.error, total_abs = root.abs_value;
  long cells = 1, evaluations = 225;
  heap.push(root);
  const Real eps = std::numeric_limits<Real>::epsilon();
  while (!(total_err <= tol || total_err <= 64 * eps * total_abs)) {
    if (cells >= max_cells) {
      throw Error(ErrorKind::ToleranceNotMet,
                  "integrate_ordered_2d: cell budget exhausted with error estimate " +
                      std::to_string(static_cast<double>(total_err)));
    }
    Cell c = heap.top();
    heap.pop();
    const Real sm = (c.s0 + c.s1) / 2, tm = (c.t0 + c.t1) / 2;
    const Cell kids[4] = {eval_cell(c.s0, sm, c.t0, tm), eval_cell(sm, c.s1, c.t0, tm),
                          eval_cell(c.s0, sm, tm, c.t1), eval_cell(sm, c.s1, tm, c.t1)};
    evaluations += 4 * 225;
    cells += 3;
    total_err -= c.error;
    total_abs -= c.abs_value;
    for (const Cell& k : kids) {
      total_err += k.error;
      total_abs += k.abs_value;
      heap.push(k);
    }
  }
  Value sum = Traits::zero_like(root.value);
  Real err = 0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return QuadResult<Value, Real>{sum, std::max(err, Real(0)), evaluations};
}

}  // namespace noncoll
