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
 * @brief Scalar special functions: Hermite polynomials, the Hermite-theta
 * lattice sums Theta_k(u, v) = sum_n H_k(u n + v) exp(-(u n + v)^2), the
 * error-function integral Psi, the wall double integral Psi(u1, u2), and the
 * Riemann zeta / xi functions.
 *
 * Everything here is templated on the real scalar so the distribution
 * formulas can run in extended precision.
 */

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "noncoll/error.hpp"
#include "noncoll/quad.hpp"

namespace noncoll {

/// Highest Hermite order handled by the batched theta evaluators.
inline constexpr int kMaxThetaOrder = 47;

template <typename Scalar>
using ThetaVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, kMaxThetaOrder + 1, 1>;

template <typename Scalar>
struct SeriesValue {
  Scalar value;
  Scalar tail_bound;  // bound on the discarded remainder
  int terms_used;
};

/// Theta_0..Theta_kmax evaluated in one pass.
template <typename Scalar>
struct ThetaSeries {
  ThetaVector<Scalar> values;
  Scalar tail_bound;  // max over orders
  int terms_used;
};

enum class ThetaMethod {
  Auto,     // lattice sum for u >= sqrt(pi), Poisson-dual sum otherwise
  Lattice,  // the defining sum over n
  Poisson,  // the Fourier-dual sum over m
};

/// H_k(x) by the three-term recurrence H_{k+1} = 2x H_k - 2k H_{k-1}.
template <typename Scalar>
Scalar hermite(int k, Scalar x) {
  if (k < 0) throw Error(ErrorKind::DomainError, "hermite: negative order");
  Scalar h0 = 1;
  if (k == 0) return h0;
  Scalar h1 = 2 * x;
  for (int j = 1; j < k; ++j) {
    const Scalar h2 = 2 * x * h1 - 2 * Scalar(j) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

namespace detail {

// log of Cramer's constant times sqrt(2^k k!): |H_k(x)| exp(-x^2/2) <= that.
inline double log_cramer_bound(int k) {
  return std::log(1.086435) + 0.5 * (k * std::log(2.0) + std::lgamma(k + 1.0));
}

template <typename Scalar>
ThetaSeries<Scalar> theta_lattice(int kmax, Scalar u, Scalar v, double tol) {
  // Theta is u-periodic in v; center the sum at the lattice point nearest -v.
  const Scalar n0 = std::round(-v / u);
  const Scalar shift = u * n0 + v;  // in [-u/2, u/2]
  ThetaVector<Scalar> acc = ThetaVector<Scalar>::Zero(kmax + 1);
  ThetaVector<Scalar> h(kmax + 1), pair(kmax + 1);

  auto term = [&](Scalar x, ThetaVector<Scalar>& out) {
    const Scalar g = std::exp(-x * x);
    Scalar h0 = g;
    out[0] = h0;
    if (kmax == 0) return;
    Scalar h1 = 2 * x * g;
    out[1] = h1;
    for (int j = 1; j < kmax; ++j) {
      const Scalar h2 = 2 * x * h1 - 2 * Scalar(j) * h0;
      h0 = h1;
      h1 = h2;
      out[j + 1] = h1;
    }
  };

  term(shift, acc);
  int terms = 1;
  const double logc = log_cramer_bound(kmax);
  const double ud = static_cast<double>(u);
  auto side_bound = [&](double x0) {
    // sum_{j>=0} exp(-(x0 + j u)^2 / 2) <= exp(-x0^2/2) / (1 - exp(-u x0))
    if (x0 <= 0) return std::numeric_limits<double>::infinity();
    const double q = std::exp(-ud * x0);
    return std::exp(logc - 0.5 * x0 * x0) / (1.0 - q);
  };
  double upper = 0, lower = 0;
  for (int j = 1;; ++j) {
    const double xu = static_cast<double>(shift) + ud * j;
    const double xl = -(static_cast<double>(shift) - ud * j);
    upper = side_bound(xu);
    lower = side_bound(xl);
    const bool up_done = upper <= tol / 2;
    const bool low_done = lower <= tol / 2;
    if (up_done && low_done) break;
    if (j > 1000000) throw Error(ErrorKind::ToleranceNotMet, "theta: lattice sum did not converge");
    pair.setZero();
    if (!up_done) {
      term(shift + u * Scalar(j), h);
      pair += h;
      ++terms;
    }
    if (!low_done) {
      term(shift - u * Scalar(j), h);
      pair += h;
      ++terms;
    }
    acc += pair;
  }
  return {acc, static_cast<Scalar>(upper + lower), terms};
}

template <typename Scalar>
ThetaSeries<Scalar> theta_poisson(int kmax, Scalar u, Scalar v, double tol) {
  // Theta_k(u, v) = (sqrt(pi)/u) (2 pi/u)^k sum_m (-i m)^k exp(-pi^2 m^2/u^2 + 2 pi i m v/u)
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar vr = v - u * std::round(v / u);
  const Scalar a = pi * pi / (u * u);
  const Scalar log_pref0 = std::log(std::sqrt(pi) / u);
  const Scalar log_step = std::log(2 * pi / u);
  ThetaVector<Scalar> acc = ThetaVector<Scalar>::Zero(kmax + 1);
  acc[0] = std::exp(log_pref0);
  int terms = 1;
  double tail = 0;
  for (int m = 1;; ++m) {
    const Scalar lm = std::log(Scalar(m));
    const Scalar gauss = -a * Scalar(m) * Scalar(m);
    const Scalar phase = 2 * pi * Scalar(m) * vr / u;
    const Scalar c = 2 * std::cos(phase), s = 2 * std::sin(phase);
    for (int k = 0; k <= kmax; ++k) {
      const Scalar mag = std::exp(log_pref0 + Scalar(k) * (log_step + lm) + gauss);
      if (mag == 0) continue;
      // (-i)^k (e^{i phase} + (-1)^k e^{-i phase}) reduces to a signed cos or sin.
      const int r = k % 4;
      const Scalar trig = (r == 0) ? c : (r == 1) ? s : (r == 2) ? -c : -s;
      acc[k] += mag * trig;
    }
    terms += 2;
    // Tail majorant for every order, geometric from the next term.
    double worst = 0;
    const double ad = static_cast<double>(a);
    bool decreasing = true;
    for (int k = 0; k <= kmax; ++k) {
      const double next = m + 1.0;
      const double log_next = static_cast<double>(log_pref0) +
                              k * (static_cast<double>(log_step) + std::log(next)) -
                              ad * next * next;
      const double q = std::pow((next + 1.0) / next, k) * std::exp(-ad * (2.0 * next + 1.0));
      if (q >= 1.0) {
        decreasing = false;
        break;
      }
      worst = std::max(worst, 2.0 * std::exp(log_next) / (1.0 - q));
    }
    if (decreasing && worst <= tol) {
      tail = worst;
      break;
    }
    if (m > 1000000) throw Error(ErrorKind::ToleranceNotMet, "theta: dual sum did not converge");
  }
  return {acc, static_cast<Scalar>(tail), terms};
}

}  // namespace detail

/// Theta_0(u, v), ..., Theta_kmax(u, v) sharing one lattice (or dual) sweep.
template <typename Scalar>
ThetaSeries<Scalar> theta_all(int kmax, Scalar u, Scalar v, double tol = kDefaultTolerance,
                              ThetaMethod method = ThetaMethod::Auto) {
  if (!(u > 0)) throw Error(ErrorKind::NonPositivePeriod, "theta: period u must be positive");
  if (kmax < 0 || kmax > kMaxThetaOrder) throw Error(ErrorKind::DomainError, "theta: order out of range");
  if (!(tol > 0)) throw Error(ErrorKind::DomainError, "theta: tol must be positive");
  if (method == ThetaMethod::Auto) {
    method = (u >= std::sqrt(std::numbers::pi_v<Scalar>)) ? ThetaMethod::Lattice : ThetaMethod::Poisson;
  }
  return method == ThetaMethod::Lattice ? detail::theta_lattice(kmax, u, v, tol)
                                        : detail::theta_poisson(kmax, u, v, tol);
}

template <typename Scalar>
SeriesValue<Scalar> theta(int k, Scalar u, Scalar v, double tol = kDefaultTolerance,
                          ThetaMethod method = ThetaMethod::Auto) {
  if (k < 0) throw Error(ErrorKind::DomainError, "theta: negative order");
  const auto all = theta_all(k, u, v, tol, method);
  return {all.values[k], all.tail_bound, all.terms_used};
}

/// Nonvanishing component of sum_n n^k exp(-pi n^2/eta^2 + 2 pi i xi n/eta^2):
/// the real part for even k, the imaginary part for odd k.
template <typename Scalar>
SeriesValue<Scalar> poisson_lhs(int k, Scalar eta, Scalar xi, double tol = kDefaultTolerance) {
  if (!(eta > 0)) throw Error(ErrorKind::NonPositivePeriod, "poisson_lhs: eta must be positive");
  if (k < 0) throw Error(ErrorKind::DomainError, "poisson_lhs: negative order");
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar a = pi / (eta * eta);
  const Scalar w = 2 * pi * xi / (eta * eta);
  Scalar sum = (k == 0) ? Scalar(1) : Scalar(0);
  int terms = 1;
  double tail = 0;
  for (int n = 1;; ++n) {
    const Scalar nn = Scalar(n);
    const Scalar g = std::pow(nn, k) * std::exp(-a * nn * nn);
    // n and -n combine to 2 cos (even k) or 2 i sin (odd k).
    sum += (k % 2 == 0) ? 2 * g * std::cos(w * nn) : 2 * g * std::sin(w * nn);
    terms += 2;
    const double next = n + 1.0;
    const double ad = static_cast<double>(a);
    const double q = std::pow((next + 1.0) / next, k) * std::exp(-ad * (2.0 * next + 1.0));
    if (q < 1.0) {
      tail = 2.0 * std::pow(next, k) * std::exp(-ad * next * next) / (1.0 - q);
      if (tail <= tol) break;
    }
    if (n > 1000000) throw Error(ErrorKind::ToleranceNotMet, "poisson_lhs did not converge");
  }
  return {sum, static_cast<Scalar>(tail), terms};
}

/// Psi(u) = 2/sqrt(pi) int_0^u exp(-v^2) dv, i.e. erf(u).
template <typename Scalar>
Scalar psi(Scalar u) {
  return std::erf(u);
}

namespace detail {

template <typename Scalar, typename F>
Scalar oriented_integral(F&& f, Scalar a, Scalar b, Scalar tol) {
  if (a == b) return Scalar(0);
  if (a < b) return integrate_1d(f, a, b, tol).value;
  return -integrate_1d(f, b, a, tol).value;
}

}  // namespace detail

/// Psi(u1, u2): the wall-chamber double integral entering the type-C survival pfaffian.
///
/// (2/pi) [ int_0^{u1} dv1 int_{u1-u2}^{u2-u1} dv2 e^{-v1^2-(v1-v2)^2}
///        - int_{u1}^{u2} dv1 int_{u2-u1}^{u1+u2} dv2 e^{-v1^2-(v1-v2)^2} ]
/// Both iterated integrals are evaluated by nested adaptive quadrature.
template <typename Scalar>
Scalar psi2(Scalar u1, Scalar u2, Scalar tol = Scalar(kDefaultTolerance)) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  auto density = [](Scalar v1, Scalar v2) { return std::exp(-v1 * v1 - (v1 - v2) * (v1 - v2)); };
  auto inner = [&](Scalar lo, Scalar hi) {
    return [=, &density](Scalar v1) {
      return detail::oriented_integral([&](Scalar v2) { return density(v1, v2); }, lo, hi, tol / 8);
    };
  };
  const Scalar first = detail::oriented_integral(inner(u1 - u2, u2 - u1), Scalar(0), u1, tol / 4);
  const Scalar second = detail::oriented_integral(inner(u2 - u1, u1 + u2), u1, u2, tol / 4);
  return 2 / pi * (first - second);
}

/// Riemann zeta for real m > 1: direct sum to 10^6 plus Euler-Maclaurin tail.
double riemann_zeta(double m);

/// xi(m) = m (m - 1) pi^{-m/2} Gamma(m/2) zeta(m) / 2 for real m > 1.
double riemann_xi(double m);

}  // namespace noncoll
