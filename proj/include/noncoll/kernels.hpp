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
 * @brief Transition kernels of one-dimensional Brownian motion (free,
 * absorbed at 0, absorbed at both ends of an interval), their Karlin-McGregor
 * determinants, and the Weyl-chamber survival probabilities.
 */

#pragma once

#include <Eigen/Core>

#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "noncoll/error.hpp"
#include "noncoll/matalg.hpp"
#include "noncoll/specfun.hpp"

namespace noncoll {

enum class Chamber { TypeA, TypeC };

/// A point of the Weyl chamber W^A_N (strictly increasing) or W^C_N
/// (strictly increasing and positive).
class OrderedConfiguration {
 public:
  OrderedConfiguration(Chamber chamber, std::vector<double> coords);

  Chamber chamber() const { return chamber_; }
  int size() const { return static_cast<int>(coords_.size()); }
  const std::vector<double>& coords() const { return coords_; }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

  template <typename Scalar>
  VectorX<Scalar> as_vector() const {
    VectorX<Scalar> v(size());
    for (int i = 0; i < size(); ++i) v[i] = static_cast<Scalar>(coords_[static_cast<std::size_t>(i)]);
    return v;
  }

 private:
  Chamber chamber_;
  std::vector<double> coords_;
};

/// Absorbing walls at `left` and `right` and the time horizon of the process.
struct IntervalGeometry {
  double left;
  double right;
  double duration;

  static IntervalGeometry make(double left, double right, double duration);
  double width() const { return right - left; }
};

template <typename Scalar>
Scalar heat_kernel(Scalar t, Scalar y, Scalar x) {
  if (!(t > 0)) throw Error(ErrorKind::NonPositiveTime, "heat_kernel: t must be positive");
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar d = x - y;
  return std::exp(-d * d / (2 * t)) / std::sqrt(2 * pi * t);
}

/// p(t, y|x) - p(t, y|-x), written as p(t, y|x) (1 - exp(-2xy/t)) so it keeps
/// full relative precision near the wall.
template <typename Scalar>
Scalar absorbing_halfline(Scalar t, Scalar y, Scalar x) {
  if (!(t > 0)) throw Error(ErrorKind::NonPositiveTime, "absorbing_halfline: t must be positive");
  if (!(x > 0) || !(y > 0)) throw Error(ErrorKind::DomainError, "absorbing_halfline: x, y must be positive");
  return heat_kernel(t, y, x) * -std::expm1(-2 * x * y / t);
}

enum class IntervalSeries { Auto, Spectral, Images };

/// Crossover time (width/pi)^2 between the image and sine series.
inline double interval_crossover_time(double width) {
  return width * width / (std::numbers::pi * std::numbers::pi);
}

/// Density of Brownian motion killed at either end of (left, right).
///
/// Sine series for t >= (width/pi)^2, method of images below it; each is
/// truncated once its tail is below tol times the natural kernel scale.
template <typename Scalar>
Scalar absorbing_interval(Scalar t, Scalar y, Scalar x, Scalar left, Scalar right,
                          IntervalSeries series = IntervalSeries::Auto,
                          Scalar tol = std::numeric_limits<Scalar>::epsilon()) {
  if (!(t > 0)) throw Error(ErrorKind::NonPositiveTime, "absorbing_interval: t must be positive");
  if (!(left < x && x < right && left < y && y < right)) {
    throw Error(ErrorKind::OutOfInterval, "absorbing_interval: x and y must lie strictly inside the interval");
  }
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar w = right - left;
  if (series == IntervalSeries::Auto) {
    series = (t >= Scalar(interval_crossover_time(static_cast<double>(w)))) ? IntervalSeries::Spectral
                                                                             : IntervalSeries::Images;
  }
  const Scalar xs = x - left, ys = y - left;
  if (series == IntervalSeries::Spectral) {
    const Scalar c = pi * pi * t / (2 * w * w);
    Scalar sum = 0;
    for (int n = 1;; ++n) {
      const Scalar nn = Scalar(n);
      sum += std::exp(-c * nn * nn) * std::sin(pi * xs * nn / w) * std::sin(pi * ys * nn / w);
      const Scalar next = nn + 1;
      const Scalar q = std::exp(-c * (2 * next + 1));
      if (q < Scalar(0.5) && std::exp(-c * next * next) / (1 - q) <= tol) break;
      if (n > 10000000) throw Error(ErrorKind::ToleranceNotMet, "absorbing_interval: sine series");
    }
    return 2 / w * sum;
  }
  const Scalar norm = 1 / std::sqrt(2 * pi * t);
  // Pair the direct image at y - x + 2nw with its reflection through `left`.
  auto pair = [&](int n) {
    const Scalar a = ys - xs + 2 * Scalar(n) * w;
    const Scalar c = -2 * xs * (ys + 2 * Scalar(n) * w) / t;
    if (c > 0) {
      const Scalar b = ys + xs + 2 * Scalar(n) * w;
      return norm * (std::exp(-a * a / (2 * t)) - std::exp(-b * b / (2 * t)));
    }
    return norm * std::exp(-a * a / (2 * t)) * -std::expm1(c);
  };
  Scalar sum = pair(0);
  for (int n = 1;; ++n) {
    sum += pair(n) + pair(-n);
    // Every later image sits at distance >= 2 n w from y.
    const Scalar d = 2 * Scalar(n) * w;
    if (n >= 2 && 8 * std::exp(-d * d / (2 * t)) <= tol) break;
    if (n > 10000000) throw Error(ErrorKind::ToleranceNotMet, "absorbing_interval: image series");
  }
  return sum;
}

template <typename Scalar>
Scalar absorbing_interval(Scalar t, Scalar y, Scalar x, const IntervalGeometry& geom,
                          IntervalSeries series = IntervalSeries::Auto) {
  return absorbing_interval<Scalar>(t, y, x, Scalar(geom.left), Scalar(geom.right), series);
}

enum class KernelKind { Free, HalfLine, Interval };

struct KernelSelector {
  KernelKind kind = KernelKind::Free;
  double left = 0;
  double right = 0;

  static KernelSelector free() { return {KernelKind::Free, 0, 0}; }
  static KernelSelector half_line() { return {KernelKind::HalfLine, 0, 0}; }
  static KernelSelector interval(const IntervalGeometry& g) { return {KernelKind::Interval, g.left, g.right}; }
};

template <typename Scalar>
Scalar kernel_value(const KernelSelector& k, Scalar t, Scalar y, Scalar x) {
  switch (k.kind) {
    case KernelKind::Free: return heat_kernel(t, y, x);
    case KernelKind::HalfLine: return absorbing_halfline(t, y, x);
    case KernelKind::Interval: return absorbing_interval(t, y, x, Scalar(k.left), Scalar(k.right));
  }
  return Scalar(0);
}

void check_km_arguments(const OrderedConfiguration& to, const OrderedConfiguration& from,
                        const KernelSelector& kernel);

/// Signed log of det[p(t, to_i | from_j)].
template <typename Scalar>
SignedLog<Scalar> log_km_determinant(Scalar t, const OrderedConfiguration& to, const OrderedConfiguration& from,
                                     const KernelSelector& kernel) {
  if (!(t > 0)) throw Error(ErrorKind::NonPositiveTime, "km_determinant: t must be positive");
  check_km_arguments(to, from, kernel);
  const int n = to.size();
  MatrixX<Scalar> m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = kernel_value<Scalar>(kernel, t, Scalar(to[i]), Scalar(from[j]));
    }
  }
  auto det = log_determinant(m);
  // Karlin-McGregor: the determinant is a (sub-)probability density.
  assert(det.sign >= 0 || det.log_abs < std::log(Scalar(1e-13)) + std::log(m.cwiseAbs().maxCoeff()));
  return det;
}

double km_determinant(double t, const OrderedConfiguration& to, const OrderedConfiguration& from,
                      const KernelSelector& kernel);

/// Probability that N independent Brownian motions started at x stay ordered up to time s.
double survival_A(double s, const OrderedConfiguration& x);

/// As survival_A, with an additional absorbing wall at the origin.
double survival_C(double s, const OrderedConfiguration& x, double tol = kDefaultTolerance);

/// Assembles the survival pfaffian for W^A in extended precision.
SignedLog<long double> log_survival_A(long double s, const OrderedConfiguration& x);
SignedLog<long double> log_survival_C(long double s, const OrderedConfiguration& x, long double tol);

}  // namespace noncoll
