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

#include "noncoll/kernels.hpp"

#include <cmath>
#include <string>

namespace noncoll {

OrderedConfiguration::OrderedConfiguration(Chamber chamber, std::vector<double> coords)
    : chamber_(chamber), coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorKind::InvalidConfiguration, "configuration needs at least one point");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i])) throw Error(ErrorKind::InvalidConfiguration, "non-finite coordinate");
    if (i > 0 && !(coords_[i - 1] < coords_[i])) {
      throw Error(ErrorKind::InvalidConfiguration, "coordinates must be strictly increasing");
    }
  }
  if (chamber_ == Chamber::TypeC && !(coords_.front() > 0)) {
    throw Error(ErrorKind::InvalidConfiguration, "type C configurations must be positive");
  }
}

IntervalGeometry IntervalGeometry::make(double left, double right, double duration) {
  if (!(left < right)) throw Error(ErrorKind::DomainError, "interval requires left < right");
  if (!(duration > 0)) throw Error(ErrorKind::NonPositiveTime, "duration must be positive");
  return {left, right, duration};
}

void check_km_arguments(const OrderedConfiguration& to, const OrderedConfiguration& from,
                        const KernelSelector& kernel) {
  if (to.chamber() != from.chamber() || to.size() != from.size()) {
    throw Error(ErrorKind::ChamberMismatch, "endpoint configurations differ in chamber or size");
  }
  if (kernel.kind == KernelKind::HalfLine && to.chamber() != Chamber::TypeC) {
    throw Error(ErrorKind::ChamberMismatch, "half-line kernel needs type C configurations");
  }
  if (kernel.kind == KernelKind::Interval) {
    for (const auto* c : {&to, &from}) {
      if (!(c->coords().front() > kernel.left && c->coords().back() < kernel.right)) {
        throw Error(ErrorKind::OutOfInterval, "configuration leaves the absorbing interval");
      }
    }
  }
}

double km_determinant(double t, const OrderedConfiguration& to, const OrderedConfiguration& from,
                      const KernelSelector& kernel) {
  return static_cast<double>(log_km_determinant<long double>(t, to, from, kernel).value());
}

SignedLog<long double> log_survival_A(long double s, const OrderedConfiguration& x) {
  if (!(s > 0)) throw Error(ErrorKind::NonPositiveTime, "survival_A: s must be positive");
  if (x.chamber() != Chamber::TypeA) throw Error(ErrorKind::ChamberMismatch, "survival_A needs a type A point");
  const int n = x.size();
  // Entries erf((x_j - x_i) / (2 sqrt(s))): the no-crossing probability of one pair.
  const long double scale = 2 * std::sqrt(s);
  MatrixX<long double> core(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) core(i, j) = psi<long double>((x[j] - x[i]) / scale);
  }
  const VectorX<long double> border = VectorX<long double>::Ones(n);
  return log_pfaffian(pad_skew(core, border));
}

SignedLog<long double> log_survival_C(long double s, const OrderedConfiguration& x, long double tol) {
  if (!(s > 0)) throw Error(ErrorKind::NonPositiveTime, "survival_C: s must be positive");
  if (x.chamber() != Chamber::TypeC) throw Error(ErrorKind::ChamberMismatch, "survival_C needs a type C point");
  const int n = x.size();
  const long double scale = std::sqrt(2 * s);
  VectorX<long double> y(n);
  for (int i = 0; i < n; ++i) y[i] = x[i] / scale;
  MatrixX<long double> core = MatrixX<long double>::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      core(i, j) = psi2<long double>(y[i], y[j], tol);
      core(j, i) = -core(i, j);
    }
  }
  VectorX<long double> border(n);
  for (int i = 0; i < n; ++i) border[i] = psi<long double>(y[i]);
  return log_pfaffian(pad_skew(core, border));
}

double survival_A(double s, const OrderedConfiguration& x) {
  return static_cast<double>(log_survival_A(s, x).value());
}

double survival_C(double s, const OrderedConfiguration& x, double tol) {
  return static_cast<double>(log_survival_C(s, x, tol).value());
}

}  // namespace noncoll
