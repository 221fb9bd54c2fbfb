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

#include "noncoll/specfun.hpp"

#include <cmath>
#include <numbers>

namespace noncoll {

double riemann_zeta(double m) {
  if (!(m > 1)) throw Error(ErrorKind::DomainError, "riemann_zeta requires m > 1");
  constexpr long kTerms = 1000000;
  // Smallest terms first.
  long double sum = 0;
  for (long n = kTerms; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -static_cast<long double>(m));
  // Euler-Maclaurin remainder of sum_{n > K} n^{-m}.
  const long double k = kTerms;
  const long double lm = m;
  const long double tail = std::pow(k, 1 - lm) / (lm - 1) - std::pow(k, -lm) / 2 +
                           lm * std::pow(k, -lm - 1) / 12 -
                           lm * (lm + 1) * (lm + 2) * std::pow(k, -lm - 3) / 720;
  return static_cast<double>(sum + tail);
}

double riemann_xi(double m) {
  if (!(m > 1)) throw Error(ErrorKind::DomainError, "riemann_xi requires m > 1");
  const double pi = std::numbers::pi;
  return 0.5 * m * (m - 1) * std::pow(pi, -m / 2) * std::tgamma(m / 2) * riemann_zeta(m);
}

}  // namespace noncoll
