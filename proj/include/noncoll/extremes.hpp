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
 * @brief Distribution functions of the extremes of noncolliding diffusions.
 *
 * Four limit processes started (and, for bridges, ended) at the origin:
 *   - BridgeAA   noncolliding Brownian bridges,     joint law of (L, R)
 *   - MotionAR   noncolliding Brownian motion,      joint law of (L, R)
 *   - BesselCC   noncolliding 3d Bessel bridges,    law of the height H
 *   - MeanderCR  noncolliding Brownian meanders,    law of the height H
 * plus the general-endpoint versions, evaluated as ratios of Karlin-McGregor
 * determinants (fixed end point) or of chamber integrals over survival
 * probabilities (free end point).
 *
 * All CDFs depend on the geometry only through length / sqrt(T).
 */

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "noncoll/kernels.hpp"

namespace noncoll {

enum class ProcessTag {
  BridgeAA,
  MotionAR,
  BesselCC,
  MeanderCR,
  GeneralABA,
  GeneralARA,
  GeneralABC,
  GeneralARC,
};

const char* to_string(ProcessTag tag);
std::optional<ProcessTag> parse_process_tag(const std::string& name);
Chamber chamber_of(ProcessTag tag);
bool is_limit_process(ProcessTag tag);

/// A process together with its endpoint configurations (General* tags only;
/// the free-endpoint tags use `start` alone).
struct ProcessKind {
  ProcessTag tag;
  std::optional<OrderedConfiguration> start;
  std::optional<OrderedConfiguration> end;

  static ProcessKind limit(ProcessTag tag);
  static ProcessKind fixed_ends(ProcessTag tag, OrderedConfiguration start, OrderedConfiguration end);
  static ProcessKind free_end(ProcessTag tag, OrderedConfiguration start);
};

/// Largest N accepted by the theta-series formulas.
inline constexpr int kMaxParticles = 10;
/// Largest N accepted by the chamber-integral ratio formulas.
inline constexpr int kMaxChamberParticles = 3;

struct CdfParams {
  int N;
  double T;
  IntervalGeometry geometry;
};

struct CdfEvaluation {
  double value;           // clamped to [0, 1]
  double raw;             // as assembled
  double error_estimate;  // truncation + quadrature + rounding
  CdfParams params;
};

double sigma_bridge(double t, double T);

/// Eigenvalue density of GUE with variance sigma2 on W^A_N.
double gue_density(const OrderedConfiguration& x, double sigma2);

/// Positive-eigenvalue density of the class C ensemble with variance sigma2 on W^C_N.
double classC_density(const OrderedConfiguration& x, double sigma2);

/// P(-ell < L, R < r) for noncolliding Brownian bridges (determinant of theta values).
CdfEvaluation cdf_bridge_joint_LR(int N, double T, double ell, double r, double tol = kDefaultTolerance);

/// P(-ell < L, R < r) for noncolliding Brownian motion (pfaffian of theta integrals).
CdfEvaluation cdf_motion_joint_LR(int N, double T, double ell, double r, double tol = kDefaultTolerance);

/// P(H < h) for noncolliding Bessel bridges.
CdfEvaluation cdf_bessel_H(int N, double T, double h, double tol = kDefaultTolerance);

/// P(H < h) for noncolliding Brownian meanders.
CdfEvaluation cdf_meander_H(int N, double T, double h, double tol = kDefaultTolerance);

/// Exact ratio formulas for prescribed endpoints; geometry.duration must equal T.
CdfEvaluation cdf_general(const ProcessKind& kind, const IntervalGeometry& geometry, int N, double T,
                          double tol = kDefaultTolerance);

/// P(W < w) with W = R - L for noncolliding Brownian bridges.
CdfEvaluation cdf_width(int N, double T, double w, double tol = 1e-10);

/// E[H^m] for a single Bessel bridge (closed form through xi(m)).
double height_moment_n1(double m, double T);

/// E[H^m] for a single Bessel bridge integrated from its CDF,
/// int_0^inf m h^{m-1} (1 - F(h)) dh.
double height_moment_from_cdf(double m, double T, double tol = 1e-12);

/// Checks that the assembled closed-form values are positive at a reference point
/// for every supported N; throws NumericalFailure otherwise. Run once lazily
/// by the CDF entry points.
void verify_sign_conventions();

/// Evaluates fn over args on `threads` workers; output order follows args.
template <typename Result>
std::vector<Result> evaluate_grid(const std::vector<double>& args, const std::function<Result(double)>& fn,
                                  unsigned threads = 1) {
  std::vector<Result> out(args.size());
  std::vector<std::exception_ptr> errors(args.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(args.size())));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < args.size(); i += threads) {
      try {
        out[i] = fn(args[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace noncoll
