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
 * @brief Monte Carlo oracle for the extremes of noncolliding diffusions.
 *
 * Paths are generated on a uniform time grid by an exact per-step sampler of
 * the conditioned (Doob-transformed) process: a Gaussian proposal around the
 * Brownian-bridge mean, shifted along grad log of the harmonic function, and
 * accepted with probability
 *     [h-ratio against its tangent bound] x [noncollision probability of the
 *                                            free bridges over the step].
 * Processes pinned at the origin start from an exact draw of the fixed-time
 * eigenvalue law (GUE or class C); free-endpoint processes draw the endpoint
 * (GOE or a real Wishart law) and are run backwards as bridges to the origin.
 * Extremes between grid points use the exact maximum of a Brownian bridge.
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "noncoll/extremes.hpp"

namespace noncoll {

/// Philox4x32-10 counter-based generator (Salmon et al.).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// Independent stream for one (seed, sample index) pair.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();

 private:
  void refill();

  Philox4x32::Key key_;
  Philox4x32::Counter ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int avail_ = 0;
  std::optional<double> spare_;
};

enum class Statistic { L, R, H, W };

const char* to_string(Statistic s);
std::optional<Statistic> parse_statistic(const std::string& name);
bool statistic_defined(ProcessTag tag, Statistic s);

struct ExtremeRecord {
  double L;  // minimum of the lowest path
  double R;  // maximum of the highest path (the height H for type C)
  double W;  // R - L
};

struct SamplerOptions {
  unsigned threads = 1;
  /// Swaps the roles of the top and bottom paths and negates the driving noise,
  /// sampling the reflected ensemble x -> -x from the same streams.
  bool mirror = false;
  /// Grid index whose configuration is recorded per sample (0 = none).
  int snapshot_step = 0;
};

struct PathEnsemble {
  ProcessTag kind;
  int N;
  double T;
  int steps;
  double dt;
  std::uint64_t accepted;   // completed samples
  std::uint64_t attempted;  // proposals drawn over all steps
  std::uint64_t seed;
  std::vector<ExtremeRecord> extremes;
  std::vector<std::vector<double>> snapshots;
};

inline constexpr int kMaxSampledParticles = 4;
inline constexpr int kMinSteps = 64;
inline constexpr std::uint64_t kMaxProposalsPerStep = 10'000'000;

/// Samples `target_accepted` paths of the limit process `kind` (origin start).
/// Deterministic in (seed, target_accepted, steps); independent of threads.
PathEnsemble sample_bridge_ensemble(const ProcessKind& kind, int N, double T, int steps,
                                    std::uint64_t target_accepted, std::uint64_t seed,
                                    const SamplerOptions& options = {});

struct EmpiricalCdf {
  std::vector<double> grid;
  std::vector<double> estimates;
  std::vector<double> half_widths;  // 99% normal-approximation band
  std::uint64_t n_samples;
};

EmpiricalCdf empirical_cdf(const PathEnsemble& ensemble, Statistic statistic, const std::vector<double>& grid);

/// Values of `statistic` over the ensemble, in sample order.
std::vector<double> statistic_values(const PathEnsemble& ensemble, Statistic statistic);

}  // namespace noncoll
