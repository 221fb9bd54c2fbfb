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

#include "noncoll/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <numbers>
#include <thread>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace noncoll {

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  constexpr std::uint32_t kMul0 = 0xD2511F53, kMul1 = 0xCD9E8D57;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9, kWeyl1 = 0xBB67AE85;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
    ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1), std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
           std::uint32_t(p0)};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index)
    : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
      ctr_{0, 0, std::uint32_t(index), std::uint32_t(index >> 32)} {}

void RandomStream::refill() {
  buf_ = Philox4x32::block(ctr_, key_);
  if (++ctr_[0] == 0) ++ctr_[1];
  avail_ = 4;
}

double RandomStream::uniform() {
  std::uint64_t bits = 0;
  for (int k = 0; k < 2; ++k) {
    if (avail_ == 0) refill();
    bits = (bits << 32) | buf_[static_cast<std::size_t>(4 - avail_--)];
  }
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = uniform(), u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = rad * std::sin(ang);
  return rad * std::cos(ang);
}

const char* to_string(Statistic s) {
  switch (s) {
    case Statistic::L: return "L";
    case Statistic::R: return "R";
    case Statistic::H: return "H";
    case Statistic::W: return "W";
  }
  return "?";
}

std::optional<Statistic> parse_statistic(const std::string& name) {
  for (auto s : {Statistic::L, Statistic::R, Statistic::H, Statistic::W}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

bool statistic_defined(ProcessTag tag, Statistic s) {
  return chamber_of(tag) == Chamber::TypeC ? s == Statistic::H : s != Statistic::H;
}

namespace {

using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxSampledParticles, kMaxSampledParticles>;
using State = std::array<double, kMaxSampledParticles>;

struct SampleResult {
  ExtremeRecord record;
  std::uint64_t proposals;
  std::vector<double> snapshot;
};

class PathSampler {
 public:
  PathSampler(ProcessTag tag, int n, double T, int steps, bool mirror, int snapshot_step)
      : tag_(tag), n_(n), T_(T), steps_(steps), dt_(T / steps), mirror_(mirror), snapshot_step_(snapshot_step),
        type_c_(chamber_of(tag) == Chamber::TypeC) {}

  SampleResult run(RandomStream& rng) const {
    SampleResult out{{0, 0, 0}, 0, {}};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    State x{};
    int k0;
    const bool reversed = tag_ == ProcessTag::MotionAR || tag_ == ProcessTag::MeanderCR;
    if (reversed) {
      draw_endpoint(rng, x);
      k0 = 0;
    } else {
      // Exact fixed-time marginal at t = dt, then the free-bridge extremes from the origin.
      draw_marginal(rng, sigma_bridge(dt_, T_) * sigma_bridge(dt_, T_), x);
      State origin{};
      track(rng, origin, x, lo, hi);
      k0 = 1;
    }
    record_snapshot(reversed, k0, x, out);
    for (int k = k0; k < steps_; ++k) {
      State y{};
      if (k + 1 < steps_) out.proposals += step(rng, k, x, y);
      track(rng, x, y, lo, hi);
      x = y;
      record_snapshot(reversed, k + 1, x, out);
    }
    out.record = {lo, hi, hi - lo};
    return out;
  }

 private:
  int index(int i) const { return mirror_ ? n_ - 1 - i : i; }

  void record_snapshot(bool reversed, int k, const State& x, SampleResult& out) const {
    if (snapshot_step_ <= 0) return;
    const int forward = reversed ? steps_ - k : k;
    if (forward != snapshot_step_) return;
    out.snapshot.assign(x.begin(), x.begin() + n_);
  }

  // Free Brownian-bridge extremes of the outer paths over one step.
  void track(RandomStream& rng, const State& a, const State& b, double& lo, double& hi) const {
    double u_top = rng.uniform(), u_bot = rng.uniform();
    if (mirror_) std::swap(u_top, u_bot);
    const int t = n_ - 1;
    const double gt = b[t] - a[t], gb = b[0] - a[0];
    hi = std::max(hi, (a[t] + b[t] + std::sqrt(gt * gt - 2 * dt_ * std::log(u_top))) / 2);
    // Type C: minimum of the bottom bridge conditioned to stay above the wall.
    const double log_bot =
        type_c_ ? std::log1p(u_bot * std::expm1(-2 * a[0] * b[0] / dt_)) : std::log(u_bot);
    lo = std::min(lo, (a[0] + b[0] - std::sqrt(gb * gb - 2 * dt_ * log_bot)) / 2);
  }

  void sorted_into(std::vector<double> ev, State& x) const {
    std::sort(ev.begin(), ev.end());
    for (int i = 0; i < n_; ++i) x[i] = ev[static_cast<std::size_t>(i)];
  }

  double sign() const { return mirror_ ? -1.0 : 1.0; }

  // GUE (type A) or class C (type C) eigenvalues with variance sigma2.
  void draw_marginal(RandomStream& rng, double sigma2, State& x) const {
    const double sd = std::sqrt(sigma2), sdh = std::sqrt(sigma2 / 2);
    using CMat = Eigen::MatrixXcd;
    auto hermitian = [&](CMat& a) {
      for (int i = 0; i < n_; ++i) {
        a(i, i) = sign() * sd * rng.normal();
        for (int j = i + 1; j < n_; ++j) {
          const double re = sign() * sdh * rng.normal(), im = sign() * sdh * rng.normal();
          a(i, j) = {re, im};
          a(j, i) = {re, -im};
        }
      }
    };
    CMat a(n_, n_);
    hermitian(a);
    if (!type_c_) {
      Eigen::SelfAdjointEigenSolver<CMat> es(a, Eigen::EigenvaluesOnly);
      sorted_into({es.eigenvalues().data(), es.eigenvalues().data() + n_}, x);
      return;
    }
    CMat b(n_, n_);
    for (int i = 0; i < n_; ++i) {
      b(i, i) = {sd * rng.normal(), sd * rng.normal()};
      for (int j = i + 1; j < n_; ++j) {
        b(i, j) = {sdh * rng.normal(), sdh * rng.normal()};
        b(j, i) = b(i, j);
      }
    }
    CMat h(2 * n_, 2 * n_);
    h.topLeftCorner(n_, n_) = a;
    h.topRightCorner(n_, n_) = b;
    h.bottomLeftCorner(n_, n_) = b.adjoint();
    h.bottomRightCorner(n_, n_) = -a.transpose();
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    sorted_into({es.eigenvalues().data() + n_, es.eigenvalues().data() + 2 * n_}, x);
  }

  // Time-T law of the free-endpoint processes: GOE (type A) or the square
  // roots of a real (N+1) x N Wishart spectrum (type C), both with variance T.
  void draw_endpoint(RandomStream& rng, State& x) const {
    const double sd = std::sqrt(T_), sdh = std::sqrt(T_ / 2);
    if (!type_c_) {
      Eigen::MatrixXd a(n_, n_);
      for (int i = 0; i < n_; ++i) {
        a(i, i) = sign() * sd * rng.normal();
        for (int j = i + 1; j < n_; ++j) a(i, j) = a(j, i) = sign() * sdh * rng.normal();
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
      sorted_into({es.eigenvalues().data(), es.eigenvalues().data() + n_}, x);
      return;
    }
    Eigen::MatrixXd g(n_ + 1, n_);
    for (int i = 0; i <= n_; ++i) {
      for (int j = 0; j < n_; ++j) g(i, j) = sd * rng.normal();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.transpose() * g, Eigen::EigenvaluesOnly);
    std::vector<double> ev(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) ev[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()[i]));
    sorted_into(std::move(ev), x);
  }

  bool in_chamber(const State& y) const {
    if (type_c_ && !(y[0] > 0)) return false;
    for (int i = 1; i < n_; ++i) {
      if (!(y[i - 1] < y[i])) return false;
    }
    return true;
  }

  double log_h(const State& y) const {
    double s = 0;
    for (int i = 0; i < n_; ++i) {
      if (type_c_) s += std::log(y[i]);
      for (int j = i + 1; j < n_; ++j) {
        s += std::log(y[j] - y[i]);
        if (type_c_) s += std::log(y[j] + y[i]);
      }
    }
    return s;
  }

  State grad_log_h(const State& m) const {
    State c{};
    for (int i = 0; i < n_; ++i) {
      double s = type_c_ ? 1.0 / m[i] : 0.0;
      for (int j = 0; j < n_; ++j) {
        if (j == i) continue;
        s += 1.0 / (m[i] - m[j]);
        if (type_c_) s += 1.0 / (m[i] + m[j]);
      }
      c[i] = s;
    }
    return c;
  }

  // Probability that free bridges from x to y over dt neither meet nor (type C) hit 0.
  double noncollision(const State& x, const State& y) const {
    if (n_ == 1 && !type_c_) return 1.0;
    SmallMat k(n_, n_);
    const double inv = 1.0 / (2 * dt_);
    for (int i = 0; i < n_; ++i) {
      const double d0 = (y[i] - x[i]) * (y[i] - x[i]);
      for (int j = 0; j < n_; ++j) {
        const double dm = (y[i] - x[j]) * (y[i] - x[j]);
        double v = std::exp((d0 - dm) * inv);
        if (type_c_) {
          const double dp = (y[i] + x[j]) * (y[i] + x[j]);
          v = (j == i) ? -std::expm1((d0 - dp) * inv) : v - std::exp((d0 - dp) * inv);
        }
        k(i, j) = v;
      }
    }
    if (n_ == 1) return k(0, 0);
    return Eigen::PartialPivLU<SmallMat>(k).determinant();
  }

  // Hessian of log h (negative definite on the chamber).
  SmallMat hess_log_h(const State& z) const {
    SmallMat hm = SmallMat::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) {
      if (type_c_) hm(i, i) -= 1.0 / (z[i] * z[i]);
      for (int j = 0; j < n_; ++j) {
        if (j == i) continue;
        const double a = 1.0 / ((z[i] - z[j]) * (z[i] - z[j]));
        hm(i, i) -= a;
        hm(i, j) += a;
        if (type_c_) {
          const double b = 1.0 / ((z[i] + z[j]) * (z[i] + z[j]));
          hm(i, i) -= b;
          hm(i, j) -= b;
        }
      }
    }
    return hm;
  }

  // Mode of N(m, v) x h by damped Newton on the convex |z - m|^2/(2v) - log h(z).
  State mode(const State& m, double v) const {
    State z = m;
    auto phi = [&](const State& w) {
      double q = 0;
      for (int i = 0; i < n_; ++i) q += (w[i] - m[i]) * (w[i] - m[i]);
      return q / (2 * v) - log_h(w);
    };
    double f = phi(z);
    for (int it = 0; it < 50; ++it) {
      const State g = grad_log_h(z);
      Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxSampledParticles, 1> grad(n_);
      for (int i = 0; i < n_; ++i) grad[i] = (z[i] - m[i]) / v - g[i];
      SmallMat hs = -hess_log_h(z);
      hs.diagonal().array() += 1.0 / v;
      const auto delta = hs.llt().solve(grad).eval();
      double t = 1;
      State trial{};
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, t /= 2) {
        for (int i = 0; i < n_; ++i) trial[i] = z[i] - t * delta[i];
        if (!in_chamber(trial)) continue;
        const double ft = phi(trial);
        if (ft <= f) {
          moved = true;
          break;
        }
      }
      if (!moved) break;
      double change = 0;
      for (int i = 0; i < n_; ++i) change = std::max(change, std::abs(trial[i] - z[i]));
      z = trial;
      f = phi(z);
      if (change <= 1e-12 * std::sqrt(v)) break;
    }
    return z;
  }

  std::uint64_t step(RandomStream& rng, int k, const State& x, State& y) const {
    const double s = T_ - k * dt_;
    const double s1 = T_ - (k + 1) * dt_;
    const double ratio = s1 / s;
    const double v = dt_ * ratio, sv = std::sqrt(v);
    State m{};
    for (int i = 0; i < n_; ++i) m[i] = x[i] * ratio;
    // log h lies below its tangent plane at z, so N(m, v) h is dominated by a
    // Gaussian with mean m + v grad log h(z).
    const State z = mode(m, v);
    const State c = grad_log_h(z);
    const double lhz = log_h(z);
    State mu{};
    for (int i = 0; i < n_; ++i) mu[i] = m[i] + v * c[i];
    std::uint64_t proposals = 0;
    std::array<double, kMaxSampledParticles> xi{};
    while (true) {
      if (++proposals > kMaxProposalsPerStep) {
        throw Error(ErrorKind::AcceptanceTooLow, "per-step acceptance fell below 1e-7");
      }
      for (int i = 0; i < n_; ++i) xi[static_cast<std::size_t>(index(i))] = sign() * rng.normal();
      const double u = rng.uniform();
      for (int i = 0; i < n_; ++i) y[i] = mu[i] + sv * xi[static_cast<std::size_t>(i)];
      if (!in_chamber(y)) continue;
      double lin = 0;
      for (int i = 0; i < n_; ++i) lin += c[i] * (y[i] - z[i]);
      const double a1 = std::exp(std::min(0.0, log_h(y) - lhz - lin));
      if (!(u < a1)) continue;
      if (u < a1 * noncollision(x, y)) return proposals;
    }
  }

  ProcessTag tag_;
  int n_;
  double T_;
  int steps_;
  double dt_;
  bool mirror_;
  int snapshot_step_;
  bool type_c_;
};

}  // namespace

PathEnsemble sample_bridge_ensemble(const ProcessKind& kind, int N, double T, int steps,
                                    std::uint64_t target_accepted, std::uint64_t seed,
                                    const SamplerOptions& options) {
  if (!is_limit_process(kind.tag)) {
    throw Error(ErrorKind::InvalidConfiguration, "the sampler covers the four limit processes");
  }
  if (N < 1) throw Error(ErrorKind::DomainError, "N must be at least 1");
  if (N > kMaxSampledParticles) throw Error(ErrorKind::DimensionTooLarge, "the sampler supports N <= 4");
  if (!(T > 0) || !std::isfinite(T)) throw Error(ErrorKind::NonPositiveTime, "T must be positive");
  if (steps < kMinSteps) throw Error(ErrorKind::DomainError, "steps must be at least 64");
  if (target_accepted < 1) throw Error(ErrorKind::DomainError, "target_accepted must be at least 1");
  if (options.snapshot_step < 0 || options.snapshot_step > steps) {
    throw Error(ErrorKind::OutOfWindow, "snapshot step lies outside the time grid");
  }
  if (options.mirror && chamber_of(kind.tag) == Chamber::TypeC) {
    throw Error(ErrorKind::InvalidConfiguration, "reflection applies to type A processes only");
  }

  const PathSampler sampler(kind.tag, N, T, steps, options.mirror, options.snapshot_step);
  std::vector<SampleResult> results(target_accepted);
  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(std::min<std::uint64_t>(target_accepted, 1024))));
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t i = w; i < target_accepted; i += threads) {
        RandomStream rng(seed, i);
        results[i] = sampler.run(rng);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  PathEnsemble ens{kind.tag, N, T, steps, T / steps, target_accepted, 0, seed, {}, {}};
  ens.extremes.reserve(target_accepted);
  for (auto& r : results) {
    ens.attempted += r.proposals;
    ens.extremes.push_back(r.record);
    if (options.snapshot_step > 0) ens.snapshots.push_back(std::move(r.snapshot));
  }
  ens.attempted = std::max(ens.attempted, ens.accepted);
  return ens;
}

std::vector<double> statistic_values(const PathEnsemble& ensemble, Statistic statistic) {
  if (!statistic_defined(ensemble.kind, statistic)) {
    throw Error(ErrorKind::StatisticUndefined,
                std::string("statistic ") + to_string(statistic) + " is not defined for " + to_string(ensemble.kind));
  }
  std::vector<double> out;
  out.reserve(ensemble.extremes.size());
  for (const auto& e : ensemble.extremes) {
    switch (statistic) {
      case Statistic::L: out.push_back(e.L); break;
      case Statistic::R:
      case Statistic::H: out.push_back(e.R); break;
      case Statistic::W: out.push_back(e.W); break;
    }
  }
  return out;
}

EmpiricalCdf empirical_cdf(const PathEnsemble& ensemble, Statistic statistic, const std::vector<double>& grid) {
  if (ensemble.extremes.empty()) throw Error(ErrorKind::DomainError, "empty ensemble");
  if (!std::is_sorted(grid.begin(), grid.end())) throw Error(ErrorKind::DomainError, "grid must be increasing");
  std::vector<double> vals = statistic_values(ensemble, statistic);
  std::sort(vals.begin(), vals.end());
  const double n = static_cast<double>(vals.size());
  EmpiricalCdf out{grid, {}, {}, vals.size()};
  for (double g : grid) {
    const auto below = std::lower_bound(vals.begin(), vals.end(), g) - vals.begin();
    const double p = static_cast<double>(below) / n;
    out.estimates.push_back(p);
    out.half_widths.push_back(2.576 * std::sqrt(p * (1 - p) / n));
  }
  return out;
}

}  // namespace noncoll
