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

#include "noncoll/extremes.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include <Eigen/LU>

#include "noncoll/specfun.hpp"

namespace noncoll {

namespace {

using Real = long double;
using Mat = MatrixX<Real>;
using Vec = VectorX<Real>;

constexpr Real kPi = std::numbers::pi_v<Real>;
constexpr double kClampSlack = 1e-9;
constexpr double kRawLimit = 1e-6;

void check_common(int N, double T, int max_n) {
  if (N < 1) throw Error(ErrorKind::DomainError, "N must be at least 1");
  if (N > max_n) throw Error(ErrorKind::DimensionTooLarge, "N = " + std::to_string(N) + " exceeds the supported range");
  if (!(T > 0) || !std::isfinite(T)) throw Error(ErrorKind::NonPositiveTime, "T must be positive");
}

void check_length(double x, const char* name) {
  if (!(x > 0) || !std::isfinite(x)) throw Error(ErrorKind::DomainError, std::string(name) + " must be positive");
}

// sum_{k=1}^{N} log Gamma(c k)
Real log_gamma_product(int N, Real c) {
  Real s = 0;
  for (int k = 1; k <= N; ++k) s += std::lgamma(c * Real(k));
  return s;
}

CdfEvaluation finish(Real raw_l, Real err_l, int N, double T, IntervalGeometry g) {
  const double raw = static_cast<double>(raw_l);
  double err = static_cast<double>(err_l);
  if (!std::isfinite(raw) || raw < -kRawLimit || raw > 1 + kRawLimit) {
    throw Error(ErrorKind::NumericalFailure,
                "assembled CDF value " + std::to_string(raw) + " lies outside [0, 1] beyond rounding");
  }
  const double value = std::clamp(raw, 0.0, 1.0);
  if (std::abs(raw - value) > kClampSlack + err) err = std::abs(raw - value);
  return {value, raw, err, {N, T, g}};
}

// First-order perturbation of det M under entrywise errors delta:
// |d det| <= |det| sum_ij |(M^{-1})_ji| delta, plus a rounding term for the
// factorization of the equilibrated matrix E = D_r^{-1} M D_c^{-1}.
Real det_error(const Mat& m, Real det_abs, Real delta) {
  const Eigen::Index n = m.rows();
  Vec rs = Vec::Ones(n), cs = Vec::Ones(n);
  Mat e = m;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Real s = e.row(i).cwiseAbs().maxCoeff();
    if (s > 0) e.row(i) /= rs[i] = s;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const Real s = e.col(j).cwiseAbs().maxCoeff();
    if (s > 0) e.col(j) /= cs[j] = s;
  }
  Eigen::PartialPivLU<Mat> lu(e);
  const Mat inv = lu.inverse();
  if (!inv.allFinite()) return std::numeric_limits<Real>::infinity();
  Real sens = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) sens += std::abs(inv(j, i)) / (rs[i] * cs[j]);
  }
  const Real cond = e.cwiseAbs().rowwise().sum().maxCoeff() * inv.cwiseAbs().rowwise().sum().maxCoeff();
  return det_abs * (sens * delta + Real(16) * n * std::numeric_limits<Real>::epsilon() * cond);
}

// Same bound for the pfaffian: d Pf = Pf tr(A^{-1} dA) / 2.
Real pf_error(const Mat& a, Real pf_abs, Real delta) {
  return det_error(a, pf_abs, delta) / 2;
}

// Equilibrates rows and columns; returns log of the removed scale.
Real equilibrate(Mat& m) {
  Real log_scale = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const Real s = m.row(i).cwiseAbs().maxCoeff();
    if (s > 0) {
      m.row(i) /= s;
      log_scale += std::log(s);
    }
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const Real s = m.col(j).cwiseAbs().maxCoeff();
    if (s > 0) {
      m.col(j) /= s;
      log_scale += std::log(s);
    }
  }
  return log_scale;
}

Real theta_tol(double tol) { return static_cast<Real>(std::min(tol, 1e-3) * 1e-3); }

CdfEvaluation bridge_impl(int N, double T, double ell, double r, double tol) {
  check_common(N, T, kMaxParticles);
  check_length(ell, "ell");
  check_length(r, "r");
  const Real s = std::sqrt(Real(2) * T);
  const Real u = 2 * (Real(ell) + Real(r)) / s;
  const Real v = 2 * Real(ell) / s;
  const auto tv = theta_all<Real>(2 * N - 2, u, v, static_cast<double>(theta_tol(tol)));
  const auto t0 = theta_all<Real>(2 * N - 2, u, Real(0), static_cast<double>(theta_tol(tol)));
  Mat raw(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const Real sign = ((j + 1) % 2 == 0) ? 1 : -1;
      raw(i, j) = tv.values[i + j] + sign * t0.values[i + j];
    }
  }
  Mat m = raw;
  const Real log_scale = equilibrate(m);
  const auto det = log_determinant(m);
  const Real log_pref = Real(N) * (N - 1) / 2 * std::log(Real(2)) + log_gamma_product(N, 1);
  const int sign = (N % 2 == 0 ? 1 : -1) * det.sign;
  const Real det_abs = det.sign == 0 ? Real(0) : std::exp(det.log_abs + log_scale);
  const Real err = std::exp(-log_pref) * det_error(raw, det_abs, tv.tail_bound + t0.tail_bound);
  const Real mag = det_abs * std::exp(-log_pref);
  return finish(Real(sign) * mag, err, N, T, IntervalGeometry{-ell, r, T});
}

CdfEvaluation bessel_impl(int N, double T, double h, double tol) {
  check_common(N, T, kMaxParticles);
  check_length(h, "h");
  const Real u = 2 * Real(h) / std::sqrt(Real(2) * T);
  const auto th = theta_all<Real>(4 * N - 2, u, Real(0), static_cast<double>(theta_tol(tol)));
  Mat m(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) m(i, j) = th.values[2 * (i + j + 1)];
  }
  const Mat raw = m;
  const Real log_scale = equilibrate(m);
  const auto det = log_determinant(m);
  const Real log_pref = Real(N) * N * std::log(Real(2)) + log_gamma_product(N, 2);
  const int sign = (N % 2 == 0 ? 1 : -1) * det.sign;
  const Real det_abs = det.sign == 0 ? Real(0) : std::exp(det.log_abs + log_scale);
  const Real err = std::exp(-log_pref) * det_error(raw, det_abs, th.tail_bound);
  return finish(Real(sign) * det_abs * std::exp(-log_pref), err, N, T, IntervalGeometry{0, h, T});
}

// de Bruijn: int_{a < x_1 < ... < x_N < b} det[z_i(x_j)] dx = Pf of the padded
// matrix of single and ordered double integrals of z.
struct ChamberIntegral {
  SignedLog<Real> value;
  Real error;
};

template <typename Z>
ChamberIntegral de_bruijn(Z&& z, Real a, Real b, double tol) {
  // Normalize each component by a sampled sup-norm so the quadrature error is
  // comparable across entries; Pf(D A D) = det(D) Pf(A).
  Vec scale = Vec::Zero(Vec(z(a + (b - a) / 2)).size());
  for (int k = 1; k < 32; ++k) scale = scale.cwiseMax(Vec(z(a + (b - a) * k / 32)).cwiseAbs());
  for (Eigen::Index i = 0; i < scale.size(); ++i) {
    if (!(scale[i] > 0)) scale[i] = 1;
  }
  const Vec inv_scale = scale.cwiseInverse();
  auto zn = [&](Real x) { return Vec(Vec(z(x)).cwiseProduct(inv_scale)); };
  // At least as strict as tol in the original units for every component.
  const Real ntol = Real(tol) / scale.maxCoeff();
  const auto single = integrate_1d<Real>(zn, a, b, ntol);
  const auto dbl = integrate_ordered_2d<Real>(
      [&](Real x1, Real x2) {
        const Vec z1 = zn(x1), z2 = zn(x2);
        return Mat(z1 * z2.transpose() - z2 * z1.transpose());
      },
      a, b, ntol);
  const auto padded = pad_skew(dbl.value, single.value);
  auto pf = log_pfaffian(padded);
  const Real delta = std::max(single.error_estimate, dbl.error_estimate);
  const Real err = pf_error(padded.entries(), pf.sign == 0 ? Real(0) : std::exp(pf.log_abs), delta);
  const Real log_scale = scale.array().log().sum();
  pf.log_abs += log_scale;
  return {pf, err * std::exp(log_scale)};
}

CdfEvaluation motion_impl(int N, double T, double ell, double r, double tol) {
  check_common(N, T, kMaxParticles);
  check_length(ell, "ell");
  check_length(r, "r");
  const Real s = std::sqrt(Real(2) * T);
  const Real u = 2 * (Real(ell) + Real(r)) / s;
  const Real v0 = 2 * Real(ell) / s;
  const double ttol = static_cast<double>(theta_tol(tol));
  Real tail = 0;
  auto z = [&](Real x) {
    const auto ta = theta_all<Real>(N - 1, u, v0 + x, ttol);
    const auto tb = theta_all<Real>(N - 1, u, x, ttol);
    tail = std::max(tail, ta.tail_bound + tb.tail_bound);
    Vec out(N);
    for (int i = 0; i < N; ++i) out[i] = ta.values[i] + ((i + 1) % 2 == 0 ? 1 : -1) * tb.values[i];
    return out;
  };
  const Real a = -Real(ell) / s, b = Real(r) / s;
  auto ci = de_bruijn(z, a, b, tol);
  const Real log_pref = Real(N) * (N - 1) / 4 * std::log(Real(2)) + log_gamma_product(N, Real(0.5));
  const int sign = ((N * (N + 1) / 2) % 2 == 0 ? 1 : -1) * ci.value.sign;
  const Real mag = ci.value.sign == 0 ? Real(0) : std::exp(ci.value.log_abs - log_pref);
  const Real err = std::exp(-log_pref) * (ci.error + tail * (b - a) * (b - a));
  return finish(Real(sign) * mag, err, N, T, IntervalGeometry{-ell, r, T});
}

CdfEvaluation meander_impl(int N, double T, double h, double tol) {
  check_common(N, T, kMaxParticles);
  check_length(h, "h");
  const Real s = std::sqrt(Real(2) * T);
  const Real u = 2 * Real(h) / s;
  const double ttol = static_cast<double>(theta_tol(tol));
  Real tail = 0;
  auto z = [&](Real x) {
    const auto th = theta_all<Real>(2 * N - 1, u, x, ttol);
    tail = std::max(tail, th.tail_bound);
    Vec out(N);
    for (int i = 0; i < N; ++i) out[i] = th.values[2 * i + 1];
    return out;
  };
  const Real b = Real(h) / s;
  auto ci = de_bruijn(z, Real(0), b, tol);
  const Real log_pref = Real(N) * (N - 1) / 2 * std::log(Real(2)) + log_gamma_product(N, 1);
  const Real mag = ci.value.sign == 0 ? Real(0) : std::exp(ci.value.log_abs - log_pref);
  const Real err = std::exp(-log_pref) * (ci.error + tail * b * b);
  return finish(Real(ci.value.sign) * mag, err, N, T, IntervalGeometry{0, h, T});
}

double reference_length(int N) { return 1.5 + std::sqrt(double(N)); }

std::array<std::once_flag, kMaxParticles + 1> g_sign_checked;

void check_signs_for(int N) {
  const double x = reference_length(N);
  const CdfEvaluation evals[] = {bridge_impl(N, 1.0, x, x, kDefaultTolerance),
                                 motion_impl(N, 1.0, x, x, kDefaultTolerance),
                                 bessel_impl(N, 1.0, x, kDefaultTolerance),
                                 meander_impl(N, 1.0, x, kDefaultTolerance)};
  for (const auto& e : evals) {
    if (!(e.raw > e.error_estimate)) {
      throw Error(ErrorKind::NumericalFailure,
                  "sign self-test failed for N = " + std::to_string(N) + " (raw " + std::to_string(e.raw) + ")");
    }
  }
}

void ensure_signs(int N) {
  if (N < 1 || N > kMaxParticles) return;
  std::call_once(g_sign_checked[static_cast<std::size_t>(N)], check_signs_for, N);
}

}  // namespace

const char* to_string(ProcessTag tag) {
  switch (tag) {
    case ProcessTag::BridgeAA: return "bridge";
    case ProcessTag::MotionAR: return "motion";
    case ProcessTag::BesselCC: return "bessel";
    case ProcessTag::MeanderCR: return "meander";
    case ProcessTag::GeneralABA: return "general-ab-a";
    case ProcessTag::GeneralARA: return "general-ar-a";
    case ProcessTag::GeneralABC: return "general-ab-c";
    case ProcessTag::GeneralARC: return "general-ar-c";
  }
  return "unknown";
}

std::optional<ProcessTag> parse_process_tag(const std::string& name) {
  for (auto tag : {ProcessTag::BridgeAA, ProcessTag::MotionAR, ProcessTag::BesselCC, ProcessTag::MeanderCR,
                   ProcessTag::GeneralABA, ProcessTag::GeneralARA, ProcessTag::GeneralABC, ProcessTag::GeneralARC}) {
    if (name == to_string(tag)) return tag;
  }
  return std::nullopt;
}

Chamber chamber_of(ProcessTag tag) {
  switch (tag) {
    case ProcessTag::BridgeAA:
    case ProcessTag::MotionAR:
    case ProcessTag::GeneralABA:
    case ProcessTag::GeneralARA: return Chamber::TypeA;
    default: return Chamber::TypeC;
  }
}

bool is_limit_process(ProcessTag tag) {
  return tag == ProcessTag::BridgeAA || tag == ProcessTag::MotionAR || tag == ProcessTag::BesselCC ||
         tag == ProcessTag::MeanderCR;
}

ProcessKind ProcessKind::limit(ProcessTag tag) {
  if (!is_limit_process(tag)) throw Error(ErrorKind::InvalidConfiguration, "general processes need endpoints");
  return {tag, std::nullopt, std::nullopt};
}

ProcessKind ProcessKind::fixed_ends(ProcessTag tag, OrderedConfiguration start, OrderedConfiguration end) {
  if (tag != ProcessTag::GeneralABA && tag != ProcessTag::GeneralABC) {
    throw Error(ErrorKind::InvalidConfiguration, "fixed end points apply to the bridge-type general processes");
  }
  const Chamber c = chamber_of(tag);
  if (start.chamber() != c || end.chamber() != c || start.size() != end.size()) {
    throw Error(ErrorKind::ChamberMismatch, "endpoint configurations do not match the process chamber");
  }
  return {tag, std::move(start), std::move(end)};
}

ProcessKind ProcessKind::free_end(ProcessTag tag, OrderedConfiguration start) {
  if (tag != ProcessTag::GeneralARA && tag != ProcessTag::GeneralARC) {
    throw Error(ErrorKind::InvalidConfiguration, "a free end point applies to the motion-type general processes");
  }
  if (start.chamber() != chamber_of(tag)) {
    throw Error(ErrorKind::ChamberMismatch, "start configuration does not match the process chamber");
  }
  return {tag, std::move(start), std::nullopt};
}

double sigma_bridge(double t, double T) {
  if (!(T > 0)) throw Error(ErrorKind::NonPositiveTime, "T must be positive");
  if (!(t >= 0 && t <= T)) throw Error(ErrorKind::OutOfWindow, "t must lie in [0, T]");
  return std::sqrt(t * (1 - t / T));
}

double gue_density(const OrderedConfiguration& x, double sigma2) {
  if (!(sigma2 > 0)) throw Error(ErrorKind::DomainError, "sigma2 must be positive");
  if (x.chamber() != Chamber::TypeA) throw Error(ErrorKind::ChamberMismatch, "GUE density lives on W^A");
  const int n = x.size();
  Real log_v = -Real(n) * n / 2 * std::log(Real(sigma2)) - Real(n) / 2 * std::log(2 * kPi) - log_gamma_product(n, 1);
  Real norm2 = 0;
  for (int i = 0; i < n; ++i) {
    norm2 += Real(x[i]) * x[i];
    for (int j = i + 1; j < n; ++j) log_v += 2 * std::log(Real(x[j]) - x[i]);
  }
  return static_cast<double>(std::exp(log_v - norm2 / (2 * Real(sigma2))));
}

double classC_density(const OrderedConfiguration& x, double sigma2) {
  if (!(sigma2 > 0)) throw Error(ErrorKind::DomainError, "sigma2 must be positive");
  if (x.chamber() != Chamber::TypeC) throw Error(ErrorKind::ChamberMismatch, "class C density lives on W^C");
  const int n = x.size();
  Real log_v = -Real(n) * (2 * n + 1) / 2 * std::log(Real(sigma2)) - Real(n) / 2 * std::log(kPi / 2) -
               log_gamma_product(n, 2);
  Real norm2 = 0;
  for (int i = 0; i < n; ++i) {
    const Real xi = x[i];
    norm2 += xi * xi;
    log_v += 2 * std::log(xi);
    for (int j = i + 1; j < n; ++j) log_v += 2 * std::log(Real(x[j]) * x[j] - xi * xi);
  }
  return static_cast<double>(std::exp(log_v - norm2 / (2 * Real(sigma2))));
}

CdfEvaluation cdf_bridge_joint_LR(int N, double T, double ell, double r, double tol) {
  ensure_signs(N);
  return bridge_impl(N, T, ell, r, tol);
}

CdfEvaluation cdf_motion_joint_LR(int N, double T, double ell, double r, double tol) {
  ensure_signs(N);
  return motion_impl(N, T, ell, r, tol);
}

CdfEvaluation cdf_bessel_H(int N, double T, double h, double tol) {
  ensure_signs(N);
  return bessel_impl(N, T, h, tol);
}

CdfEvaluation cdf_meander_H(int N, double T, double h, double tol) {
  ensure_signs(N);
  return meander_impl(N, T, h, tol);
}

CdfEvaluation cdf_general(const ProcessKind& kind, const IntervalGeometry& geometry, int N, double T, double tol) {
  if (is_limit_process(kind.tag)) {
    throw Error(ErrorKind::InvalidConfiguration, "cdf_general needs a general process with end points");
  }
  if (!kind.start) throw Error(ErrorKind::InvalidConfiguration, "missing start configuration");
  const bool fixed = kind.tag == ProcessTag::GeneralABA || kind.tag == ProcessTag::GeneralABC;
  if (fixed && !kind.end) throw Error(ErrorKind::InvalidConfiguration, "missing end configuration");
  check_common(N, T, fixed ? kMaxParticles : kMaxChamberParticles);
  if (kind.start->size() != N || (fixed && kind.end->size() != N)) {
    throw Error(ErrorKind::ChamberMismatch, "endpoint configurations must have N points");
  }
  if (!(geometry.left < geometry.right)) throw Error(ErrorKind::DomainError, "interval requires left < right");
  if (std::abs(geometry.duration - T) > 1e-12 * T) {
    throw Error(ErrorKind::InvalidConfiguration, "geometry duration differs from T");
  }
  const Chamber chamber = chamber_of(kind.tag);
  if (chamber == Chamber::TypeC && geometry.left != 0) {
    throw Error(ErrorKind::DomainError, "type C geometries have their left wall at the origin");
  }
  const KernelSelector restricted = KernelSelector::interval(geometry);
  const KernelSelector unrestricted = chamber == Chamber::TypeA ? KernelSelector::free() : KernelSelector::half_line();
  const OrderedConfiguration& a = *kind.start;
  check_km_arguments(a, a, restricted);

  if (fixed) {
    const OrderedConfiguration& b = *kind.end;
    const auto num = log_km_determinant<Real>(T, b, a, restricted);
    const auto den = log_km_determinant<Real>(T, b, a, unrestricted);
    if (den.sign <= 0) throw Error(ErrorKind::NumericalFailure, "free transition density vanished");
    const Real raw = num.sign == 0 ? Real(0) : Real(num.sign) * std::exp(num.log_abs - den.log_abs);
    const Real err = 64 * N * std::numeric_limits<double>::epsilon() * std::abs(raw);
    return finish(raw, err, N, T, geometry);
  }

  auto z = [&](Real y) {
    Vec out(N);
    for (int j = 0; j < N; ++j) {
      out[j] = absorbing_interval<Real>(Real(T), y, Real(a[j]), Real(geometry.left), Real(geometry.right));
    }
    return out;
  };
  // Beyond 14 sqrt(T) of the start points every kernel is below exp(-98).
  const Real reach = 14 * std::sqrt(Real(T));
  const Real lo = std::max(Real(geometry.left), Real(a[0]) - reach);
  const Real hi = std::min(Real(geometry.right), Real(a[N - 1]) + reach);
  const auto ci = de_bruijn(z, lo, hi, tol);
  const auto den = chamber == Chamber::TypeA ? log_survival_A(T, a) : log_survival_C(T, a, Real(tol) * 1e-2L);
  if (den.sign <= 0) throw Error(ErrorKind::NumericalFailure, "survival probability vanished");
  const Real raw = ci.value.sign == 0 ? Real(0) : Real(ci.value.sign) * std::exp(ci.value.log_abs - den.log_abs);
  const Real err = ci.error / std::exp(den.log_abs);
  return finish(raw, err, N, T, geometry);
}

CdfEvaluation cdf_width(int N, double T, double w, double tol) {
  check_common(N, T, kMaxParticles);
  check_length(w, "w");
  ensure_signs(N);
  const double h0 = 1e-3 * std::sqrt(T);
  const double target = 1e-6;
  auto F = [&](double ell, double r) { return bridge_impl(N, T, ell, r, kDefaultTolerance).raw; };
  // d/d ell of P(-ell < L, R < r) at fixed r, by Richardson-extrapolated central differences.
  double stencil_err = 0;
  auto dF = [&](long double ell_l) -> long double {
    const double ell = static_cast<double>(ell_l);
    const double r = w - ell;
    const double h = std::min(h0, ell / 2);
    double d[3];
    for (int k = 0; k < 3; ++k) {
      const double hk = h / double(1 << k);
      d[k] = (F(ell + hk, r) - F(ell - hk, r)) / (2 * hk);
    }
    const double r1 = (4 * d[1] - d[0]) / 3, r2 = (4 * d[2] - d[1]) / 3;
    const double rr = (16 * r2 - r1) / 15;
    if (std::abs(rr - r2) > target) {
      throw Error(ErrorKind::ToleranceNotMet, "width: differentiation stencil did not reach 1e-6");
    }
    stencil_err = std::max(stencil_err, std::abs(rr - r2));
    return rr;
  };
  const auto q = integrate_1d<long double>(dF, 0.0L, static_cast<long double>(w), static_cast<long double>(tol));
  return finish(q.value, q.error_estimate + stencil_err * w, N, T, IntervalGeometry{0, w, T});
}

double height_moment_n1(double m, double T) {
  if (!(m > 1)) throw Error(ErrorKind::DomainError, "height moments need m > 1");
  if (!(T > 0)) throw Error(ErrorKind::NonPositiveTime, "T must be positive");
  return 2 * std::pow(std::numbers::pi * T / 2, m / 2) * riemann_xi(m);
}

double height_moment_from_cdf(double m, double T, double tol) {
  if (!(m > 1)) throw Error(ErrorKind::DomainError, "height moments need m > 1");
  if (!(T > 0)) throw Error(ErrorKind::NonPositiveTime, "T must be positive");
  ensure_signs(1);
  const long double upper = 12.0L * std::sqrt(static_cast<long double>(T));
  auto integrand = [&](long double h) -> long double {
    if (h <= 0) return 0;
    const double F = bessel_impl(1, T, static_cast<double>(h), kDefaultTolerance).raw;
    return m * std::pow(h, static_cast<long double>(m - 1)) * (1 - static_cast<long double>(F));
  };
  const auto q = integrate_1d<long double>(integrand, 0.0L, upper, static_cast<long double>(tol));
  return static_cast<double>(q.value);
}

void verify_sign_conventions() {
  for (int N = 1; N <= 4; ++N) ensure_signs(N);
}

}  // namespace noncoll
