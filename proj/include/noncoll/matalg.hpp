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
 * @brief Dense determinants and pfaffians for the small matrices assembled by
 * the distribution formulas.
 *
 * The log-scaled variants return (sign, log|value|) after equilibrating rows
 * and columns, since theta-based entries span many orders of magnitude.
 */

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <utility>

#include "noncoll/error.hpp"

namespace noncoll {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// A value represented as sign * exp(log_abs); sign is 0 for an exact zero.
template <typename Scalar>
struct SignedLog {
  int sign = 1;
  Scalar log_abs = 0;

  Scalar value() const { return sign == 0 ? Scalar(0) : Scalar(sign) * std::exp(log_abs); }

  friend SignedLog operator*(SignedLog a, SignedLog b) {
    return {a.sign * b.sign, a.log_abs + b.log_abs};
  }
  friend SignedLog operator/(SignedLog a, SignedLog b) {
    if (b.sign == 0) throw Error(ErrorKind::NumericalFailure, "division by an exact zero");
    return {a.sign * b.sign, a.log_abs - b.log_abs};
  }
  static SignedLog from(Scalar x) {
    if (x == 0) return {0, -std::numeric_limits<Scalar>::infinity()};
    return {x > 0 ? 1 : -1, std::log(std::abs(x))};
  }
};

namespace detail {

// In-place LU with partial pivoting; returns the signed log of the pivot product.
template <typename Scalar, int R, int C, int O, int MR, int MC>
SignedLog<Scalar> lu_log_det(Eigen::Matrix<Scalar, R, C, O, MR, MC>& a) {
  const Eigen::Index n = a.rows();
  SignedLog<Scalar> out{1, 0};
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    Scalar best = std::abs(a(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        p = i;
      }
    }
    if (best == 0) return {0, -std::numeric_limits<Scalar>::infinity()};
    if (p != k) {
      a.row(p).swap(a.row(k));
      out.sign = -out.sign;
    }
    const Scalar piv = a(k, k);
    if (piv < 0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(piv));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Scalar f = a(i, k) / piv;
      if (f != 0) a.row(i).tail(n - k - 1) -= f * a.row(k).tail(n - k - 1);
    }
  }
  return out;
}

}  // namespace detail

/// Signed log-determinant with row then column equilibration.
template <typename Derived>
SignedLog<typename Derived::Scalar> log_determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw Error(ErrorKind::DomainError, "determinant of a non-square matrix");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, Derived::MaxRowsAtCompileTime,
                Derived::MaxColsAtCompileTime>
      a = m;
  if (a.rows() == 0) return {1, 0};
  Scalar log_scale = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const Scalar s = a.row(i).cwiseAbs().maxCoeff();
    if (s == 0) return {0, -std::numeric_limits<Scalar>::infinity()};
    a.row(i) /= s;
    log_scale += std::log(s);
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const Scalar s = a.col(j).cwiseAbs().maxCoeff();
    if (s == 0) return {0, -std::numeric_limits<Scalar>::infinity()};
    a.col(j) /= s;
    log_scale += std::log(s);
  }
  auto lu = detail::lu_log_det(a);
  if (lu.sign == 0) return lu;
  lu.log_abs += log_scale;
  return lu;
}

/// det(M) by partially pivoted elimination; singular input gives 0.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  return log_determinant(m).value();
}

/// Real square matrix with A = -A^T, exactly antisymmetrized on construction.
template <typename Scalar>
class AntisymmetricMatrix {
 public:
  AntisymmetricMatrix() = default;

  /// Accepts entries antisymmetric to within 1e-14 relative (to the largest
  /// entry) and stores (A - A^T)/2.
  template <typename Derived>
  explicit AntisymmetricMatrix(const Eigen::MatrixBase<Derived>& entries) {
    if (entries.rows() != entries.cols()) {
      throw Error(ErrorKind::NotAntisymmetric, "matrix is not square");
    }
    const MatrixX<Scalar> a = entries.template cast<Scalar>();
    const Scalar scale = a.size() == 0 ? Scalar(0) : a.cwiseAbs().maxCoeff();
    const Scalar defect = a.size() == 0 ? Scalar(0) : (a + a.transpose()).cwiseAbs().maxCoeff();
    if (!(defect <= Scalar(1e-14) * scale)) {
      throw Error(ErrorKind::NotAntisymmetric, "entries violate A = -A^T");
    }
    entries_ = (a - a.transpose()) / Scalar(2);
  }

  Eigen::Index dim() const { return entries_.rows(); }
  const MatrixX<Scalar>& entries() const { return entries_; }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  MatrixX<Scalar> entries_;
};

template <typename Derived>
AntisymmetricMatrix<typename Derived::Scalar> make_antisymmetric(const Eigen::MatrixBase<Derived>& m) {
  return AntisymmetricMatrix<typename Derived::Scalar>(m);
}

/// Signed log-pfaffian by pivoted Parlett-Reid (skew LTL^T) reduction.
///
/// The matrix is first symmetrically rescaled, D A D with D = diag(1/sqrt(row max)),
/// which multiplies the pfaffian by det D.
template <typename Scalar>
SignedLog<Scalar> log_pfaffian(const AntisymmetricMatrix<Scalar>& m) {
  const Eigen::Index n = m.dim();
  if (n % 2 == 1) throw Error(ErrorKind::OddDimension, "pfaffian of an odd-dimensional matrix");
  if (n == 0) return {1, 0};
  MatrixX<Scalar> a = m.entries();
  Scalar log_scale = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar s = a.row(i).cwiseAbs().maxCoeff();
    if (s == 0) return {0, -std::numeric_limits<Scalar>::infinity()};
    const Scalar d = 1 / std::sqrt(s);
    a.row(i) *= d;
    a.col(i) *= d;
    log_scale += std::log(s) / 2;
  }

  SignedLog<Scalar> out{1, log_scale};
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index kp = k + 1;
    for (Eigen::Index i = k + 2; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(kp, k))) kp = i;
    }
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      out.sign = -out.sign;
    }
    const Scalar pivot = a(k, k + 1);
    if (pivot == 0) return {0, -std::numeric_limits<Scalar>::infinity()};
    if (pivot < 0) out.sign = -out.sign;
    out.log_abs += std::log(std::abs(pivot));
    if (k + 2 < n) {
      const Eigen::Index rest = n - k - 2;
      const VectorX<Scalar> tau = a.row(k).tail(rest).transpose() / pivot;
      const VectorX<Scalar> col = a.col(k + 1).tail(rest);
      a.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return out;
}

/// Pf(A) with the permutation-sum sign convention (Pf [[0, a], [-a, 0]] = a).
template <typename Scalar>
Scalar pfaffian(const AntisymmetricMatrix<Scalar>& m) {
  return log_pfaffian(m).value();
}

/// Pads an N x N antisymmetric core to even dimension.
///
/// Even N returns the core. Odd N appends `border` as the last column, its
/// negative as the last row, and a zero corner.
template <typename DerivedCore, typename DerivedBorder>
AntisymmetricMatrix<typename DerivedCore::Scalar> pad_skew(const Eigen::MatrixBase<DerivedCore>& core,
                                                           const Eigen::MatrixBase<DerivedBorder>& border) {
  using Scalar = typename DerivedCore::Scalar;
  AntisymmetricMatrix<Scalar> checked(core);
  const Eigen::Index n = checked.dim();
  if (n % 2 == 0) return checked;
  if (border.size() != n) throw Error(ErrorKind::DomainError, "pad_skew: border length must equal N");
  MatrixX<Scalar> padded = MatrixX<Scalar>::Zero(n + 1, n + 1);
  padded.topLeftCorner(n, n) = checked.entries();
  for (Eigen::Index i = 0; i < n; ++i) {
    padded(i, n) = border(i);
    padded(n, i) = -border(i);
  }
  return AntisymmetricMatrix<Scalar>(padded);
}

}  // namespace noncoll
