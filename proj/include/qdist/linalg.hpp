// Copyright 2026 The qdist developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include "qdist/errors.hpp"

namespace qdist {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Sized for operators on a handful of
/// qubits; everything here is O(n^3) with tiny constants.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  cplx trace() const {
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  bool is_hermitian(double tol) const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (cplx& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix m) {
    m *= s;
    return m;
  }
  friend ComplexMatrix operator*(ComplexMatrix m, cplx s) {
    m *= s;
    return m;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

/// Eigendecomposition of a Hermitian matrix: V * diag(lambda) * V^dagger
/// reconstructs the input. Eigenvalues real and sorted descending.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;  // columns
};

namespace detail {

// One cyclic sweep cost is O(n^3); convergence is quadratic once the
// off-diagonal mass is small.
inline constexpr int kJacobiMaxSweeps = 64;

}  // namespace detail

/// Cyclic Jacobi eigensolver for Hermitian matrices. Input must satisfy
/// ||m - m^dagger||_max <= 1e-9.
inline Spectrum hermitian_eig(const ComplexMatrix& m) {
  if (!m.square()) throw DimensionMismatch("hermitian_eig: matrix not square");
  if (!m.is_hermitian(1e-9))
    throw NotHermitian("hermitian_eig: ||m - m^dagger||_max exceeds 1e-9");

  const std::size_t n = m.rows();
  // Work on the exactly Hermitian part; halves the input rounding noise.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = cplx{std::real(m(i, i)), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(a.frobenius_norm(), 1e-300);
  bool converged = (n <= 1);
  for (int sweep = 0; sweep < detail::kJacobiMaxSweeps && !converged; ++sweep) {
    double off2 = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off2 += std::norm(a(p, q));
    if (std::sqrt(off2) <= 1e-15 * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx g = a(p, q);
        const double gm = std::abs(g);
        if (gm <= 1e-18 * scale) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double alpha = std::real(a(p, p));
        const double beta = std::real(a(q, q));
        const cplx u = g / gm;  // phase of the pivot
        const double tau = (beta - alpha) / (2.0 * gm);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx su = s * u;
        const cplx suc = s * std::conj(u);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A G
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - suc * akq;
          a(k, q) = su * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- G^dagger A
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - su * aqk;
          a(q, k) = suc * apk + c * aqk;
        }
        a(p, p) = cplx{alpha - t * gm, 0.0};
        a(q, q) = cplx{beta + t * gm, 0.0};
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {  // V <- V G
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - suc * vkq;
          v(k, q) = su * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    double off2 = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off2 += std::norm(a(p, q));
    if (std::sqrt(off2) > 1e-12 * scale)
      throw NoConvergence("hermitian_eig: Jacobi sweeps exhausted");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::real(a(i, i)) > std::real(a(j, j));
  });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = std::real(a(order[j], order[j]));
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

/// Kronecker product; dims multiply.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cplx aij = a(ia, ja);
      if (aij == cplx{0.0, 0.0}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
    }
  return out;
}

/// Partial trace over the auxiliary (second, dimension d_aux) factor of a
/// (d*d_aux) x (d*d_aux) operator: out(i,j) = sum_k m((i,k),(j,k)).
inline ComplexMatrix partial_trace_aux(const ComplexMatrix& m, std::size_t d,
                                       std::size_t d_aux) {
  if (!m.square() || m.rows() != d * d_aux)
    throw DimensionMismatch("partial_trace_aux: matrix is not (d*d_aux) square");
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      cplx s{0.0, 0.0};
      for (std::size_t k = 0; k < d_aux; ++k) s += m(i * d_aux + k, j * d_aux + k);
      out(i, j) = s;
    }
  return out;
}

inline constexpr double kPsdTolerance = 1e-10;

/// Principal square root of a Hermitian PSD matrix via its spectrum.
/// Eigenvalues in [-kPsdTolerance, 0) are clamped to zero.
inline ComplexMatrix mat_sqrt_psd(const ComplexMatrix& m) {
  Spectrum sp = hermitian_eig(m);
  for (double lam : sp.eigenvalues)
    if (lam < -kPsdTolerance)
      throw NotPSD("mat_sqrt_psd: eigenvalue below -1e-10");
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = std::sqrt(std::max(sp.eigenvalues[k], 0.0));
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = s * sp.eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += vik * std::conj(sp.eigenvectors(j, k));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Real 3-space kernel for the Bloch/Procrustes machinery.

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

/// Real 3x3 matrix, row-major.
struct Mat3 {
  std::array<double, 9> a{};

  double& operator()(std::size_t i, std::size_t j) { return a[3 * i + j]; }
  const double& operator()(std::size_t i, std::size_t j) const { return a[3 * i + j]; }

  static Mat3 identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  static Mat3 diag(double x, double y, double z) {
    Mat3 m;
    m(0, 0) = x;
    m(1, 1) = y;
    m(2, 2) = z;
    return m;
  }
  static Mat3 outer(const Vec3& u, const Vec3& v) {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = u[i] * v[j];
    return m;
  }

  Mat3 transposed() const {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = (*this)(j, i);
    return m;
  }

  double det() const {
    return (*this)(0, 0) * ((*this)(1, 1) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 1)) -
           (*this)(0, 1) * ((*this)(1, 0) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 0)) +
           (*this)(0, 2) * ((*this)(1, 0) * (*this)(2, 1) - (*this)(1, 1) * (*this)(2, 0));
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
  }

  friend Mat3 operator+(const Mat3& x, const Mat3& y) {
    Mat3 m;
    for (std::size_t k = 0; k < 9; ++k) m.a[k] = x.a[k] + y.a[k];
    return m;
  }
  friend Mat3 operator-(const Mat3& x, const Mat3& y) {
    Mat3 m;
    for (std::size_t k = 0; k < 9; ++k) m.a[k] = x.a[k] - y.a[k];
    return m;
  }
  friend Mat3 operator*(double s, const Mat3& x) {
    Mat3 m;
    for (std::size_t k = 0; k < 9; ++k) m.a[k] = s * x.a[k];
    return m;
  }
  friend Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 m;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
        m(i, j) = s;
      }
    return m;
  }
  friend Vec3 operator*(const Mat3& x, const Vec3& v) {
    Vec3 out{};
    for (std::size_t i = 0; i < 3; ++i)
      out[i] = x(i, 0) * v[0] + x(i, 1) * v[1] + x(i, 2) * v[2];
    return out;
  }
};

inline double max_abs_diff(const Mat3& x, const Mat3& y) {
  double m = 0.0;
  for (std::size_t k = 0; k < 9; ++k) m = std::max(m, std::abs(x.a[k] - y.a[k]));
  return m;
}

/// m = u * diag(sigma) * v^T with u, v orthogonal and sigma >= 0 descending.
struct Svd3 {
  Mat3 u;
  Vec3 sigma;
  Mat3 v;
};

/// One-sided Jacobi SVD of a real 3x3 matrix.
inline Svd3 svd_real3(const Mat3& m) {
  Mat3 w = m;  // columns get rotated until mutually orthogonal
  Mat3 v = Mat3::identity();

  const double scale2 = std::max(w.frobenius_norm() * w.frobenius_norm(), 1e-300);
  bool converged = false;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 3; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
          alpha += w(k, p) * w(k, p);
          beta += w(k, q) * w(k, q);
          gamma += w(k, p) * w(k, q);
        }
        if (std::abs(gamma) <= 1e-16 * std::sqrt(std::max(alpha * beta, 1e-30 * scale2)))
          continue;
        converged = false;
        const double tau = (beta - alpha) / (2.0 * gamma);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < 3; ++k) {
          const double wp = w(k, p), wq = w(k, q);
          w(k, p) = c * wp - s * wq;
          w(k, q) = s * wp + c * wq;
          const double vp = v(k, p), vq = v(k, q);
          v(k, p) = c * vp - s * vq;
          v(k, q) = s * vp + c * vq;
        }
      }
    }
  }
  if (!converged) throw NoConvergence("svd_real3: Jacobi sweeps exhausted");

  Vec3 sigma{};
  for (std::size_t j = 0; j < 3; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < 3; ++k) s += w(k, j) * w(k, j);
    sigma[j] = std::sqrt(s);
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  Svd3 out;
  Mat3 wp;  // permuted
  for (std::size_t j = 0; j < 3; ++j) {
    out.sigma[j] = sigma[order[j]];
    for (std::size_t k = 0; k < 3; ++k) {
      wp(k, j) = w(k, order[j]);
      out.v(k, j) = v(k, order[j]);
    }
  }

  // Columns with sigma above the cutoff define U directly; the rest are
  // completed to an orthonormal basis (they multiply zero singular values).
  const double cutoff = 1e-13 * std::max(out.sigma[0], 1.0);
  std::size_t valid = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    if (out.sigma[j] > cutoff) {
      for (std::size_t k = 0; k < 3; ++k) out.u(k, j) = wp(k, j) / out.sigma[j];
      ++valid;
    } else {
      out.sigma[j] = std::max(out.sigma[j], 0.0);
    }
  }
  if (valid == 0) {
    out.u = Mat3::identity();
  } else if (valid == 1) {
    const Vec3 u0{out.u(0, 0), out.u(1, 0), out.u(2, 0)};
    std::size_t least = 0;
    for (std::size_t k = 1; k < 3; ++k)
      if (std::abs(u0[k]) < std::abs(u0[least])) least = k;
    Vec3 e{};
    e[least] = 1.0;
    Vec3 u1 = {e[0] - dot(e, u0) * u0[0], e[1] - dot(e, u0) * u0[1],
               e[2] - dot(e, u0) * u0[2]};
    u1 = scaled(u1, 1.0 / norm(u1));
    const Vec3 u2 = cross(u0, u1);
    for (std::size_t k = 0; k < 3; ++k) {
      out.u(k, 1) = u1[k];
      out.u(k, 2) = u2[k];
    }
  } else if (valid == 2) {
    const Vec3 u0{out.u(0, 0), out.u(1, 0), out.u(2, 0)};
    const Vec3 u1{out.u(0, 1), out.u(1, 1), out.u(2, 1)};
    const Vec3 u2 = cross(u0, u1);
    for (std::size_t k = 0; k < 3; ++k) out.u(k, 2) = u2[k];
  }
  return out;
}

}  // namespace qdist
