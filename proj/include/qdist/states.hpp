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

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include "qdist/errors.hpp"
#include "qdist/linalg.hpp"

namespace qdist {

inline const std::array<ComplexMatrix, 3>& pauli_matrices() {
  static const std::array<ComplexMatrix, 3> paulis = [] {
    std::array<ComplexMatrix, 3> p{ComplexMatrix(2, 2), ComplexMatrix(2, 2),
                                   ComplexMatrix(2, 2)};
    p[0](0, 1) = 1.0;
    p[0](1, 0) = 1.0;
    p[1](0, 1) = cplx{0.0, -1.0};
    p[1](1, 0) = cplx{0.0, 1.0};
    p[2](0, 0) = 1.0;
    p[2](1, 1) = -1.0;
    return p;
  }();
  return paulis;
}

/// Hermitian, positive semidefinite, unit-trace operator. Validated at
/// construction; downstream code relies on the invariants.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
    if (!mat_.square())
      throw ValidationFailure("DensityMatrix: matrix not square");
    if (!mat_.is_hermitian(1e-9))
      throw ValidationFailure("DensityMatrix: not Hermitian within 1e-9");
    const cplx tr = mat_.trace();
    if (std::abs(tr - cplx{1.0, 0.0}) > 1e-9) {
      std::ostringstream os;
      os << "DensityMatrix: trace " << std::real(tr) << " not 1 within 1e-9";
      throw ValidationFailure(os.str());
    }
    Spectrum sp = hermitian_eig(mat_);
    if (sp.eigenvalues.back() < -kPsdTolerance) {
      std::ostringstream os;
      os << "DensityMatrix: negative eigenvalue " << sp.eigenvalues.back();
      throw ValidationFailure(os.str());
    }
  }

  const ComplexMatrix& mat() const { return mat_; }
  std::size_t dim() const { return mat_.rows(); }

  /// Tr(rho^2), real by hermiticity.
  double purity() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        s += std::real(mat_(i, j) * mat_(j, i));
    return s;
  }

  // Extremal iff idempotent; numerically Tr(rho^2) >= 1 - 1e-9.
  bool is_pure() const { return purity() >= 1.0 - 1e-9; }

 private:
  ComplexMatrix mat_;
};

/// Unit vector in C^d, ray representative of a pure state.
class PureState {
 public:
  explicit PureState(std::vector<cplx> v) : vec_(std::move(v)) {
    if (vec_.empty()) throw ValidationFailure("PureState: empty vector");
    double n2 = 0.0;
    for (const cplx& z : vec_) n2 += std::norm(z);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-10)
      throw ValidationFailure("PureState: norm not 1 within 1e-10");
  }

  /// Normalizes first; rejects only the zero vector.
  static PureState normalized(std::vector<cplx> v) {
    double n2 = 0.0;
    for (const cplx& z : v) n2 += std::norm(z);
    if (n2 <= 0.0) throw ValidationFailure("PureState: zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& z : v) z *= inv;
    return PureState(std::move(v));
  }

  std::size_t dim() const { return vec_.size(); }
  const std::vector<cplx>& vec() const { return vec_; }
  const cplx& operator[](std::size_t i) const { return vec_[i]; }

 private:
  std::vector<cplx> vec_;
};

/// <a|b>
inline cplx inner(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("inner: dimension mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Real 3-vector with ||r|| <= 1; parametrizes a qubit state.
class BlochVector {
 public:
  explicit BlochVector(Vec3 r) : r_(r) {
    if (norm(r_) > 1.0 + 1e-12)
      throw BlochNormExceeded("BlochVector: norm exceeds 1");
  }
  BlochVector(double x, double y, double z) : BlochVector(Vec3{x, y, z}) {}

  const Vec3& vec() const { return r_; }
  double norm() const { return qdist::norm(r_); }
  double operator[](std::size_t i) const { return r_[i]; }

 private:
  Vec3 r_;
};

/// rho = (I + r.sigma)/2
inline DensityMatrix from_bloch(const BlochVector& r) {
  ComplexMatrix m = ComplexMatrix::identity(2);
  const auto& sigma = pauli_matrices();
  for (std::size_t k = 0; k < 3; ++k) m += r[k] * sigma[k];
  m *= 0.5;
  return DensityMatrix(std::move(m));
}

/// r_i = Tr(rho sigma_i); inverts from_bloch.
inline BlochVector to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionMismatch("to_bloch: state is not a qubit");
  const auto& sigma = pauli_matrices();
  Vec3 r{};
  for (std::size_t k = 0; k < 3; ++k) r[k] = std::real((rho.mat() * sigma[k]).trace());
  return BlochVector(r);
}

/// |psi><psi|
inline DensityMatrix projector(const PureState& psi) {
  const std::size_t d = psi.dim();
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return DensityMatrix(std::move(m));
}

// ---------------------------------------------------------------------------
// Sampling. All samplers take an explicit generator; no global random state.

/// Normalized vector of iid standard complex Gaussians (unitarily invariant).
inline PureState random_pure(std::size_t d, std::mt19937_64& rng) {
  if (d < 2) throw DomainError("random_pure: d must be >= 2");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> v(d);
  for (cplx& z : v) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = cplx{re, im};
  }
  return PureState::normalized(std::move(v));
}

inline PureState random_pure(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_pure(d, rng);
}

/// G G^dagger / Tr(G G^dagger) for a square Ginibre G (Hilbert-Schmidt measure).
inline DensityMatrix random_density(std::size_t d, std::mt19937_64& rng) {
  if (d < 2) throw DomainError("random_density: d must be >= 2");
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = cplx{re, im};
    }
  ComplexMatrix rho = g * g.adjoint();
  const double tr = std::real(rho.trace());
  rho *= 1.0 / tr;
  // Force the diagonal real and the matrix exactly Hermitian.
  for (std::size_t i = 0; i < d; ++i) {
    rho(i, i) = cplx{std::real(rho(i, i)), 0.0};
    for (std::size_t j = i + 1; j < d; ++j) {
      const cplx v = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
      rho(i, j) = v;
      rho(j, i) = std::conj(v);
    }
  }
  return DensityMatrix(std::move(rho));
}

inline DensityMatrix random_density(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_density(d, rng);
}

/// Haar-ish random unitary: modified Gram-Schmidt on a Ginibre matrix.
inline ComplexMatrix random_unitary(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix q(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      q(i, j) = cplx{re, im};
    }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx proj{0.0, 0.0};
      for (std::size_t i = 0; i < d; ++i) proj += std::conj(q(i, k)) * q(i, j);
      for (std::size_t i = 0; i < d; ++i) q(i, j) -= proj * q(i, k);
    }
    double n2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) n2 += std::norm(q(i, j));
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t i = 0; i < d; ++i) q(i, j) *= inv;
  }
  return q;
}

}  // namespace qdist
