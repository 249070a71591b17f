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

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdist/distances.hpp"
#include "qdist/entropy.hpp"
#include "qdist/errors.hpp"
#include "qdist/linalg.hpp"
#include "qdist/states.hpp"

namespace qdist {

/// Element of SO(3); the search variable of the purification alignment.
class Rotation3 {
 public:
  explicit Rotation3(Mat3 s) : s_(s) {
    const Mat3 gram = s_.transposed() * s_;
    if (max_abs_diff(gram, Mat3::identity()) > 1e-10)
      throw ValidationFailure("Rotation3: S^T S != I within 1e-10");
    if (std::abs(s_.det() - 1.0) > 1e-10)
      throw ValidationFailure("Rotation3: det != +1 within 1e-10");
  }

  static Mat3 rot_z(double a) {
    Mat3 m = Mat3::identity();
    m(0, 0) = std::cos(a);
    m(0, 1) = -std::sin(a);
    m(1, 0) = std::sin(a);
    m(1, 1) = std::cos(a);
    return m;
  }
  static Mat3 rot_y(double a) {
    Mat3 m = Mat3::identity();
    m(0, 0) = std::cos(a);
    m(0, 2) = std::sin(a);
    m(2, 0) = -std::sin(a);
    m(2, 2) = std::cos(a);
    return m;
  }
  /// Z-Y-Z convention: Rz(alpha) Ry(beta) Rz(gamma).
  static Rotation3 from_euler_zyz(double alpha, double beta, double gamma) {
    return Rotation3(rot_z(alpha) * rot_y(beta) * rot_z(gamma));
  }

  const Mat3& mat() const { return s_; }

 private:
  Mat3 s_;
};

/// |psi> = sum_i sqrt(p_i) |e_i> x |a_i> with computational auxiliary basis.
/// The output lives in dimension d^2; tracing out the auxiliary factor
/// recovers the input.
inline PureState spectral_purify(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  Spectrum sp = hermitian_eig(rho.mat());
  std::vector<cplx> psi(d * d, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < d; ++k) {
    const double w = std::sqrt(std::max(sp.eigenvalues[k], 0.0));
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < d; ++i) psi[i * d + k] = w * sp.eigenvectors(i, k);
  }
  return PureState::normalized(std::move(psi));
}

/// Builds the auxiliary-side unitary connecting two purifications of the same
/// full-rank state and returns ||psi1 - (I x U) psi2||. The construction goes
/// through Psi = sqrt(rho) W: both W factors are unitary when rho is full
/// rank, and U^T = W2^dagger W1.
inline double unitary_freedom_check(const PureState& psi1, const PureState& psi2) {
  if (psi1.dim() != psi2.dim())
    throw DimensionMismatch("unitary_freedom_check: dimension mismatch");
  const auto dim = psi1.dim();
  std::size_t d = 0;
  while ((d + 1) * (d + 1) <= dim) ++d;
  if (d * d != dim)
    throw DimensionMismatch("unitary_freedom_check: dimension is not a square");

  ComplexMatrix m1(d, d), m2(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      m1(i, k) = psi1[i * d + k];
      m2(i, k) = psi2[i * d + k];
    }
  const ComplexMatrix rho1 = m1 * m1.adjoint();
  const ComplexMatrix rho2 = m2 * m2.adjoint();
  if (max_abs_diff(rho1, rho2) > 1e-8)
    throw NotSamePurified("unitary_freedom_check: reduced states differ");

  ComplexMatrix rho = rho1 + rho2;
  rho *= 0.5;
  rho = 0.5 * (rho + rho.adjoint());
  Spectrum sp = hermitian_eig(rho);
  ComplexMatrix inv_root(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const double lam = sp.eigenvalues[k];
    if (lam < 1e-12) continue;  // full-rank expected; null directions dropped
    const double w = 1.0 / std::sqrt(lam);
    for (std::size_t i = 0; i < d; ++i) {
      const cplx vik = w * sp.eigenvectors(i, k);
      for (std::size_t j = 0; j < d; ++j)
        inv_root(i, j) += vik * std::conj(sp.eigenvectors(j, k));
    }
  }
  const ComplexMatrix w1 = inv_root * m1;
  const ComplexMatrix w2 = inv_root * m2;
  const ComplexMatrix ut = w2.adjoint() * w1;  // U^T on the auxiliary factor

  const ComplexMatrix aligned = m2 * ut;
  double res2 = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      res2 += std::norm(m1(i, k) - aligned(i, k));
  return std::sqrt(res2);
}

/// 4x4 pure-state operator purifying the qubit state with Bloch vector r,
/// P = (1/4)(I4 + sum_i r_i s_i x I + sum_i g_i I x s_i + sum_ij A_ij s_i x s_j)
/// with g = A^T r. Unit trace and idempotency are enforced at assembly.
struct QubitPurification {
  BlochVector r;
  Mat3 A;
  Vec3 gamma;
  ComplexMatrix P;
};

inline QubitPurification assemble_qubit_purification(const BlochVector& r, const Mat3& a) {
  const Vec3 gamma = a.transposed() * r.vec();
  const auto& sigma = pauli_matrices();
  const ComplexMatrix eye2 = ComplexMatrix::identity(2);

  ComplexMatrix p = ComplexMatrix::identity(4);
  for (std::size_t i = 0; i < 3; ++i) {
    p += r[i] * kron(sigma[i], eye2);
    p += gamma[i] * kron(eye2, sigma[i]);
    for (std::size_t j = 0; j < 3; ++j)
      if (a(i, j) != 0.0) p += a(i, j) * kron(sigma[i], sigma[j]);
  }
  p *= 0.25;

  if (std::abs(p.trace() - cplx{1.0, 0.0}) > 1e-9)
    throw PurityViolation("assemble_qubit_purification: trace not 1");
  if (max_abs_diff(p * p, p) > 1e-8)
    throw PurityViolation("assemble_qubit_purification: P^2 != P (A invalid)");
  const ComplexMatrix reduced = partial_trace_aux(p, 2, 2);
  if (max_abs_diff(reduced, from_bloch(r).mat()) > 1e-9)
    throw PurityViolation("assemble_qubit_purification: Tr_aux P != rho");

  return QubitPurification{r, a, gamma, std::move(p)};
}

/// Dominant eigenvector of the assembled projector as a state vector.
inline PureState purification_vector(const QubitPurification& pur) {
  Spectrum sp = hermitian_eig(pur.P);
  std::vector<cplx> v(4);
  for (std::size_t i = 0; i < 4; ++i) v[i] = sp.eigenvectors(i, 0);
  return PureState::normalized(std::move(v));
}

namespace detail {

/// Principal PSD square root of a symmetric 3x3 matrix.
inline Mat3 sqrt_psd_sym3(const Mat3& m) {
  ComplexMatrix c(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      c(i, j) = 0.5 * (m(i, j) + m(j, i));
  const ComplexMatrix root = mat_sqrt_psd(c);
  Mat3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out(i, j) = std::real(root(i, j));
  return out;
}

}  // namespace detail

struct ASolution {
  Mat3 a;
  bool quadratic_gram;  // which candidate right-hand side validated
};

/// Particular solution of the Gram constraint for the purification matrix A:
/// A A^T equals a shrink of the identity plus r r^T, with det(A) = ||r||^2 - 1.
/// Two candidate right-hand sides exist, (1-||r||^2) I + r r^T and
/// (1-||r||) I + r r^T; only the quadratic one is determinant-consistent
/// (det(A A^T) must equal det(A)^2), so it is tried first. Whatever candidate
/// produces an assembly passing the purity and partial-trace invariants is
/// adopted; those invariants, not the printed constraint, are the authority.
inline ASolution solve_A_system_detailed(const BlochVector& r) {
  const double n = r.norm();
  const Mat3 rrt = Mat3::outer(r.vec(), r.vec());
  const Mat3 gram_quadratic = (1.0 - n * n) * Mat3::identity() + rrt;
  const Mat3 gram_linear = (1.0 - n) * Mat3::identity() + rrt;

  std::string failures;
  const auto try_candidate = [&](const Mat3& gram, bool quadratic) -> std::optional<ASolution> {
    const Mat3 root = detail::sqrt_psd_sym3(gram);
    // Fixed reflection first; fall back to reflecting about the axis of the
    // smallest Gram eigenvalue (relevant only at rank deficiency).
    std::vector<Mat3> reflections{Mat3::diag(1.0, 1.0, -1.0)};
    {
      ComplexMatrix c(3, 3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) c(i, j) = gram(i, j);
      Spectrum sp = hermitian_eig(c);
      Vec3 axis{};
      for (std::size_t i = 0; i < 3; ++i) axis[i] = std::real(sp.eigenvectors(i, 2));
      reflections.push_back(Mat3::identity() - 2.0 * Mat3::outer(axis, axis));
    }
    for (const Mat3& j : reflections) {
      const Mat3 a = root * j;
      try {
        assemble_qubit_purification(r, a);
        return ASolution{a, quadratic};
      } catch (const PurityViolation& e) {
        failures += std::string(e.what()) + "; ";
      }
    }
    return std::nullopt;
  };

  if (auto sol = try_candidate(gram_quadratic, true)) return *sol;
  if (auto sol = try_candidate(gram_linear, false)) return *sol;
  throw ValidationFailure("solve_A_system: no Gram candidate yields a valid purification (" +
                          failures + ")");
}

inline Mat3 solve_A_system(const BlochVector& r) {
  return solve_A_system_detailed(r).a;
}

struct ProcrustesInfo {
  bool degenerate = false;  // minimizer non-unique; first SVD branch returned
  Vec3 singular_values{};
};

/// argmax over SO(3) of Tr(S^T h), via the SVD h = U Sigma V^T:
/// S = U diag(1,1,det(UV^T)) V^T.
inline Rotation3 max_trace_rotation(const Mat3& h, ProcrustesInfo* info = nullptr) {
  const Svd3 svd = svd_real3(h);
  const double d = (svd.u * svd.v.transposed()).det();
  const bool flip = d < 0.0;
  Mat3 u = svd.u;
  if (flip)
    for (std::size_t k = 0; k < 3; ++k) u(k, 2) = -u(k, 2);
  if (info) {
    info->singular_values = svd.sigma;
    info->degenerate = flip && (svd.sigma[1] - svd.sigma[2] <= 1e-12);
  }
  return Rotation3(u * svd.v.transposed());
}

/// Orthogonal Procrustes restricted to rotations:
/// argmin over SO(3) of ||b S - c||_HS, solved from the SVD of b^T c.
inline Rotation3 procrustes_so3(const Mat3& b, const Mat3& c, ProcrustesInfo* info = nullptr) {
  return max_trace_rotation(b.transposed() * c, info);
}

enum class PurifyObjective { hs_norm, exact_overlap };

/// D_N(rho,sigma) by explicit minimization over qubit purifications.
///
/// A reference purification of rho is fixed from solve_A_system; the
/// purification of sigma is A' = A~' S with S in SO(3). For hs_norm, S
/// minimizes ||A~' S - A||_HS. For exact_overlap, S maximizes Tr(P_rho
/// P_sigma(S)); expanding the Pauli components gives
///   4 Tr(P_rho P_sigma) = 1 + r.r' + gamma.gamma'(S) + Tr(A^T A'(S)),
/// whose S-dependent part is Tr(S^T A~'^T (I + r' r^T) A~), so the maximizer
/// comes from the same SVD machinery. The hs_norm objective drops the
/// gamma.gamma' coupling, which is why the two can differ away from
/// commuting pairs; the report carries the achieved overlap so callers can
/// measure that gap.
inline DistanceReport dn_via_purification(const DensityMatrix& rho, const DensityMatrix& sigma,
                                          PurifyObjective objective) {
  if (rho.dim() != 2 || sigma.dim() != 2)
    throw DimensionMismatch("dn_via_purification: qubit states required");
  const BlochVector r = to_bloch(rho);
  const BlochVector rp = to_bloch(sigma);
  const Mat3 a_ref = solve_A_system(r);
  const Mat3 a_tilde = solve_A_system(rp);

  Mat3 target;
  if (objective == PurifyObjective::hs_norm) {
    target = a_tilde.transposed() * a_ref;
  } else {
    const Mat3 coupling = Mat3::identity() + Mat3::outer(rp.vec(), r.vec());
    target = a_tilde.transposed() * coupling * a_ref;
  }
  ProcrustesInfo info;
  const Rotation3 s = max_trace_rotation(target, &info);

  const QubitPurification p_rho = assemble_qubit_purification(r, a_ref);
  const QubitPurification p_sigma = assemble_qubit_purification(rp, a_tilde * s.mat());

  ComplexMatrix avg = p_rho.P + p_sigma.P;
  avg *= 0.5;
  const double entropy = von_neumann(DensityMatrix(std::move(avg)));

  const double overlap_sq =
      std::clamp(std::real((p_rho.P * p_sigma.P).trace()), 0.0, 1.0);

  DistanceReport report;
  report.method = Method::purification_min;
  report.value = std::sqrt(std::max(entropy, 0.0));
  report.achieved_overlap = std::sqrt(overlap_sq);
  report.degenerate_alignment = info.degenerate;
  return report;
}

struct ApUpdate {
  Mat3 gram;   // A_p A_p^T
  double det;  // det A_p
};

/// Gram/determinant flow of the purification matrix under Bloch contraction
/// by p: A_p A_p^T = A A^T + f(p) Omega and det A_p = det A - f(p) ||r||^2
/// with f(p) = 1-(1-p)^2 and Omega = ||r||^2 I - r r^T. The prediction is
/// checked against solve_A_system((1-p) r) before being returned.
inline ApUpdate ap_update(const Mat3& a, const BlochVector& r, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("ap_update: p outside [0,1]");
  const double n2 = r.norm() * r.norm();
  const double f = 1.0 - (1.0 - p) * (1.0 - p);
  const Mat3 omega = n2 * Mat3::identity() - Mat3::outer(r.vec(), r.vec());
  const ApUpdate predicted{a * a.transposed() + f * omega, a.det() - f * n2};

  const Mat3 contracted = solve_A_system(BlochVector(scaled(r.vec(), 1.0 - p)));
  const Mat3 reference_gram = contracted * contracted.transposed();
  if (max_abs_diff(predicted.gram, reference_gram) > 1e-9)
    throw ConsistencyFailure(
        "ap_update: Gram update disagrees with the contracted-system solution");
  if (std::abs(contracted.det() - predicted.det) > 1e-9)
    throw ConsistencyFailure(
        "ap_update: determinant update disagrees with the contracted-system solution");
  return predicted;
}

}  // namespace qdist
