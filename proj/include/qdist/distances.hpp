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
#include <cmath>
#include <optional>
#include <vector>

#include "qdist/entropy.hpp"
#include "qdist/errors.hpp"
#include "qdist/linalg.hpp"
#include "qdist/states.hpp"

namespace qdist {

enum class Method { closed_form, purification_min };

struct DistanceReport {
  double value = 0.0;
  Method method = Method::closed_form;
  // Diagnostics, filled when the computation produces them.
  std::optional<double> fidelity;          // F(rho,sigma) used by the closed form
  std::optional<double> achieved_overlap;  // |<psi|phi>| reached by a minimizer
  std::optional<bool> degenerate_alignment;
};

/// Phi(x) = -((1-x)/2) log2((1-x)/2) - ((1+x)/2) log2((1+x)/2), the binary
/// entropy of the overlap. Decreasing on [0,1], Phi(0)=1, Phi(1)=0.
/// Inputs are clamped from [-1e-12, 1+1e-12]; anything farther is an error.
inline double phi(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12)
    throw DomainError("phi: argument outside [0,1] tolerance band");
  x = std::clamp(x, 0.0, 1.0);
  const double a = (1.0 - x) / 2.0;
  const double b = (1.0 + x) / 2.0;
  double s = 0.0;
  if (a > 0.0) s -= a * std::log2(a);
  if (b > 0.0 && b < 1.0) s -= b * std::log2(b);
  return s < 0.0 ? 0.0 : s;
}

namespace detail {

/// Entropy of the equal-weight average of two projectors.
inline double entropy_of_average(const DensityMatrix& rho, const DensityMatrix& sigma) {
  ComplexMatrix avg = rho.mat() + sigma.mat();
  avg *= 0.5;
  return von_neumann(DensityMatrix(std::move(avg)));
}

/// Deterministic total order on the raw entries; used to canonicalize
/// argument order so symmetric distances are symmetric bit-for-bit.
inline bool matrix_precedes(const ComplexMatrix& a, const ComplexMatrix& b) {
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    const cplx &x = a.data()[k], &y = b.data()[k];
    if (std::real(x) != std::real(y)) return std::real(x) < std::real(y);
    if (std::imag(x) != std::imag(y)) return std::imag(x) < std::imag(y);
  }
  return false;
}

}  // namespace detail

/// D_N between pure states: sqrt of the entropy of the projector average,
/// equal to sqrt(Phi(|<psi|phi>|)). Both routes are evaluated and must agree;
/// the Phi route is returned (it stays accurate as the overlap approaches 1).
inline double dn_pure(const PureState& psi, const PureState& phi_state) {
  if (psi.dim() != phi_state.dim())
    throw DimensionMismatch("dn_pure: dimension mismatch");
  const double overlap = std::clamp(std::abs(inner(psi, phi_state)), 0.0, 1.0);
  const double via_phi = phi(overlap);
  const double via_entropy = detail::entropy_of_average(projector(psi), projector(phi_state));
  if (std::abs(via_phi - via_entropy) > 1e-9)
    throw Error("dn_pure: entropy-of-average and Phi(overlap) routes disagree");
  return std::sqrt(via_phi);
}

/// Quantum Jensen-Shannon divergence,
/// H_N((rho+sigma)/2) - H_N(rho)/2 - H_N(sigma)/2.
inline double qjsd(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("qjsd: dimension mismatch");
  const double v = detail::entropy_of_average(rho, sigma) -
                   0.5 * von_neumann(rho) - 0.5 * von_neumann(sigma);
  return std::clamp(v, 0.0, 1.0);
}

/// F(rho,sigma) = Tr sqrt(rho^{1/2} sigma rho^{1/2}). This is the non-squared
/// convention; some texts call F^2 the fidelity.
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch("fidelity: dimension mismatch");
  if (rho.mat().data() == sigma.mat().data()) return 1.0;  // exact identity
  const ComplexMatrix root = mat_sqrt_psd(rho.mat());
  ComplexMatrix inner_op = root * sigma.mat() * root;
  // Rounding can leave a tiny anti-Hermitian part; drop it.
  inner_op = 0.5 * (inner_op + inner_op.adjoint());
  Spectrum sp = hermitian_eig(inner_op);
  double f = 0.0;
  for (double lam : sp.eigenvalues)
    if (lam > 0.0) f += std::sqrt(lam);
  return std::clamp(f, 0.0, 1.0);
}

/// D_B = sqrt(2 - 2 F)
inline double bures(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return std::sqrt(std::max(2.0 - 2.0 * fidelity(rho, sigma), 0.0));
}

/// d_W = arccos(|<psi|phi>|), the angle between rays.
inline double wootters(const PureState& psi, const PureState& phi_state) {
  const double overlap = std::clamp(std::abs(inner(psi, phi_state)), 0.0, 1.0);
  return std::acos(overlap);
}

/// Closed form D_N(rho,sigma) = sqrt(Phi(F(rho,sigma))). Arguments are
/// ordered canonically first so the result is symmetric bit-for-bit.
inline DistanceReport dn_mixed_closed(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch("dn_mixed_closed: dimension mismatch");
  const bool swap = detail::matrix_precedes(sigma.mat(), rho.mat());
  const DensityMatrix& a = swap ? sigma : rho;
  const DensityMatrix& b = swap ? rho : sigma;
  DistanceReport report;
  report.method = Method::closed_form;
  report.fidelity = fidelity(a, b);
  report.value = std::sqrt(phi(*report.fidelity));
  return report;
}

struct OverlapDeficit {
  double actual;     // 1 - |<psi|psi_tilde>|
  double predicted;  // (1/8) sum dp_j^2 / p_j
};

/// Perturbs the amplitude weights of psi by dp (phases fixed) and compares
/// the exact overlap deficit with its second-order expansion.
inline OverlapDeficit neighboring_overlap_deficit(const PureState& psi,
                                                  const std::vector<double>& dp) {
  if (dp.size() != psi.dim())
    throw DimensionMismatch("neighboring_overlap_deficit: dp size mismatch");
  double dp_sum = 0.0;
  for (double x : dp) dp_sum += x;
  if (std::abs(dp_sum) > 1e-12)
    throw DomainError("neighboring_overlap_deficit: dp must sum to 0");

  constexpr double kMinProb = 1e-6;
  double overlap = 0.0, predicted = 0.0;
  for (std::size_t j = 0; j < psi.dim(); ++j) {
    const double p = std::norm(psi[j]);
    const double q = p + dp[j];
    if (q < 0.0)
      throw NegativeProbability("neighboring_overlap_deficit: p_j + dp_j < 0");
    if (dp[j] != 0.0) {
      if (p <= kMinProb)
        throw DomainError(
            "neighboring_overlap_deficit: perturbed component below 1e-6");
      predicted += dp[j] * dp[j] / p;
    }
    overlap += std::sqrt(p * q);  // phases cancel in <psi|psi_tilde>
  }
  return OverlapDeficit{1.0 - std::min(overlap, 1.0), predicted / 8.0};
}

}  // namespace qdist
