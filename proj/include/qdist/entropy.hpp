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
#include <utility>
#include <vector>

#include "qdist/errors.hpp"
#include "qdist/linalg.hpp"
#include "qdist/states.hpp"

namespace qdist {

// All entropies are in bits (log base 2).

/// Values below this contribute 0 to entropy sums (the 0 log 0 convention
/// applied to rounding noise).
inline constexpr double kEntropyFloor = 1e-12;

/// Support cutoff for the relative-entropy domain check.
inline constexpr double kSupportTolerance = 1e-10;

/// Discrete probability distribution: p_i >= 0, sum = 1 within 1e-10.
class ProbDist {
 public:
  explicit ProbDist(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw ValidationFailure("ProbDist: empty");
    double sum = 0.0;
    for (double& x : p_) {
      if (x < -1e-12) throw NegativeProbability("ProbDist: negative entry");
      if (x < 0.0) x = 0.0;
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-10)
      throw ValidationFailure("ProbDist: entries do not sum to 1 within 1e-10");
  }

  std::size_t size() const { return p_.size(); }
  const std::vector<double>& values() const { return p_; }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

/// H_S(P) = -sum p_i log2 p_i
inline double shannon(const ProbDist& p) {
  double h = 0.0;
  for (double x : p.values())
    if (x > kEntropyFloor) h -= x * std::log2(x);
  return h < 0.0 ? 0.0 : h;
}

/// H_N(rho) = -Tr(rho log2 rho), the Shannon entropy of the spectrum.
/// Eigenvalues below the floor are dropped and the remainder renormalized,
/// so exact projectors give exactly 0.
inline double von_neumann(const DensityMatrix& rho) {
  Spectrum sp = hermitian_eig(rho.mat());
  std::vector<double> kept;
  kept.reserve(sp.eigenvalues.size());
  double sum = 0.0;
  for (double lam : sp.eigenvalues)
    if (lam > kEntropyFloor) {
      kept.push_back(lam);
      sum += lam;
    }
  if (kept.empty()) return 0.0;
  double h = 0.0;
  for (double lam : kept) {
    const double p = lam / sum;
    h -= p * std::log2(p);
  }
  return h < 0.0 ? 0.0 : h;
}

/// S(rho,sigma) = Tr[rho(log2 rho - log2 sigma)].
/// Throws SupportViolation unless supp(rho) lies inside supp(sigma).
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch("relative_entropy: dimension mismatch");

  Spectrum sr = hermitian_eig(rho.mat());
  Spectrum ss = hermitian_eig(sigma.mat());
  const std::size_t d = rho.dim();

  double val = 0.0;
  for (double lam : sr.eigenvalues)
    if (lam > kEntropyFloor) val += lam * std::log2(lam);

  for (std::size_t j = 0; j < d; ++j) {
    const double mu = ss.eigenvalues[j];
    // weight = <w_j| rho |w_j>
    double weight = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      cplx acc{0.0, 0.0};
      for (std::size_t b = 0; b < d; ++b)
        acc += rho.mat()(a, b) * ss.eigenvectors(b, j);
      weight += std::real(std::conj(ss.eigenvectors(a, j)) * acc);
    }
    if (mu < kSupportTolerance) {
      if (weight >= kSupportTolerance)
        throw SupportViolation(
            "relative_entropy: support of sigma does not cover rho");
      continue;  // negligible mass on a null direction
    }
    if (weight > 0.0) val -= weight * std::log2(mu);
  }
  // Klein inequality guarantees nonnegativity; trim rounding noise.
  return val < 0.0 ? 0.0 : val;
}

/// Weighted family of equal-dimension states.
struct Ensemble {
  ProbDist weights;
  std::vector<DensityMatrix> members;

  Ensemble(ProbDist w, std::vector<DensityMatrix> m)
      : weights(std::move(w)), members(std::move(m)) {
    if (weights.size() != members.size())
      throw ValidationFailure("Ensemble: weight/member count mismatch");
    for (const DensityMatrix& rho : members)
      if (rho.dim() != members.front().dim())
        throw DimensionMismatch("Ensemble: members have different dimensions");
  }
};

/// sum_i p_i rho_i
inline DensityMatrix mixture(const Ensemble& e) {
  const std::size_t d = e.members.front().dim();
  ComplexMatrix m(d, d);
  for (std::size_t k = 0; k < e.members.size(); ++k)
    m += e.weights[k] * e.members[k].mat();
  return DensityMatrix(std::move(m));
}

/// sum_i p_i H_N(rho_i) + H_S(p) - H_N(sum_i p_i rho_i). Nonnegative, and
/// zero exactly when the members have mutually orthogonal supports.
inline double mixing_gap(const Ensemble& e) {
  double avg_member_entropy = 0.0;
  for (std::size_t k = 0; k < e.members.size(); ++k)
    avg_member_entropy += e.weights[k] * von_neumann(e.members[k]);
  return avg_member_entropy + shannon(e.weights) - von_neumann(mixture(e));
}

}  // namespace qdist
