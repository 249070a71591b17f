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

#include "qdist/errors.hpp"
#include "qdist/states.hpp"

namespace qdist {

/// E_p(rho) = p I/2 + (1-p) rho: fully mixes with probability p.
class DepolarizingChannel {
 public:
  explicit DepolarizingChannel(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0))
      throw DomainError("DepolarizingChannel: p outside [0,1]");
  }

  double p() const { return p_; }
  /// f(p) = 1 - (1-p)^2, the Gram-update factor of the purification flow.
  double f() const { return 1.0 - (1.0 - p_) * (1.0 - p_); }

 private:
  double p_;
};

/// r' = (1-p) r
inline BlochVector contract_bloch(const BlochVector& r, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("contract_bloch: p outside [0,1]");
  return BlochVector(scaled(r.vec(), 1.0 - p));
}

/// Applies the channel to a qubit state. Computed as the operator convex
/// combination and cross-checked against the Bloch contraction; the two
/// encodings must agree to rounding.
inline DensityMatrix apply(const DepolarizingChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionMismatch("DepolarizingChannel: qubit input required");
  const double p = ch.p();
  ComplexMatrix out = ComplexMatrix::identity(2);
  out *= p / 2.0;
  out += (1.0 - p) * rho.mat();
  DensityMatrix result(std::move(out));

  const DensityMatrix via_bloch = from_bloch(contract_bloch(to_bloch(rho), p));
  if (max_abs_diff(result.mat(), via_bloch.mat()) > 1e-12)
    throw Error("DepolarizingChannel: operator and Bloch encodings disagree");
  return result;
}

}  // namespace qdist
