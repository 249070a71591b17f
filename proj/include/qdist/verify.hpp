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

// Randomized self-verification suites behind `qdist verify`. Each suite is
// deterministic for a fixed seed and reports its worst residual, so a run can
// be reproduced byte for byte.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qdist/channels.hpp"
#include "qdist/distances.hpp"
#include "qdist/entropy.hpp"
#include "qdist/purification.hpp"
#include "qdist/states.hpp"

namespace qdist {

struct VerifyOptions {
  long trials = 1000;
  std::size_t dim_lo = 2;
  std::size_t dim_hi = 8;
  std::uint64_t seed = 42;
};

struct SuiteResult {
  std::string name;
  long trials = 0;
  long failures = 0;
  double worst_residual = 0.0;
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

namespace detail {

inline BlochVector random_bloch(double target_norm, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
  const double n = norm(v);
  if (n == 0.0) return BlochVector(0.0, 0.0, target_norm);
  return BlochVector(scaled(v, target_norm / n));
}

inline Rotation3 random_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> cosb(-1.0, 1.0);
  return Rotation3::from_euler_zyz(angle(rng), std::acos(cosb(rng)), angle(rng));
}

template <typename Fn>
inline SuiteResult run_suite(const std::string& name, long trials, Fn&& body) {
  SuiteResult result;
  result.name = name;
  result.trials = trials;
  for (long t = 0; t < trials; ++t) {
    std::string why;
    double residual = 0.0;
    bool ok = true;
    try {
      ok = body(t, residual, why);
    } catch (const Error& e) {
      ok = false;
      why = e.what();
    }
    result.worst_residual = std::max(result.worst_residual, residual);
    if (!ok) {
      ++result.failures;
      if (result.first_failure.empty()) result.first_failure = why;
    }
  }
  return result;
}

}  // namespace detail

/// Symmetry (bit-exact), nonnegativity, bound, identity of indiscernibles and
/// the triangle inequality of the closed-form metric on random triples.
inline SuiteResult verify_metric_axioms(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed * 6364136223846793005ULL + 1);
  std::uniform_int_distribution<std::size_t> dim_pick(opt.dim_lo, opt.dim_hi);
  return detail::run_suite("metric_axioms", opt.trials, [&](long t, double& residual,
                                                            std::string& why) {
    const std::size_t d = dim_pick(rng);
    const DensityMatrix a = random_density(d, rng);
    const DensityMatrix b = (t % 8 == 7) ? a : random_density(d, rng);
    const DensityMatrix c = random_density(d, rng);

    const DistanceReport ab = dn_mixed_closed(a, b);
    const DistanceReport ba = dn_mixed_closed(b, a);
    const DistanceReport ac = dn_mixed_closed(a, c);
    const DistanceReport bc = dn_mixed_closed(b, c);

    if (ab.value != ba.value) {
      why = "symmetry not exact";
      return false;
    }
    if (ab.value < 0.0 || ab.value > 1.0 + 1e-12) {
      why = "value outside [0,1]";
      return false;
    }
    const double triangle_excess = ac.value - ab.value - bc.value;
    residual = std::max(residual, triangle_excess);
    if (triangle_excess > 1e-9) {
      why = "triangle inequality violated";
      return false;
    }
    const bool near_zero = ab.value <= 1e-8;
    const bool near_unit_fidelity = *ab.fidelity >= 1.0 - 1e-8;
    if (near_zero != near_unit_fidelity) {
      why = "identity of indiscernibles failed";
      return false;
    }
    return true;
  });
}

/// Closed form (fidelity route) against the explicit purification minimum.
inline SuiteResult verify_oracle_equivalence(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed * 6364136223846793005ULL + 2);
  return detail::run_suite("oracle_equivalence", opt.trials,
                           [&](long, double& residual, std::string& why) {
                             const DensityMatrix rho = random_density(2, rng);
                             const DensityMatrix sigma = random_density(2, rng);
                             const double closed = dn_mixed_closed(rho, sigma).value;
                             const double minimized =
                                 dn_via_purification(rho, sigma,
                                                     PurifyObjective::exact_overlap)
                                     .value;
                             residual = std::abs(closed - minimized);
                             if (residual > 1e-6) {
                               why = "purification minimum drifts from closed form";
                               return false;
                             }
                             return true;
                           });
}

/// Assembled purifications stay unit-trace idempotent operators reducing to
/// the right qubit state, across the SO(3) orbit and boundary Bloch norms.
inline SuiteResult verify_purification_invariants(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed * 6364136223846793005ULL + 3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double special_norms[] = {0.0, 0.5, 0.999, 1.0};
  return detail::run_suite(
      "purification_invariants", opt.trials, [&](long t, double& residual, std::string& why) {
        const double target =
            (t % 5 < 4) ? special_norms[t % 5] : unif(rng);
        const BlochVector r = detail::random_bloch(target, rng);
        const Rotation3 s = detail::random_rotation(rng);
        const Mat3 a = solve_A_system(r) * s.mat();
        const QubitPurification pur = assemble_qubit_purification(r, a);

        const double trace_residual = std::abs(pur.P.trace() - cplx{1.0, 0.0});
        const double purity_residual = max_abs_diff(pur.P * pur.P, pur.P);
        const double reduce_residual =
            max_abs_diff(partial_trace_aux(pur.P, 2, 2), from_bloch(r).mat());
        residual = std::max({trace_residual, purity_residual, reduce_residual});
        if (trace_residual > 1e-9 || purity_residual > 1e-8 || reduce_residual > 1e-9) {
          why = "purification invariant out of tolerance";
          return false;
        }
        return true;
      });
}

/// D_N never grows under the depolarizing channel.
inline SuiteResult verify_contractivity(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed * 6364136223846793005ULL + 4);
  return detail::run_suite(
      "contractivity", opt.trials, [&](long, double& residual, std::string& why) {
        const DensityMatrix rho = random_density(2, rng);
        const DensityMatrix sigma = random_density(2, rng);
        const double before = dn_mixed_closed(rho, sigma).value;
        for (double p : {0.1, 0.5, 0.9}) {
          const DepolarizingChannel ch(p);
          const double after = dn_mixed_closed(apply(ch, rho), apply(ch, sigma)).value;
          residual = std::max(residual, after - before);
          if (after > before + 1e-9) {
            why = "contractivity violated";
            return false;
          }
        }
        return true;
      });
}

/// Entropy of a mixture never exceeds mixed member entropy plus mixing
/// entropy (gap >= 0 up to rounding).
inline SuiteResult verify_mixing_gap(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed * 6364136223846793005ULL + 5);
  std::uniform_int_distribution<std::size_t> dim_pick(opt.dim_lo,
                                                      std::min<std::size_t>(opt.dim_hi, 4));
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  return detail::run_suite(
      "mixing_gap", opt.trials, [&](long, double& residual, std::string& why) {
        const std::size_t d = dim_pick(rng);
        const double w = unif(rng);
        const Ensemble e(ProbDist({w, 1.0 - w}),
                         {random_density(d, rng), random_density(d, rng)});
        const double gap = mixing_gap(e);
        residual = std::max(residual, -gap);
        if (gap < -1e-10) {
          why = "mixing gap negative";
          return false;
        }
        return true;
      });
}

/// Second-order overlap expansion for neighboring pure states.
inline SuiteResult verify_overlap_deficit(const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed * 6364136223846793005ULL + 6);
  std::uniform_int_distribution<std::size_t> dim_pick(opt.dim_lo, opt.dim_hi);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  return detail::run_suite(
      "overlap_deficit", opt.trials, [&](long, double& residual, std::string& why) {
        const std::size_t d = dim_pick(rng);
        // Weights bounded away from zero keep the expansion's third-order
        // remainder below the 1e-3 ratio tolerance.
        std::vector<double> p(d);
        double sum = 0.0;
        for (double& x : p) {
          x = 0.1 + unif(rng);
          sum += x;
        }
        std::vector<cplx> amps(d);
        for (std::size_t j = 0; j < d; ++j) {
          p[j] /= sum;
          const double phase = 2.0 * M_PI * unif(rng);
          amps[j] = std::sqrt(p[j]) * cplx{std::cos(phase), std::sin(phase)};
        }
        std::vector<double> dp(d);
        double mean = 0.0;
        for (double& x : dp) {
          x = gauss(rng);
          mean += x;
        }
        mean /= static_cast<double>(d);
        double n2 = 0.0;
        for (double& x : dp) {
          x -= mean;
          n2 += x * x;
        }
        const double scale = 1e-5 / std::sqrt(n2);
        for (double& x : dp) x *= scale;

        const OverlapDeficit od =
            neighboring_overlap_deficit(PureState::normalized(std::move(amps)), dp);
        const double ratio = od.actual / od.predicted;
        residual = std::max(residual, std::abs(ratio - 1.0));
        if (std::abs(ratio - 1.0) > 1e-3) {
          why = "overlap deficit expansion out of tolerance";
          return false;
        }
        return true;
      });
}

inline std::vector<SuiteResult> run_verification(const VerifyOptions& opt) {
  if (opt.trials < 1) throw DomainError("verify: trials must be >= 1");
  if (opt.dim_lo < 2 || opt.dim_hi < opt.dim_lo)
    throw DomainError("verify: dims must satisfy 2 <= lo <= hi");
  return {verify_metric_axioms(opt),          verify_oracle_equivalence(opt),
          verify_purification_invariants(opt), verify_contractivity(opt),
          verify_mixing_gap(opt),              verify_overlap_deficit(opt)};
}

}  // namespace qdist
