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

// Depolarizing-channel distance sweep: D_N(rho, E_p(rho)) over a (r, p) grid,
// one CSV row per point, with the closed form and both purification
// objectives side by side.

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "qdist/channels.hpp"
#include "qdist/distances.hpp"
#include "qdist/errors.hpp"
#include "qdist/purification.hpp"
#include "qdist/states.hpp"

namespace qdist {

struct SweepConfig {
  std::vector<double> r_values{0.2, 0.4, 0.6, 0.8, 0.999};
  int p_steps = 101;  // uniform grid over [0,1] inclusive
  bool do_closed = true;
  bool do_hs = true;
  bool do_exact = true;
  // Recorded for reproducibility; the grid evaluation itself is
  // deterministic and draws nothing from it.
  std::uint64_t seed = 0;
};

namespace detail {

inline std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace detail

inline void write_figure1_csv(std::ostream& out, const SweepConfig& cfg) {
  if (cfg.p_steps < 2) throw DomainError("figure1: p_steps must be >= 2");
  if (cfg.r_values.empty()) throw DomainError("figure1: no r values");
  if (!cfg.do_closed && !cfg.do_hs && !cfg.do_exact)
    throw DomainError("figure1: no methods selected");
  for (double r : cfg.r_values)
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("figure1: r outside [0,1]");

  out << "r,p,dn_closed,dn_procrustes_hs,dn_procrustes_exact,delta_exact_vs_closed\n";
  for (double r : cfg.r_values) {
    const DensityMatrix rho = from_bloch(BlochVector(0.0, 0.0, r));
    for (int i = 0; i < cfg.p_steps; ++i) {
      const double p = static_cast<double>(i) / (cfg.p_steps - 1);
      const DensityMatrix sigma = apply(DepolarizingChannel(p), rho);

      std::string closed, hs, exact, delta;
      double closed_v = 0.0, exact_v = 0.0;
      if (cfg.do_closed) {
        closed_v = dn_mixed_closed(rho, sigma).value;
        closed = detail::format_g12(closed_v);
      }
      if (cfg.do_hs)
        hs = detail::format_g12(
            dn_via_purification(rho, sigma, PurifyObjective::hs_norm).value);
      if (cfg.do_exact) {
        exact_v =
            dn_via_purification(rho, sigma, PurifyObjective::exact_overlap).value;
        exact = detail::format_g12(exact_v);
      }
      if (cfg.do_closed && cfg.do_exact)
        delta = detail::format_g12(exact_v - closed_v);

      out << detail::format_g12(r) << ',' << detail::format_g12(p) << ',' << closed
          << ',' << hs << ',' << exact << ',' << delta << '\n';
    }
  }
}

}  // namespace qdist
