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

// State text format:
//   line 1: `dim n`, then n lines of n whitespace-separated entries `a+bi`
// or a single line
//   `bloch x y z`
// Parsers reject states violating the DensityMatrix invariants with a
// diagnostic naming the violated invariant.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qdist/errors.hpp"
#include "qdist/states.hpp"

namespace qdist {

/// Parse `a`, `a+bi`, `a-bi` or `bi` (decimal ASCII, exponents allowed).
inline cplx parse_complex(const std::string& token) {
  if (token.empty()) throw ParseError("empty complex entry");
  std::string body = token;
  bool has_imag_unit = false;
  if (body.back() == 'i' || body.back() == 'I') {
    has_imag_unit = true;
    body.pop_back();
  }
  // Split at the last top-level sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    const char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto to_double = [&token](const std::string& s) -> double {
    if (s.empty() || s == "+" || s == "-")
      return s == "-" ? -1.0 : 1.0;  // bare `i`, `+i`, `-i`
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw ParseError("malformed number in complex entry '" + token + "'");
    }
    if (pos != s.size())
      throw ParseError("trailing characters in complex entry '" + token + "'");
    return v;
  };

  if (!has_imag_unit) {
    if (split != std::string::npos)
      throw ParseError("complex entry '" + token + "' missing imaginary unit");
    return cplx{to_double(body), 0.0};
  }
  if (split == std::string::npos) return cplx{0.0, to_double(body)};
  return cplx{to_double(body.substr(0, split)), to_double(body.substr(split))};
}

inline std::string format_complex(const cplx& z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", std::real(z), std::imag(z));
  return buf;
}

inline DensityMatrix parse_state_text(std::istream& in) {
  std::string line;
  do {
    if (!std::getline(in, line)) throw ParseError("empty state input");
    const auto first = line.find_first_not_of(" \t\r");
    line = (first == std::string::npos) ? std::string{} : line.substr(first);
  } while (line.empty() || line[0] == '#');

  std::istringstream head(line);
  std::string kind;
  head >> kind;

  if (kind == "bloch") {
    Vec3 r{};
    if (!(head >> r[0] >> r[1] >> r[2]))
      throw ParseError("bloch line needs three real components");
    std::string extra;
    if (head >> extra) throw ParseError("trailing tokens on bloch line");
    try {
      return from_bloch(BlochVector(r));
    } catch (const BlochNormExceeded&) {
      throw ParseError("bloch vector norm exceeds 1");
    }
  }

  if (kind != "dim") throw ParseError("state input must start with 'dim' or 'bloch'");
  long n = 0;
  if (!(head >> n) || n < 1) throw ParseError("dim line needs a positive integer");
  const auto d = static_cast<std::size_t>(n);

  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!std::getline(in, line))
      throw ParseError("unexpected end of input inside matrix rows");
    std::istringstream row(line);
    std::string token;
    for (std::size_t j = 0; j < d; ++j) {
      if (!(row >> token)) throw ParseError("matrix row has too few entries");
      m(i, j) = parse_complex(token);
    }
    std::string extra;
    if (row >> extra) throw ParseError("matrix row has too many entries");
  }
  // Let the DensityMatrix constructor name the violated invariant.
  return DensityMatrix(std::move(m));
}

inline void write_state_text(std::ostream& out, const DensityMatrix& rho) {
  out << "dim " << rho.dim() << "\n";
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      if (j) out << ' ';
      out << format_complex(rho.mat()(i, j));
    }
    out << "\n";
  }
}

inline DensityMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file '" + path + "'");
  return parse_state_text(in);
}

}  // namespace qdist
