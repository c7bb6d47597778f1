// Copyright 2026 The cpnkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON wire format. Complex numbers are [re, im] pairs (a bare number is
// read as real), matrices are row-major lists of rows.
//
//   algebra      {"blocks": [d1, ...]}
//   element      {"blocks": [matrix, ...]}
//   CPn map      {"n": n, "codomain_dim": m, "domain": algebra,
//                 "entries": [[{"choi_blocks": [matrix, ...]}, ...], ...]}
//   dilation     {"space_dim": N, "multiplicities": [...], "images": [...],
//                 "isometries": [...]}
//   tower        {"levels": [algebra, ...], "connecting": [matrix, ...]}
//   continuous   {"tower": tower, "level": k, "map": CPn map}
//
// The Choi block of a map on block k is sum_pq E_pq (x) phi(e_pq^(k)).
// Every parse failure throws ValidationError.

#ifndef CPNKIT_IO_HPP
#define CPNKIT_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cpn/prostar.hpp"
#include "cpn/radon.hpp"
#include "cpn/stinespring.hpp"

namespace cpn {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

inline Index index_field(const json& j, const char* key, const char* what) {
  const json& v = field(j, key, what);
  if (!v.is_number_integer()) throw ValidationError(std::string(what) + ": \"" + key + "\" must be an integer");
  return v.get<Index>();
}

inline const json& array_field(const json& j, const char* key, const char* what) {
  const json& v = field(j, key, what);
  if (!v.is_array()) throw ValidationError(std::string(what) + ": \"" + key + "\" must be an array");
  return v;
}

}  // namespace detail

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ValidationError("complex number must be [re, im]");
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// An empty list is read as 0 x cols (cols defaults to 0).
inline Matrix matrix_from_json(const json& j, Index empty_cols = 0) {
  if (!j.is_array()) throw ValidationError("matrix must be a list of rows");
  if (j.empty()) return Matrix(0, empty_cols);
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array()) throw ValidationError("matrix rows must be lists");
  const Index cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ValidationError("matrix rows must all have the same length");
    }
    for (Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

inline json to_json(const CStarAlgebra& a) { return json{{"blocks", a.block_dims()}}; }

inline CStarAlgebra algebra_from_json(const json& j) {
  const json& blocks = detail::array_field(j, "blocks", "algebra");
  std::vector<Index> dims;
  for (const auto& b : blocks) {
    if (!b.is_number_integer()) throw ValidationError("algebra: block sizes must be integers");
    dims.push_back(b.get<Index>());
  }
  return CStarAlgebra(std::move(dims));
}

inline json to_json(const AlgebraElement& a) {
  json blocks = json::array();
  for (const auto& b : a.blocks()) blocks.push_back(matrix_to_json(b));
  return json{{"blocks", blocks}};
}

inline AlgebraElement element_from_json(const CStarAlgebra& a, const json& j) {
  const json& blocks = detail::array_field(j, "blocks", "element");
  std::vector<Matrix> mats;
  for (const auto& b : blocks) mats.push_back(matrix_from_json(b));
  return AlgebraElement(a, std::move(mats));
}

inline json to_json(const CPnMap& rho) {
  json entries = json::array();
  for (Index i = 0; i < rho.order(); ++i) {
    json row = json::array();
    for (Index j = 0; j < rho.order(); ++j) {
      json blocks = json::array();
      for (const auto& c : rho(i, j).choi_blocks()) blocks.push_back(matrix_to_json(c));
      row.push_back(json{{"choi_blocks", blocks}});
    }
    entries.push_back(std::move(row));
  }
  return json{{"n", rho.order()}, {"codomain_dim", rho.codomain_dim()}, {"domain", to_json(rho.domain())},
              {"entries", entries}};
}

inline CPnMap cpn_map_from_json(const json& j) {
  const Index n = detail::index_field(j, "n", "map");
  const Index m = detail::index_field(j, "codomain_dim", "map");
  if (n < 1 || m < 1) throw ValidationError("map: n and codomain_dim must be positive");
  const CStarAlgebra a = algebra_from_json(detail::field(j, "domain", "map"));
  const json& entries = detail::array_field(j, "entries", "map");
  if (static_cast<Index>(entries.size()) != n) throw ValidationError("map: entries must have n rows");
  std::vector<LinearMap> maps;
  for (const auto& row : entries) {
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw ValidationError("map: every entries row must have n maps");
    }
    for (const auto& e : row) {
      std::vector<Matrix> blocks;
      for (const auto& c : detail::array_field(e, "choi_blocks", "map entry")) blocks.push_back(matrix_from_json(c));
      maps.emplace_back(a, m, std::move(blocks));
    }
  }
  return CPnMap(n, std::move(maps));
}

inline json to_json(const StinespringDilation& d) {
  json images = json::array();
  for (const auto& img : d.rep.images()) images.push_back(matrix_to_json(img));
  json isometries = json::array();
  for (const auto& v : d.isometries) isometries.push_back(matrix_to_json(v));
  json mult = d.rep.multiplicities() ? json(*d.rep.multiplicities()) : json::array();
  return json{{"space_dim", d.space_dim()}, {"multiplicities", mult}, {"images", images}, {"isometries", isometries}};
}

inline json to_json(const Tower& t) {
  json levels = json::array();
  for (const auto& a : t.levels()) levels.push_back(to_json(a));
  json connecting = json::array();
  for (const auto& c : t.connecting()) connecting.push_back(matrix_to_json(c));
  return json{{"levels", levels}, {"connecting", connecting}};
}

inline Tower tower_from_json(const json& j, double tol = 1e-9) {
  std::vector<CStarAlgebra> levels;
  for (const auto& a : detail::array_field(j, "levels", "tower")) levels.push_back(algebra_from_json(a));
  std::vector<Matrix> connecting;
  const json& maps = detail::array_field(j, "connecting", "tower");
  for (std::size_t p = 0; p < maps.size(); ++p) {
    const Index cols = p + 1 < levels.size() ? levels[p + 1].dimension() : 0;
    connecting.push_back(matrix_from_json(maps[p], cols));
  }
  return make_tower(std::move(levels), std::move(connecting), tol);
}

inline json to_json(const ContinuousCPnMap& m) {
  return json{{"tower", to_json(m.tower)}, {"level", m.level}, {"map", to_json(m.base)}};
}

inline ContinuousCPnMap continuous_map_from_json(const json& j, double tol = 1e-9) {
  Tower t = tower_from_json(detail::field(j, "tower", "continuous map"), tol);
  const Index level = detail::index_field(j, "level", "continuous map");
  return make_continuous_map(std::move(t), level, cpn_map_from_json(detail::field(j, "map", "continuous map")));
}

inline json to_json(const RadonNikodym& rn) {
  return json{{"T", matrix_to_json(rn.t)},
              {"certificates",
               {{"commutes", rn.commutes},
                {"spectrum", json::array({rn.spectrum_lo, rn.spectrum_hi})},
                {"reconstruction", rn.reconstruction}}}};
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

inline CPnMap read_cpn_map(const std::string& path) {
  try {
    return cpn_map_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace cpn

#endif  // CPNKIT_IO_HPP
