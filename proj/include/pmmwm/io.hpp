// Copyright 2026 The pmmwm Authors
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

// Text formats. Vertices and parts are 1-indexed on disk, 0-indexed in
// memory.
//
// Instance:
//   n1 n2 m ubar edge_count
//   u v w            (edge_count lines, w with at most 3 fraction digits)
//
// Solution:
//   objective
//   v_1 ... v_n1     (matched right vertex of each left vertex)
//   k_1 ... k_n1     (part of each left vertex)

#ifndef PMMWM_IO_HPP_
#define PMMWM_IO_HPP_

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmmwm/core.hpp"
#include "pmmwm/error.hpp"
#include "pmmwm/weight.hpp"

namespace pmmwm {

struct Instance {
  BipartiteGraph graph;
  PartIndex m = 1;
  std::size_t ubar = 0;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

// Reads the next non-blank line; returns false at EOF.
inline bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_ws(line).empty()) return true;
  }
  return false;
}

}  // namespace detail

inline void write_instance(std::ostream& out, const Instance& inst) {
  const auto& g = inst.graph;
  out << g.left_size() << ' ' << g.right_size() << ' ' << inst.m << ' '
      << inst.ubar << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u + 1 << ' ' << e.v + 1 << ' ' << format_milli(e.weight) << '\n';
  }
}

// Validates the header, every edge line, weight range [0, 1000], duplicate
// pairs (ParseError with the line number) and then feasibility: m * ubar >= n1
// and a matching saturating U (Error kInfeasible).
inline Instance read_instance(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_line(in, line, line_no)) throw ParseError(1, "empty file");
  const auto head = detail::split_ws(line);
  std::size_t n1 = 0, n2 = 0, ubar = 0, count = 0;
  PartIndex m = 0;
  if (head.size() != 5 || !detail::parse_int(head[0], n1) ||
      !detail::parse_int(head[1], n2) || !detail::parse_int(head[2], m) ||
      !detail::parse_int(head[3], ubar) || !detail::parse_int(head[4], count)) {
    throw ParseError(line_no, "expected header 'n1 n2 m ubar edge_count'");
  }
  if (n1 == 0 || n1 > n2) throw ParseError(line_no, "need 1 <= n1 <= n2");
  if (m < 1 || ubar < 1) throw ParseError(line_no, "need m >= 1 and ubar >= 1");
  if (count > n1 * n2) throw ParseError(line_no, "edge_count exceeds n1 * n2");

  std::vector<Edge> edges;
  edges.reserve(count);
  std::vector<std::size_t> edge_line;
  edge_line.reserve(count);
  while (detail::next_line(in, line, line_no)) {
    const auto tok = detail::split_ws(line);
    std::size_t u = 0, v = 0;
    if (tok.size() != 3 || !detail::parse_int(tok[0], u) ||
        !detail::parse_int(tok[1], v)) {
      throw ParseError(line_no, "expected 'u v w'");
    }
    if (u < 1 || u > n1 || v < 1 || v > n2) {
      throw ParseError(line_no, "vertex index out of range");
    }
    const auto w = parse_milli(tok[2]);
    if (!w || *w > kMaxInputWeight) {
      throw ParseError(line_no, "weight must be a decimal in [0, 1000] with "
                                "at most 3 fraction digits");
    }
    if (edges.size() == count) {
      throw ParseError(line_no, "more edge lines than edge_count");
    }
    edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), *w});
    edge_line.push_back(line_no);
  }
  if (edges.size() != count) {
    throw ParseError(line_no + 1, "expected " + std::to_string(count) +
                                      " edges, found " +
                                      std::to_string(edges.size()));
  }
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (edges[a].u != edges[b].u) return edges[a].u < edges[b].u;
    if (edges[a].v != edges[b].v) return edges[a].v < edges[b].v;
    return a < b;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Edge& a = edges[order[i - 1]];
    const Edge& b = edges[order[i]];
    if (a.u == b.u && a.v == b.v) {
      throw ParseError(edge_line[order[i]], "duplicate edge");
    }
  }

  Instance inst{BipartiteGraph(n1, n2, std::move(edges)), m, ubar};
  if (static_cast<std::size_t>(m) * ubar < n1) {
    throw Error(ErrorCode::kInfeasible, "m * ubar < n1");
  }
  if (!has_perfect_matching_on_u(inst.graph)) {
    throw Error(ErrorCode::kInfeasible, "no matching saturates U");
  }
  return inst;
}

inline void write_instance(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  write_instance(out, inst);
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

inline Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_instance(in);
}

inline void write_solution(std::ostream& out, const Solution& s) {
  out << format_milli(s.objective) << '\n';
  for (std::size_t u = 0; u < s.matching.match_of_u.size(); ++u) {
    out << (u ? " " : "") << s.matching.match_of_u[u] + 1;
  }
  out << '\n';
  for (std::size_t u = 0; u < s.partition.part_of_u.size(); ++u) {
    out << (u ? " " : "") << s.partition.part_of_u[u] + 1;
  }
  out << '\n';
}

// m, ubar and n2 come from the instance; the file only stores the arrays.
// Indices are not range-checked here so that validate_solution can report
// which constraint they break.
inline Solution read_solution(std::istream& in, std::size_t n1, std::size_t n2,
                              PartIndex m, std::size_t ubar) {
  std::string line;
  std::size_t line_no = 0;
  Solution s;
  if (!detail::next_line(in, line, line_no)) throw ParseError(1, "empty file");
  const auto obj = detail::split_ws(line);
  const auto objective = obj.size() == 1 ? parse_milli(obj[0]) : std::nullopt;
  if (!objective) throw ParseError(line_no, "expected objective decimal");
  s.objective = *objective;

  auto read_row = [&](const char* what) {
    if (!detail::next_line(in, line, line_no)) {
      throw ParseError(line_no + 1, std::string("missing ") + what + " line");
    }
    const auto tok = detail::split_ws(line);
    if (tok.size() != n1) {
      throw ParseError(line_no, std::string("expected ") + std::to_string(n1) +
                                    " " + what + " indices");
    }
    std::vector<std::int32_t> row(n1);
    for (std::size_t i = 0; i < n1; ++i) {
      if (!detail::parse_int(tok[i], row[i])) {
        throw ParseError(line_no, std::string("bad ") + what + " index");
      }
      --row[i];
    }
    return row;
  };
  s.matching.match_of_u = read_row("matching");
  s.matching.match_of_v.assign(n2, kNoVertex);
  for (std::size_t u = 0; u < n1; ++u) {
    const Vertex v = s.matching.match_of_u[u];
    if (v >= 0 && static_cast<std::size_t>(v) < n2) {
      s.matching.match_of_v[static_cast<std::size_t>(v)] = static_cast<Vertex>(u);
    }
  }
  s.partition.part_of_u = read_row("partition");
  s.partition.m = m;
  s.partition.ubar = ubar;
  return s;
}

}  // namespace pmmwm

#endif  // PMMWM_IO_HPP_
