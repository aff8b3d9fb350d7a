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

#ifndef PMMWM_WEIGHT_HPP_
#define PMMWM_WEIGHT_HPP_

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pmmwm {

// Edge weights are exact integers in milli-units: a real weight w is stored as
// round(1000 * w). All matching arithmetic stays in integers so that the
// equality-subgraph test in the Hungarian method is exact.
using Weight = std::int64_t;

inline constexpr Weight kMilliPerUnit = 1000;

// Largest weight accepted from files or generators (1000.000).
inline constexpr Weight kMaxInputWeight = 1000 * kMilliPerUnit;

// Parses a non-negative decimal with at most three fraction digits
// ("12", "12.5", "0.125") into milli-units. Returns nullopt on anything else.
inline std::optional<Weight> parse_milli(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  std::string_view frac;
  if (dot != std::string_view::npos) {
    frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 3) return std::nullopt;
  }
  if (whole.empty()) return std::nullopt;
  for (char c : whole) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  for (char c : frac) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  // Keep well clear of int64 overflow when scaling.
  if (whole.size() > 15) return std::nullopt;
  Weight integral = 0;
  std::from_chars(whole.data(), whole.data() + whole.size(), integral);
  Weight fraction = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    fraction = fraction * 10 + (i < frac.size() ? frac[i] - '0' : 0);
  }
  return integral * kMilliPerUnit + fraction;
}

// Renders milli-units with exactly three fraction digits; the inverse of
// parse_milli for non-negative values.
inline std::string format_milli(Weight value) {
  std::string out;
  if (value < 0) {
    out.push_back('-');
    value = -value;
  }
  out += std::to_string(value / kMilliPerUnit);
  out.push_back('.');
  const auto frac = static_cast<int>(value % kMilliPerUnit);
  out.push_back(static_cast<char>('0' + frac / 100));
  out.push_back(static_cast<char>('0' + frac / 10 % 10));
  out.push_back(static_cast<char>('0' + frac % 10));
  return out;
}

}  // namespace pmmwm

#endif  // PMMWM_WEIGHT_HPP_
