// Copyright 2026 The paramosc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PARAMOSC_FORMAT_HPP
#define PARAMOSC_FORMAT_HPP

#include <charconv>
#include <string>

namespace paramosc {

/// Shortest text that parses back to exactly v. Prefers plain decimal
/// (900000, 0.25) and falls back to exponent form when that is shorter.
inline std::string format_shortest(double v) {
  char fixed[400];
  char general[64];
  const auto f = std::to_chars(fixed, fixed + sizeof(fixed), v, std::chars_format::fixed);
  const auto g = std::to_chars(general, general + sizeof(general), v);
  const std::size_t fixed_len = f.ptr - fixed;
  const std::size_t general_len = g.ptr - general;
  if (f.ec == std::errc{} && fixed_len <= general_len + 3) return std::string(fixed, fixed_len);
  return std::string(general, general_len);
}

}  // namespace paramosc

#endif  // PARAMOSC_FORMAT_HPP
