// Copyright 2026 The backflow Authors
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

#ifndef BACKFLOW_TOOLS_FORMAT_HPP
#define BACKFLOW_TOOLS_FORMAT_HPP

#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

// Shortest decimal string that round-trips to the same double. This keeps
// output byte-identical across runs and thread counts: formatting depends on
// the value alone.
inline std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), end);
}

inline std::string csv_line(const std::vector<double>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ',';
    line += format_double(cells[i]);
  }
  return line;
}

// Writes text verbatim (binary mode, so '\n' stays a single byte everywhere).
inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing " + path);
}

struct Csv {
  std::string header;
  std::vector<std::string> rows;

  std::string render() const {
    std::string text = header;
    text += '\n';
    for (const auto& row : rows) {
      text += row;
      text += '\n';
    }
    return text;
  }
};

}  // namespace cli

#endif  // BACKFLOW_TOOLS_FORMAT_HPP
