// Copyright 2026 The Smock Authors
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

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace smock::cli {

using Cell = std::variant<double, std::int64_t, std::string, bool>;

// Shortest round-trip decimal; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);
std::string format_cell(const Cell& c);

// A CSV table with "# key=value" metadata lines above the header.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void meta(std::string key, std::string value) { meta_.emplace_back(std::move(key), std::move(value)); }
  void columns(std::vector<std::string> names) { columns_ = std::move(names); }
  // Throws std::logic_error when the row width differs from the header.
  void row(std::vector<Cell> cells);

  const std::string& command() const noexcept { return command_; }
  const std::vector<std::string>& column_names() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

  void write_csv(std::ostream& out) const;
  // One "<command>_<column>.dat" file per numeric column after the first,
  // each line "x y" with x from the first column.
  void write_plots(const std::filesystem::path& dir) const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace smock::cli
