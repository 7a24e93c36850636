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

#include "smock/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace smock::cli {
namespace {

bool is_numeric(const Cell& c) { return std::holds_alternative<double>(c) || std::holds_alternative<std::int64_t>(c); }

double as_double(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return static_cast<double>(std::get<std::int64_t>(c));
}

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return quoted(std::get<std::string>(c));
}

void Report::row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size()) {
    throw std::logic_error(command_ + ": row has " + std::to_string(cells.size()) + " cells for " +
                           std::to_string(columns_.size()) + " columns");
  }
  rows_.push_back(std::move(cells));
}

void Report::write_csv(std::ostream& out) const {
  for (const auto& [k, v] : meta_) out << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_cell(r[i]);
    out << '\n';
  }
}

void Report::write_plots(const std::filesystem::path& dir) const {
  if (columns_.size() < 2 || rows_.empty()) return;
  std::filesystem::create_directories(dir);
  for (std::size_t c = 1; c < columns_.size(); ++c) {
    bool numeric = true;
    for (const auto& r : rows_) numeric = numeric && is_numeric(r[c]) && is_numeric(r[0]);
    if (!numeric) continue;
    std::ofstream f(dir / (command_ + "_" + columns_[c] + ".dat"));
    if (!f) throw std::runtime_error("cannot write plot file in " + dir.string());
    for (const auto& r : rows_) f << format_double(as_double(r[0])) << ' ' << format_double(as_double(r[c])) << '\n';
  }
}

}  // namespace smock::cli
