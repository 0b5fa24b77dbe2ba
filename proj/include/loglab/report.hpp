// Copyright 2026 The loglab Authors
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

// Tabular reports. CSV: comma separated, header row, LF endings, doubles at
// 17 significant digits. JSON follows schema/report.schema.json.

#ifndef LOGLAB_REPORT_HPP
#define LOGLAB_REPORT_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "loglab/error.hpp"

namespace loglab {

using cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<cell>> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();

  void add_row(std::vector<cell> row) {
    if (row.size() != columns.size()) throw domain_error("Table::add_row: row width does not match header");
    rows.push_back(std::move(row));
  }
};

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_cell(const cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json to_json(const Table& t) {
  nlohmann::ordered_json j;
  j["format"] = "loglab-report/1";
  j["command"] = t.command;
  j["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      std::visit(
          [&r](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              if (std::isfinite(v)) {
                r.push_back(v);
              } else {
                r.push_back(nullptr);
              }
            } else {
              r.push_back(v);
            }
          },
          c);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["summary"] = t.summary;
  return j;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw io_error("write failed for " + path.string());
}

using named_series = std::vector<std::pair<std::string, std::vector<double>>>;

// Wide CSV, one column per series.
inline void emit_plotdata(const std::filesystem::path& path, const named_series& series) {
  if (series.empty()) throw domain_error("emit_plotdata: no series");
  const std::size_t len = series.front().second.size();
  std::string text;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].second.size() != len) throw domain_error("emit_plotdata: series lengths differ");
    if (i) text += ',';
    text += series[i].first;
  }
  text += '\n';
  for (std::size_t r = 0; r < len; ++r) {
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (i) text += ',';
      text += format_double(series[i].second[r]);
    }
    text += '\n';
  }
  write_text(path, text);
}

}  // namespace loglab

#endif  // LOGLAB_REPORT_HPP
