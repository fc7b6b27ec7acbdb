// Copyright 2026 The Authors.
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

#ifndef ASEL_RESULT_TABLE_HPP_
#define ASEL_RESULT_TABLE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace asel {

// One number of a sweep. mean_rate holds the mean of whatever `metric`
// names (bits/s/Hz for sum_rate, dB for loss_db, W for powers, bits/J for xi).
struct ResultRow {
  std::string scenario_id;
  int m = 0;
  std::string mode;          // selection mode
  std::string architecture;
  double mean_rate = 0.0;
  double stderr_rate = 0.0;
  long trials = 0;
  double loss_db = 0.0;
  double prelog = 1.0;
  std::string metric;
  std::string series;
  std::string sweep;
  double x = 0.0;            // value of the swept parameter
  int n = 0;
  int k = 0;
  double rho_db = 0.0;
  std::string precoder;
  std::string loss_mode;
  int eta_coh = 0;
  long failures = 0;
  std::string flags;         // ';'-separated, empty when clean

  bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<ResultRow> rows;

  void append(ResultRow row) { rows.push_back(std::move(row)); }
};

enum class OutputFormat { kCsv, kJson };

// Column order of the CSV and of "columns" in the JSON form.
const std::vector<std::string>& result_columns();

void write_csv(const ResultTable& table, std::ostream& out);
void write_json(const ResultTable& table, std::ostream& out);
// Writes to path, or stdout when path is "-". Throws io-error naming the path.
void emit(const ResultTable& table, OutputFormat format, const std::string& path);

// Inverse of write_csv.
ResultTable read_csv(std::istream& in);

// FNV-1a over text, as 16 hex digits.
std::string fingerprint(const std::string& text);

}  // namespace asel

#endif  // ASEL_RESULT_TABLE_HPP_
