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

#include "asel/result_table.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "asel/error.hpp"

namespace asel {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Text fields never need quoting except when they carry commas or quotes.
std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

std::vector<std::string> cells_of(const ResultRow& r) {
  return {r.scenario_id, std::to_string(r.m), r.mode, r.architecture, fmt(r.mean_rate),
          fmt(r.stderr_rate), std::to_string(r.trials), fmt(r.loss_db), fmt(r.prelog), r.metric,
          r.series, r.sweep, fmt(r.x), std::to_string(r.n), std::to_string(r.k), fmt(r.rho_db),
          r.precoder, r.loss_mode, std::to_string(r.eta_coh), std::to_string(r.failures), r.flags};
}

}  // namespace

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols = {
      "scenario_id", "M",      "mode",  "architecture", "mean_rate", "stderr", "trials",
      "loss_db",     "prelog", "metric", "series",      "sweep",     "x",      "N",
      "K",           "rho_db", "precoder", "loss_mode", "eta_coh",   "failures", "flags"};
  return cols;
}

void write_csv(const ResultTable& table, std::ostream& out) {
  out << "# config_hash=" << table.config_hash << " seed=" << table.seed << "\n";
  const auto& cols = result_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const ResultRow& r : table.rows) {
    const auto cells = cells_of(r);
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << quote(cells[i]);
    out << "\n";
  }
}

void write_json(const ResultTable& table, std::ostream& out) {
  // Numbers go out as the same 9-digit strings the CSV uses, parsed back so
  // that both formats carry identical values.
  nlohmann::ordered_json doc;
  doc["config_hash"] = table.config_hash;
  doc["seed"] = table.seed;
  doc["columns"] = result_columns();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ResultRow& r : table.rows) {
    nlohmann::ordered_json o;
    o["scenario_id"] = r.scenario_id;
    o["M"] = r.m;
    o["mode"] = r.mode;
    o["architecture"] = r.architecture;
    o["mean_rate"] = std::stod(fmt(r.mean_rate));
    o["stderr"] = std::stod(fmt(r.stderr_rate));
    o["trials"] = r.trials;
    o["loss_db"] = std::stod(fmt(r.loss_db));
    o["prelog"] = std::stod(fmt(r.prelog));
    o["metric"] = r.metric;
    o["series"] = r.series;
    o["sweep"] = r.sweep;
    o["x"] = std::stod(fmt(r.x));
    o["N"] = r.n;
    o["K"] = r.k;
    o["rho_db"] = std::stod(fmt(r.rho_db));
    o["precoder"] = r.precoder;
    o["loss_mode"] = r.loss_mode;
    o["eta_coh"] = r.eta_coh;
    o["failures"] = r.failures;
    o["flags"] = r.flags;
    rows.push_back(std::move(o));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(1) << "\n";
}

void emit(const ResultTable& table, OutputFormat format, const std::string& path) {
  auto write = [&](std::ostream& os) {
    if (format == OutputFormat::kCsv) {
      write_csv(table, os);
    } else {
      write_json(table, os);
    }
  };
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path + " for writing");
  write(out);
  out.close();
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

ResultTable read_csv(std::istream& in) {
  ResultTable table;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# config_hash=", 0) != 0) {
    throw Error(ErrorCode::kIoError, "missing config_hash header line");
  }
  {
    std::istringstream hdr(line.substr(2));
    std::string tok;
    while (hdr >> tok) {
      if (tok.rfind("config_hash=", 0) == 0) table.config_hash = tok.substr(12);
      if (tok.rfind("seed=", 0) == 0) table.seed = std::stoull(tok.substr(5));
    }
  }
  if (!std::getline(in, line) || split_csv_line(line) != result_columns()) {
    throw Error(ErrorCode::kIoError, "unexpected CSV column header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split_csv_line(line);
    if (c.size() != result_columns().size()) throw Error(ErrorCode::kIoError, "ragged CSV row");
    ResultRow r;
    r.scenario_id = c[0];
    r.m = std::stoi(c[1]);
    r.mode = c[2];
    r.architecture = c[3];
    r.mean_rate = std::stod(c[4]);
    r.stderr_rate = std::stod(c[5]);
    r.trials = std::stol(c[6]);
    r.loss_db = std::stod(c[7]);
    r.prelog = std::stod(c[8]);
    r.metric = c[9];
    r.series = c[10];
    r.sweep = c[11];
    r.x = std::stod(c[12]);
    r.n = std::stoi(c[13]);
    r.k = std::stoi(c[14]);
    r.rho_db = std::stod(c[15]);
    r.precoder = c[16];
    r.loss_mode = c[17];
    r.eta_coh = std::stoi(c[18]);
    r.failures = std::stol(c[19]);
    r.flags = c[20];
    table.rows.push_back(std::move(r));
  }
  return table;
}

std::string fingerprint(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace asel
