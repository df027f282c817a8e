// Copyright 2026 The teamcorr Authors
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

#include "artifacts.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "teamcorr/serialization.h"
#include "teamcorr/types.h"

namespace teamcorr::cli {
namespace {

std::string CsvField(const Json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_number_integer() || v.is_number_unsigned()) {
    s = v.dump();
  } else if (v.is_number()) {
    s = FormatNumber(v.get<double>());
  } else if (v.is_boolean()) {
    s = v.get<bool>() ? "true" : "false";
  } else if (v.is_null()) {
    s = "";
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

Json Number(double value) { return std::stod(FormatNumber(value)); }

Format ParseFormat(const std::string& name) {
  if (name == "csv") return Format::kCsv;
  if (name == "jsonl" || name == "json-lines") return Format::kJsonLines;
  throw Error("unknown report format '" + name + "' (csv, jsonl)");
}

std::string RenderTable(const Table& table, Format format) {
  std::ostringstream out;
  if (format == Format::kCsv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << table.columns[c];
    }
    out << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << (c ? "," : "") << CsvField(row[c]);
      }
      out << "\n";
    }
    return out.str();
  }
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
    out << obj.dump() << "\n";
  }
  return out.str();
}

Json TableToJson(const Table& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) rows.push_back(Json(row));
  return Json{{"columns", table.columns}, {"rows", rows}};
}

Table TableFromJson(const std::string& name, const Json& j) {
  Table t;
  t.name = name;
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) {
    t.rows.emplace_back(row.begin(), row.end());
    if (t.rows.back().size() != t.columns.size()) {
      throw Error("table '" + name + "' has a ragged row");
    }
  }
  return t;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
  if (!f) throw Error("failed writing " + path.string());
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void WriteRun(const std::filesystem::path& dir, const RunSummary& run) {
  Json tables = Json::object();
  for (const auto& t : run.tables) tables[t.name] = TableToJson(t);
  Json doc{{"command", run.command}, {"summary", run.summary}, {"tables", tables}};
  WriteFile(dir / "summary.json", doc.dump(2) + "\n");
  for (const auto& t : run.tables) {
    WriteFile(dir / (t.name + ".csv"), RenderTable(t, Format::kCsv));
  }
}

std::vector<std::filesystem::path> EmitReport(const std::filesystem::path& dir,
                                              Format format) {
  const auto path = dir / "summary.json";
  if (!std::filesystem::exists(path)) {
    throw Error("no run summary at " + path.string());
  }
  Json doc;
  try {
    doc = Json::parse(ReadFile(path));
  } catch (const Json::exception& e) {
    throw Error("malformed run summary: " + std::string(e.what()));
  }
  if (!doc.contains("tables")) throw Error("run summary has no tables");
  std::vector<std::filesystem::path> written;
  const std::string ext = format == Format::kCsv ? ".csv" : ".jsonl";
  for (const auto& [name, tj] : doc.at("tables").items()) {
    const auto out = dir / (name + ext);
    WriteFile(out, RenderTable(TableFromJson(name, tj), format));
    written.push_back(out);
  }
  return written;
}

}  // namespace teamcorr::cli
