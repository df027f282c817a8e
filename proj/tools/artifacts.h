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

// Run-directory artifacts: manifest, summary with named tables, and the
// CSV / JSON-lines renderings of those tables.

#ifndef TEAMCORR_TOOLS_ARTIFACTS_H_
#define TEAMCORR_TOOLS_ARTIFACTS_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace teamcorr::cli {

using Json = nlohmann::ordered_json;

// Numbers are rounded to the printed precision before they are stored so
// that every rendering of a value agrees.
Json Number(double value);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

enum class Format { kCsv, kJsonLines };

Format ParseFormat(const std::string& name);

std::string RenderTable(const Table& table, Format format);
Json TableToJson(const Table& table);
Table TableFromJson(const std::string& name, const Json& j);

// Writes `text` to `path`, creating parent directories.
void WriteFile(const std::filesystem::path& path, const std::string& text);
std::string ReadFile(const std::filesystem::path& path);

// Summary document of one run.
struct RunSummary {
  std::string command;
  Json summary = Json::object();
  std::vector<Table> tables;
};

// Writes summary.json and renders every table as CSV next to it.
void WriteRun(const std::filesystem::path& dir, const RunSummary& run);

// Re-renders the tables of a completed run in the requested format.
// Returns the written paths.
std::vector<std::filesystem::path> EmitReport(const std::filesystem::path& dir,
                                              Format format);

}  // namespace teamcorr::cli

#endif  // TEAMCORR_TOOLS_ARTIFACTS_H_
