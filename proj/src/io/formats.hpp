#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "model/instance.hpp"
#include "pareto/archive.hpp"
#include "search/search.hpp"
#include "vrp/routing.hpp"

namespace irp::io {

using Json = nlohmann::ordered_json;

inline constexpr int kInstanceFormatVersion = 1;

// Canonical instance document. Parsing throws FormatError on malformed text,
// missing fields, or demand rows whose length differs from the horizon.
Instance parseInstance(std::string_view text);
Instance loadInstance(const std::filesystem::path& path);
std::string formatInstance(const Instance& inst);
void saveInstance(const Instance& inst, const std::filesystem::path& path);

vrp::RoutingProblem parseRoutingProblem(std::string_view text);
vrp::RoutingProblem loadRoutingProblem(const std::filesystem::path& path);
std::string formatRoutingProblem(const vrp::RoutingProblem& p);
Json routingSolutionJson(const vrp::RoutingSolution& s);

Json configJson(const search::SearchConfig& cfg);
// Missing keys keep their defaults. Throws FormatError on wrong types.
search::SearchConfig parseConfig(const Json& j);

Json statsJson(const search::SearchStats& stats);
search::SearchStats parseStats(const Json& j);

Json archiveJson(const pareto::Archive& archive);
pareto::Archive parseArchive(const Json& j);

// One directory per run: archive.csv, archive.json, stats.json, config.json
// and a copy of the instance.
struct RunBundle {
  Instance instance;
  search::SearchConfig config;
  search::SearchStats stats;
  pareto::Archive archive;
};

void writeBundle(const std::filesystem::path& dir, const Instance& inst,
                 const search::SearchConfig& cfg, const search::SearchStats& stats,
                 const pareto::Archive& archive);
RunBundle readBundle(const std::filesystem::path& dir);

// Stats line printed by the CLI: space separated key=value pairs.
std::string statsLine(const search::SearchStats& stats);

std::string readFile(const std::filesystem::path& path);
// Writes through a temporary file and rename, so readers never see a
// partially written file.
void writeFile(const std::filesystem::path& path, std::string_view content);

}  // namespace irp::io
