#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fansq/fanstate.hpp"

namespace fansq::cli {

using Json = nlohmann::ordered_json;

enum class Format { Csv, Json };

/// Provenance attached to every output.
struct RunManifest {
  std::string subcommand;
  Json parameters = Json::object();
  SeriesControl series;
  std::string version;
  std::string timestamp;

  Json to_json() const;
};

/// UTC ISO-8601 time; SOURCE_DATE_EPOCH overrides the clock when set.
std::string manifest_timestamp();

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest form that is still 17 significant digits: "%.17g"; nan/inf spelled out.
std::string format_real(double x);

/// Header row, then one line per row.
std::string to_csv(const Table& table);

/// Single object {"manifest": ..., "data": ...}, pretty-printed, trailing newline.
std::string to_json_document(const RunManifest& manifest, const Json& data);

/// NaN/inf become null so documents stay valid JSON.
Json real(double x);

}  // namespace fansq::cli
