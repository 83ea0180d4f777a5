#include "serialize.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>

#include <fmt/format.h>

namespace fansq::cli {

Json RunManifest::to_json() const {
  Json j;
  j["tool"] = "fansq";
  j["version"] = version;
  j["subcommand"] = subcommand;
  j["timestamp"] = timestamp;
  j["parameters"] = parameters;
  j["series_control"] = {{"rel_tol", series.rel_tol},
                         {"consecutive_small", series.consecutive_small},
                         {"n_max", series.n_max},
                         {"laguerre_floor", series.laguerre_floor}};
  return j;
}

std::string manifest_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end != epoch && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              out += format_real(v);
            else if constexpr (std::is_same_v<T, long long>)
              out += std::to_string(v);
            else
              out += v;
          },
          row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json_document(const RunManifest& manifest, const Json& data) {
  Json doc;
  doc["manifest"] = manifest.to_json();
  doc["data"] = data;
  return doc.dump(2) + "\n";
}

Json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace fansq::cli
