#pragma once

#include "distlap/search.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace distlap {

inline constexpr const char* kReportSchema = "distlap.search/1";

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

// One line per instance: instance,tree,status,eigenvalue,cluster_size,outcome
void write_csv_summary(std::ostream& out, const SearchReport& rep);

// Complete record. "digest" is the SHA-256 of the dump of every other field
// except "run" (timing, worker count, kernel choice), so it is a function of
// the configuration alone.
nlohmann::json to_json(const SearchReport& rep);

nlohmann::json to_json(const CaseClassification& c);

// Recomputes the digest of a parsed report.
std::string report_digest(const nlohmann::json& report);

}  // namespace distlap
